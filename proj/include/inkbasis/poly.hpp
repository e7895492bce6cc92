#pragma once

// Dense polynomials in the monomial, Legendre and Chebyshev (first kind) bases.
// Everything here is exact-by-formula: no quadrature, no sampling.

#include <cassert>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "inkbasis/errors.hpp"

namespace inkbasis {

enum class ClassicalBasis { Monomial, Legendre, Chebyshev };

inline std::string_view to_string(ClassicalBasis b) {
    switch (b) {
        case ClassicalBasis::Monomial: return "monomial";
        case ClassicalBasis::Legendre: return "legendre";
        case ClassicalBasis::Chebyshev: return "chebyshev";
    }
    return "?";
}

/// Largest degree accepted by `convert`. Monomial round trips lose digits
/// quickly beyond this.
inline constexpr int kMaxConvertDegree = 64;

/// A polynomial as coefficients of a classical basis; coeffs[i] multiplies the
/// basis element of degree i. The zero polynomial has no coefficients.
class DensePoly {
public:
    DensePoly() = default;
    explicit DensePoly(ClassicalBasis basis, std::vector<double> coeffs = {})
        : basis_(basis), coeffs_(std::move(coeffs)) {}

    static DensePoly zero(ClassicalBasis basis) { return DensePoly(basis); }

    /// The basis element of degree n (T_n, P_n or x^n).
    static DensePoly unit(ClassicalBasis basis, std::size_t n) {
        std::vector<double> c(n + 1, 0.0);
        c[n] = 1.0;
        return DensePoly(basis, std::move(c));
    }

    ClassicalBasis basis() const noexcept { return basis_; }
    const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    std::size_t size() const noexcept { return coeffs_.size(); }

    /// Index of the last stored coefficient; -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

    bool is_zero() const noexcept {
        for (double c : coeffs_)
            if (c != 0.0) return false;
        return true;
    }

    double operator[](std::size_t i) const noexcept {
        return i < coeffs_.size() ? coeffs_[i] : 0.0;
    }

    /// Canonical form: trailing zero coefficients removed.
    DensePoly trimmed() const {
        auto c = coeffs_;
        while (!c.empty() && c.back() == 0.0) c.pop_back();
        return DensePoly(basis_, std::move(c));
    }

private:
    ClassicalBasis basis_ = ClassicalBasis::Monomial;
    std::vector<double> coeffs_;
};

namespace detail {

inline void require_basis(const DensePoly& p, ClassicalBasis b, const char* what) {
    if (p.basis() != b)
        throw BasisMismatch(std::string(what) + ": expected " + std::string(to_string(b)) +
                            " basis, got " + std::string(to_string(p.basis())));
}

// Multiplies q (given in basis b) by x, in place.
inline void times_x(std::vector<double>& q, ClassicalBasis b) {
    const std::size_t n = q.size();
    std::vector<double> r(n + 1, 0.0);
    switch (b) {
        case ClassicalBasis::Monomial:
            for (std::size_t i = 0; i < n; ++i) r[i + 1] = q[i];
            break;
        case ClassicalBasis::Chebyshev:
            // x T_0 = T_1,  x T_k = (T_{k+1} + T_{k-1}) / 2
            if (n > 0) r[1] += q[0];
            for (std::size_t k = 1; k < n; ++k) {
                r[k + 1] += 0.5 * q[k];
                r[k - 1] += 0.5 * q[k];
            }
            break;
        case ClassicalBasis::Legendre:
            // (2k+1) x P_k = (k+1) P_{k+1} + k P_{k-1}
            for (std::size_t k = 0; k < n; ++k) {
                const double den = 2.0 * static_cast<double>(k) + 1.0;
                r[k + 1] += q[k] * static_cast<double>(k + 1) / den;
                if (k > 0) r[k - 1] += q[k] * static_cast<double>(k) / den;
            }
            break;
    }
    q = std::move(r);
}

// Monomial coefficients of the classical basis elements B_0..B_n.
inline std::vector<std::vector<double>> monomial_table(ClassicalBasis b, std::size_t n) {
    std::vector<std::vector<double>> t(n + 1);
    for (std::size_t k = 0; k <= n; ++k) t[k].assign(k + 1, 0.0);
    t[0][0] = 1.0;
    if (n == 0) return t;
    t[1][1] = 1.0;
    for (std::size_t k = 1; k < n; ++k) {
        auto& next = t[k + 1];
        const auto& cur = t[k];
        const auto& prev = t[k - 1];
        if (b == ClassicalBasis::Chebyshev) {
            // T_{k+1} = 2x T_k - T_{k-1}
            for (std::size_t j = 0; j <= k; ++j) next[j + 1] += 2.0 * cur[j];
            for (std::size_t j = 0; j < k; ++j) next[j] -= prev[j];
        } else if (b == ClassicalBasis::Legendre) {
            // (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}
            const double kd = static_cast<double>(k);
            for (std::size_t j = 0; j <= k; ++j) next[j + 1] += (2.0 * kd + 1.0) / (kd + 1.0) * cur[j];
            for (std::size_t j = 0; j < k; ++j) next[j] -= kd / (kd + 1.0) * prev[j];
        } else {
            next[k + 1] = 1.0;
        }
    }
    return t;
}

}  // namespace detail

/// Sum of c_i T_i(x) by the backward Clenshaw recurrence.
inline double eval_clenshaw(const DensePoly& p, double x) {
    detail::require_basis(p, ClassicalBasis::Chebyshev, "eval_clenshaw");
    assert(x >= -1.0 && x <= 1.0);
    const auto& c = p.coeffs();
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t k = c.size(); k-- > 1;) {
        const double b0 = 2.0 * x * b1 - b2 + c[k];
        b2 = b1;
        b1 = b0;
    }
    return c.empty() ? 0.0 : c[0] + x * b1 - b2;
}

/// Sum of c_i P_i(x) using the Bonnet recurrence.
inline double eval_legendre(const DensePoly& p, double x) {
    detail::require_basis(p, ClassicalBasis::Legendre, "eval_legendre");
    const auto& c = p.coeffs();
    if (c.empty()) return 0.0;
    double prev = 1.0, cur = x;
    double sum = c[0];
    if (c.size() > 1) sum += c[1] * x;
    for (std::size_t k = 1; k + 1 < c.size(); ++k) {
        const double kd = static_cast<double>(k);
        const double next = ((2.0 * kd + 1.0) * x * cur - kd * prev) / (kd + 1.0);
        prev = cur;
        cur = next;
        sum += c[k + 1] * cur;
    }
    return sum;
}

inline double eval_monomial(const DensePoly& p, double x) {
    detail::require_basis(p, ClassicalBasis::Monomial, "eval_monomial");
    double acc = 0.0;
    const auto& c = p.coeffs();
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
    return acc;
}

inline double evaluate(const DensePoly& p, double x) {
    switch (p.basis()) {
        case ClassicalBasis::Monomial: return eval_monomial(p, x);
        case ClassicalBasis::Legendre: return eval_legendre(p, x);
        case ClassicalBasis::Chebyshev: return eval_clenshaw(p, x);
    }
    return 0.0;
}

/// Exact derivative, expressed in the same basis as `p`.
inline DensePoly derivative(const DensePoly& p) {
    const auto& c = p.coeffs();
    const std::size_t n = c.size();
    if (n <= 1) return DensePoly::zero(p.basis());
    std::vector<double> d(n - 1, 0.0);
    switch (p.basis()) {
        case ClassicalBasis::Monomial:
            for (std::size_t k = 1; k < n; ++k) d[k - 1] = static_cast<double>(k) * c[k];
            break;
        case ClassicalBasis::Chebyshev: {
            // d_{k-1} = d_{k+1} + 2k c_k, then d_0 is halved.
            double dk1 = 0.0, dk2 = 0.0;  // d_{k}, d_{k+1}
            for (std::size_t k = n - 1; k >= 1; --k) {
                const double v = dk2 + 2.0 * static_cast<double>(k) * c[k];
                d[k - 1] = v;
                dk2 = dk1;
                dk1 = v;
            }
            d[0] *= 0.5;
            break;
        }
        case ClassicalBasis::Legendre: {
            // d_k = (2k+1) * sum_{j > k, j - k odd} c_j
            double e1 = 0.0, e2 = 0.0;  // partial sums for k+1, k+2
            for (std::size_t k = n - 1; k-- > 0;) {
                const double e = c[k + 1] + e2;
                d[k] = (2.0 * static_cast<double>(k) + 1.0) * e;
                e2 = e1;
                e1 = e;
            }
            break;
        }
    }
    return DensePoly(p.basis(), std::move(d));
}

/// Re-expresses `p` in `target`. Throws DegreeTooLarge beyond kMaxConvertDegree.
///
/// Runs the source basis' Clenshaw recurrence with polynomial-valued
/// accumulators held in the target basis, so only multiplication by x is ever
/// needed there (Horner's scheme when the source is monomial).
inline DensePoly convert(const DensePoly& p, ClassicalBasis target) {
    if (p.degree() > kMaxConvertDegree)
        throw DegreeTooLarge("convert: degree " + std::to_string(p.degree()) + " exceeds " +
                             std::to_string(kMaxConvertDegree));
    if (p.basis() == target) return p;
    const auto& c = p.coeffs();
    const std::size_t n = c.size();
    if (n == 0) return DensePoly::zero(target);

    // B_{k+1} = a_k x B_k + g_k B_{k-1}
    auto a = [&](std::size_t k) {
        switch (p.basis()) {
            case ClassicalBasis::Chebyshev: return 2.0;
            case ClassicalBasis::Legendre: return (2.0 * static_cast<double>(k) + 1.0) / static_cast<double>(k + 1);
            default: return 1.0;
        }
    };
    auto g = [&](std::size_t k) {
        switch (p.basis()) {
            case ClassicalBasis::Chebyshev: return -1.0;
            case ClassicalBasis::Legendre: return -static_cast<double>(k) / static_cast<double>(k + 1);
            default: return 0.0;
        }
    };

    std::vector<double> b1(n, 0.0), b2(n, 0.0);  // b_{k+1}, b_{k+2}
    for (std::size_t k = n; k-- > 0;) {
        std::vector<double> xb(b1.begin(), b1.end() - 1);
        detail::times_x(xb, target);
        std::vector<double> b(n, 0.0);
        b[0] = c[k];
        const double ak = a(k), gk = g(k + 1);
        for (std::size_t j = 0; j < n; ++j) b[j] += ak * xb[j] + gk * b2[j];
        b2 = std::move(b1);
        b1 = std::move(b);
    }
    if (p.basis() == ClassicalBasis::Chebyshev) {
        // T_1 = x T_0, not 2x T_0: remove the extra x b_1.
        std::vector<double> xb(b2.begin(), b2.end() - 1);
        detail::times_x(xb, target);
        for (std::size_t j = 0; j < n; ++j) b1[j] -= xb[j];
    }
    return DensePoly(target, std::move(b1));
}

}  // namespace inkbasis
