#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "inkbasis/errors.hpp"
#include "inkbasis/moments.hpp"
#include "inkbasis/poly.hpp"

namespace inkbasis {

/// Continuous piecewise polynomial on [breakpoints.front(), breakpoints.back()].
/// Each segment is a monomial-basis polynomial of degree <= 3 in the global
/// parameter (not shifted to the segment start).
class PiecewisePoly {
public:
    static constexpr int kMaxSegmentDegree = 3;

    PiecewisePoly(std::vector<double> breakpoints, std::vector<DensePoly> segments)
        : breaks_(std::move(breakpoints)), segments_(std::move(segments)) {
        if (breaks_.size() < 2 || segments_.size() + 1 != breaks_.size())
            throw LengthMismatch("PiecewisePoly: need N+1 breakpoints for N segments");
        for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
            if (!(breaks_[i] < breaks_[i + 1]))
                throw DomainError("PiecewisePoly: breakpoints must be strictly increasing");
        for (auto& s : segments_) {
            detail::require_basis(s, ClassicalBasis::Monomial, "PiecewisePoly");
            if (s.degree() > kMaxSegmentDegree)
                throw DegreeTooLarge("PiecewisePoly: segment degree above 3");
        }
        for (std::size_t i = 1; i + 1 < breaks_.size(); ++i) {
            const double l = eval_monomial(segments_[i - 1], breaks_[i]);
            const double r = eval_monomial(segments_[i], breaks_[i]);
            if (std::abs(l - r) > 1e-12 * std::max({1.0, std::abs(l), std::abs(r)}))
                throw DomainError("PiecewisePoly: discontinuity at breakpoint " + std::to_string(i));
        }
    }

    /// Single segment spanning [a, b].
    static PiecewisePoly from_poly(const DensePoly& p, double a = -1.0, double b = 1.0) {
        return PiecewisePoly({a, b}, {convert(p, ClassicalBasis::Monomial)});
    }

    const std::vector<double>& breakpoints() const noexcept { return breaks_; }
    const std::vector<DensePoly>& segments() const noexcept { return segments_; }
    std::size_t segment_count() const noexcept { return segments_.size(); }

    /// Index of the segment containing s (clamped to the end segments).
    std::size_t locate(double s) const noexcept {
        auto it = std::upper_bound(breaks_.begin() + 1, breaks_.end() - 1, s);
        return static_cast<std::size_t>(it - (breaks_.begin() + 1));
    }

    double operator()(double s) const { return eval_monomial(segments_[locate(s)], s); }

    double derivative_at(double s) const { return eval_monomial(derivative(segments_[locate(s)]), s); }

private:
    std::vector<double> breaks_;
    std::vector<DensePoly> segments_;
};

namespace detail {

inline void check_domain(const PiecewisePoly& f) {
    if (f.breakpoints().front() < -1.0 || f.breakpoints().back() > 1.0)
        throw DomainError("piecewise function extends outside [-1, 1]");
}

inline void check_order(int deriv_order, const char* what) {
    if (deriv_order < 0 || deriv_order > 1)
        throw Unsupported(std::string(what) + ": derivative order must be 0 or 1");
}

// A_k = integral of f^(r) T_k w over the domain of f, k = 0..kmax. Each segment
// is rewritten in the Chebyshev basis and T_m T_k = (T_{m+k} + T_{|m-k|}) / 2
// reduces the product to modified moments.
inline std::vector<double> chebyshev_projections(const PiecewisePoly& f, int kmax, Weight w, int deriv_order) {
    std::vector<double> A(static_cast<std::size_t>(kmax) + 1, 0.0);
    const auto& br = f.breakpoints();
    for (std::size_t s = 0; s < f.segment_count(); ++s) {
        auto fc = convert(f.segments()[s], ClassicalBasis::Chebyshev);
        if (deriv_order == 1) fc = derivative(fc);
        if (fc.size() == 0) continue;
        const auto M = chebyshev_moments(kmax + fc.degree(), br[s], br[s + 1], w);
        for (std::size_t k = 0; k < A.size(); ++k) {
            double acc = 0.0;
            for (std::size_t m = 0; m < fc.size(); ++m) {
                const std::size_t lo = m > k ? m - k : k - m;
                acc += fc[m] * 0.5 * (M[m + k] + M[lo]);
            }
            A[k] += acc;
        }
    }
    return A;
}

// g^(r) as a Chebyshev series.
inline DensePoly chebyshev_derivative(const DensePoly& g, int deriv_order) {
    auto gc = convert(g, ClassicalBasis::Chebyshev);
    return deriv_order == 1 ? derivative(gc) : gc;
}

}  // namespace detail

/// Sum over segments of the integral of f^(r) g^(r) w, r = deriv_order, with
/// every segment integral reduced to closed-form Chebyshev moments.
inline double inner_piecewise(const PiecewisePoly& f, const DensePoly& g, Weight w, int deriv_order) {
    detail::check_order(deriv_order, "inner_piecewise");
    detail::check_domain(f);
    const auto gc = detail::chebyshev_derivative(g, deriv_order);
    if (gc.size() == 0) return 0.0;
    const auto A = detail::chebyshev_projections(f, gc.degree(), w, deriv_order);
    double total = 0.0;
    for (std::size_t k = 0; k < gc.size(); ++k) total += gc[k] * A[k];
    return total;
}

/// The vector of inner_piecewise(f, B_j, w, deriv_order) for the classical
/// basis elements B_0..B_n, sharing the moment computation across all j.
inline std::vector<double> classical_moments(const PiecewisePoly& f, ClassicalBasis basis, int n,
                                             Weight w, int deriv_order) {
    detail::check_order(deriv_order, "classical_moments");
    detail::check_domain(f);
    std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
    const auto A = detail::chebyshev_projections(f, n, w, deriv_order);
    for (std::size_t j = 0; j < out.size(); ++j) {
        const auto gc = detail::chebyshev_derivative(DensePoly::unit(basis, j), deriv_order);
        double acc = 0.0;
        for (std::size_t k = 0; k < gc.size(); ++k) acc += gc[k] * A[k];
        out[j] = acc;
    }
    return out;
}

}  // namespace inkbasis
