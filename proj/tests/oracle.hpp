#pragma once

// Test-only reference computations. Nothing here calls into the library's
// moment formulas or basis conversions: polynomials are evaluated from their
// trigonometric / recurrence definitions and integrals come from adaptive
// Gauss-Kronrod quadrature (with x = cos(theta) for the Chebyshev weight).

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "inkbasis/inkbasis.hpp"

namespace oracle {

using inkbasis::ClassicalBasis;
using inkbasis::DensePoly;
using inkbasis::Weight;

struct ValueDeriv {
    double value = 0.0;
    double deriv = 0.0;
};

/// sum c_n T_n(x) via cos(n acos x); derivative via T_n' = n U_{n-1}.
inline ValueDeriv chebyshev(const std::vector<double>& c, double x) {
    const double th = std::acos(std::clamp(x, -1.0, 1.0));
    ValueDeriv r;
    double u_prev = 0.0, u = 1.0;  // U_{n-2}, U_{n-1}
    for (std::size_t n = 0; n < c.size(); ++n) {
        r.value += c[n] * std::cos(static_cast<double>(n) * th);
        if (n >= 1) {
            r.deriv += c[n] * static_cast<double>(n) * u;
            const double next = 2.0 * x * u - u_prev;
            u_prev = u;
            u = next;
        }
    }
    return r;
}

/// sum c_n P_n(x) with P_n' = n P_{n-1} + x P_{n-1}'.
inline ValueDeriv legendre(const std::vector<double>& c, double x) {
    ValueDeriv r;
    double p_prev = 0.0, p = 1.0, dp_prev = 0.0, dp = 0.0;
    for (std::size_t n = 0; n < c.size(); ++n) {
        r.value += c[n] * p;
        r.deriv += c[n] * dp;
        const double nd = static_cast<double>(n);
        const double p_next = ((2.0 * nd + 1.0) * x * p - nd * p_prev) / (nd + 1.0);
        const double dp_next = (nd + 1.0) * p + x * dp;
        p_prev = p;
        p = p_next;
        dp_prev = dp;
        dp = dp_next;
    }
    (void)dp_prev;
    return r;
}

inline ValueDeriv monomial(const std::vector<double>& c, double x) {
    ValueDeriv r;
    for (std::size_t n = 0; n < c.size(); ++n) {
        r.value += c[n] * std::pow(x, static_cast<double>(n));
        if (n >= 1) r.deriv += c[n] * static_cast<double>(n) * std::pow(x, static_cast<double>(n) - 1.0);
    }
    return r;
}

inline ValueDeriv eval(const DensePoly& p, double x) {
    switch (p.basis()) {
        case ClassicalBasis::Chebyshev: return chebyshev(p.coeffs(), x);
        case ClassicalBasis::Legendre: return legendre(p.coeffs(), x);
        case ClassicalBasis::Monomial: return monomial(p.coeffs(), x);
    }
    return {};
}

/// Integral of g(x) w(x) over [a, b].
inline double integrate(const std::function<double(double)>& g, double a, double b, Weight w) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    if (w == Weight::Unit) return GK::integrate(g, a, b, 6, 1e-12);
    auto h = [&](double th) { return g(std::cos(th)); };
    return GK::integrate(h, std::acos(b), std::acos(a), 6, 1e-12);
}

/// <f, g> = integral (f g + lambda f' g') w over [-1, 1].
inline double inner(const DensePoly& f, const DensePoly& g, Weight w, double lambda) {
    return integrate(
        [&](double x) {
            const auto a = eval(f, x), b = eval(g, x);
            return a.value * b.value + lambda * a.deriv * b.deriv;
        },
        -1.0, 1.0, w);
}

/// Integral of f^(r) g^(r) w for a piecewise f, segment by segment.
inline double inner_piecewise(const inkbasis::PiecewisePoly& f, const DensePoly& g, Weight w, int order) {
    double total = 0.0;
    const auto& br = f.breakpoints();
    for (std::size_t s = 0; s < f.segment_count(); ++s) {
        const auto& seg = f.segments()[s].coeffs();
        total += integrate(
            [&](double x) {
                const auto a = monomial(seg, x), b = eval(g, x);
                return order == 0 ? a.value * b.value : a.deriv * b.deriv;
            },
            br[s], br[s + 1], w);
    }
    return total;
}

inline double inner_piecewise_spec(const inkbasis::PiecewisePoly& f, const DensePoly& g,
                                   const inkbasis::InnerProductSpec& spec) {
    double v = oracle::inner_piecewise(f, g, spec.weight, 0);
    if (spec.is_sobolev()) v += spec.lambda * oracle::inner_piecewise(f, g, spec.weight, 1);
    return v;
}

/// Squared norm of a piecewise function (both f and f' piecewise).
inline double sq_norm_piecewise(const inkbasis::PiecewisePoly& f, const inkbasis::InnerProductSpec& spec) {
    double total = 0.0;
    const auto& br = f.breakpoints();
    for (std::size_t s = 0; s < f.segment_count(); ++s) {
        const auto& seg = f.segments()[s].coeffs();
        total += integrate(
            [&](double x) {
                const auto a = monomial(seg, x);
                return a.value * a.value + (spec.is_sobolev() ? spec.lambda * a.deriv * a.deriv : 0.0);
            },
            br[s], br[s + 1], spec.weight);
    }
    return total;
}

/// Classical Gram-Schmidt on the monomials 1, x, ..., x^d with quadrature inner
/// products. Returns monic monomial-coefficient rows.
inline std::vector<std::vector<double>> gram_schmidt_monomials(int d, Weight w, double lambda) {
    std::vector<std::vector<double>> rows;
    std::vector<double> norms;
    auto ip = [&](const std::vector<double>& a, const std::vector<double>& b) {
        return integrate(
            [&](double x) {
                const auto u = monomial(a, x), v = monomial(b, x);
                return u.value * v.value + lambda * u.deriv * v.deriv;
            },
            -1.0, 1.0, w);
    };
    for (int i = 0; i <= d; ++i) {
        std::vector<double> v(static_cast<std::size_t>(i) + 1, 0.0);
        v.back() = 1.0;
        const auto seed = v;
        for (std::size_t j = 0; j < rows.size(); ++j) {
            const double c = ip(seed, rows[j]) / norms[j];
            for (std::size_t k = 0; k < rows[j].size(); ++k) v[k] -= c * rows[j][k];
        }
        norms.push_back(ip(v, v));
        rows.push_back(v);
    }
    return rows;
}

/// Point-correspondence distance: min over non-decreasing phi: [0..m] -> [0..n]
/// with phi(0) = 0 and phi(m) = n of sum |P_i - Q_phi(i)|^2, m >= n.
inline double point_matching_distance(std::vector<inkbasis::Point> p, std::vector<inkbasis::Point> q) {
    if (p.size() < q.size()) std::swap(p, q);
    const std::size_t m = p.size(), n = q.size();
    auto cost = [&](std::size_t i, std::size_t j) {
        const double dx = p[i].x - q[j].x, dy = p[i].y - q[j].y;
        return dx * dx + dy * dy;
    };
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> prev(n, inf), cur(n, inf);
    prev[0] = cost(0, 0);
    for (std::size_t i = 1; i < m; ++i) {
        double best = inf;  // min over j' <= j of prev[j']
        for (std::size_t j = 0; j < n; ++j) {
            best = std::min(best, prev[j]);
            cur[j] = best + cost(i, j);
        }
        std::swap(prev, cur);
    }
    return prev[n - 1];
}

inline std::vector<double> ranks(const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
        i = j + 1;
    }
    return r;
}

inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
    const auto ra = ranks(a), rb = ranks(b);
    const double n = static_cast<double>(a.size());
    const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
    const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        sab += (ra[i] - ma) * (rb[i] - mb);
        saa += (ra[i] - ma) * (ra[i] - ma);
        sbb += (rb[i] - mb) * (rb[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

// Random fixtures.

inline std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

/// Continuous piecewise-linear function on [-1, 1] with `pieces` random pieces.
inline inkbasis::PiecewisePoly random_linear_spline(std::mt19937_64& rng, std::size_t pieces) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> t{-1.0};
    auto cuts = random_vector(rng, pieces - 1);
    std::sort(cuts.begin(), cuts.end());
    t.insert(t.end(), cuts.begin(), cuts.end());
    t.push_back(1.0);
    std::vector<DensePoly> segs;
    double prev = u(rng);
    for (std::size_t k = 0; k + 1 < t.size(); ++k) {
        const double next = u(rng);
        const double m = (next - prev) / (t[k + 1] - t[k]);
        segs.emplace_back(ClassicalBasis::Monomial, std::vector<double>{prev - m * t[k], m});
        prev = next;
    }
    // Re-pin left values so the constructor's continuity check sees exact matches.
    for (std::size_t k = 1; k < segs.size(); ++k) {
        auto c = segs[k].coeffs();
        c[0] += inkbasis::eval_monomial(segs[k - 1], t[k]) - inkbasis::eval_monomial(segs[k], t[k]);
        segs[k] = DensePoly(ClassicalBasis::Monomial, c);
    }
    return inkbasis::PiecewisePoly(t, segs);
}

inline inkbasis::InkTrace random_trace(std::mt19937_64& rng, std::size_t n, double scale = 100.0) {
    std::uniform_real_distribution<double> u(0.0, scale);
    std::vector<inkbasis::Point> pts(n);
    for (auto& p : pts) p = {u(rng), u(rng)};
    return inkbasis::InkTrace(pts);
}

}  // namespace oracle
