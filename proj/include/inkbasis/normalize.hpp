#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "inkbasis/errors.hpp"
#include "inkbasis/piecewise.hpp"
#include "inkbasis/poly.hpp"
#include "inkbasis/trace.hpp"

namespace inkbasis {

enum class SplineOrder { Linear, Cubic };

inline SplineOrder parse_spline_order(std::string_view s) {
    if (s == "linear") return SplineOrder::Linear;
    if (s == "cubic") return SplineOrder::Cubic;
    throw Error("unknown spline order '" + std::string(s) + "'");
}

/// A trace reparameterized by arc length on [-1, 1], with coordinates scaled
/// by 2/L so that the curve has unit speed and total length 2.
struct NormalizedTrace {
    PiecewisePoly cx;
    PiecewisePoly cy;
    std::vector<double> knots;   ///< s_i of each input point, knots.front() == -1, knots.back() == 1
    double total_length = 0.0;   ///< L, in input coordinate units
    std::optional<std::string> label;

    /// Factor taking normalized coordinates back to input units.
    double scale_back() const noexcept { return total_length / 2.0; }
};

namespace detail {

// Interpolant through (t_i, y_i), one global-monomial segment per interval.
inline std::vector<DensePoly> linear_segments(std::span<const double> t, std::span<const double> y) {
    std::vector<DensePoly> segs;
    segs.reserve(t.size() - 1);
    for (std::size_t k = 0; k + 1 < t.size(); ++k) {
        const double m = (y[k + 1] - y[k]) / (t[k + 1] - t[k]);
        segs.emplace_back(ClassicalBasis::Monomial, std::vector<double>{y[k] - m * t[k], m});
    }
    return segs;
}

// Natural cubic spline (zero second derivative at both ends).
inline std::vector<DensePoly> natural_cubic_segments(std::span<const double> t, std::span<const double> y) {
    const std::size_t n = t.size();
    if (n == 2) return linear_segments(t, y);
    // Thomas algorithm for the interior second derivatives M_1..M_{n-2}.
    std::vector<double> M(n, 0.0), diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = t[i] - t[i - 1], h1 = t[i + 1] - t[i];
        diag[i] = 2.0 * (h0 + h1);
        upper[i] = h1;
        rhs[i] = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
        if (i > 1) {
            const double w = h0 / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
    }
    for (std::size_t i = n - 2; i >= 1; --i) M[i] = (rhs[i] - upper[i] * M[i + 1]) / diag[i];

    std::vector<DensePoly> segs;
    segs.reserve(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double a = t[k], b = t[k + 1], h = b - a;
        const double p = M[k] / (6.0 * h), q = M[k + 1] / (6.0 * h);
        const double A = y[k] / h - M[k] * h / 6.0;
        const double B = y[k + 1] / h - M[k + 1] * h / 6.0;
        // p (b-s)^3 + q (s-a)^3 + A (b-s) + B (s-a), expanded in powers of s.
        std::vector<double> c{
            p * b * b * b - q * a * a * a + A * b - B * a,
            -3.0 * p * b * b + 3.0 * q * a * a - A + B,
            3.0 * p * b - 3.0 * q * a,
            q - p,
        };
        // Pin the left end to the data value so rounding in the expansion does not
        // show up as a jump at the knots.
        DensePoly seg(ClassicalBasis::Monomial, c);
        c[0] += y[k] - eval_monomial(seg, a);
        segs.emplace_back(ClassicalBasis::Monomial, std::move(c));
    }
    return segs;
}

inline double cubic_speed_length(const DensePoly& sx, const DensePoly& sy, double a, double b) {
    // 8-point Gauss-Legendre on [-1, 1].
    static constexpr std::array<double, 4> nodes{0.1834346424956498, 0.5255324099163290,
                                                 0.7966664774136267, 0.9602898564975363};
    static constexpr std::array<double, 4> weights{0.3626837833783620, 0.3137066458778873,
                                                   0.2223810344533745, 0.1012285362903763};
    const auto dx = derivative(sx), dy = derivative(sy);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (double sgn : {-1.0, 1.0}) {
            const double u = mid + sgn * half * nodes[i];
            acc += weights[i] * std::hypot(eval_monomial(dx, u), eval_monomial(dy, u));
        }
    return acc * half;
}

}  // namespace detail

/// Interpolating splines of the requested order, reparameterized by arc
/// length onto [-1, 1] and scaled to unit speed.
///
/// Linear arc length is exact. For cubic splines the arc length is measured
/// along a natural cubic spline in the chord-length parameter (8-point
/// Gauss-Legendre per segment), and the returned cx, cy are natural cubic
/// splines through the rescaled points at the resulting knots.
inline NormalizedTrace arc_length_normalize(const InkTrace& trace, SplineOrder order = SplineOrder::Linear) {
    const auto& pts = trace.points();
    if (pts.size() < 2) throw DegenerateTrace("trace has fewer than two distinct points");
    const std::size_t n = pts.size();
    std::vector<double> x(n), y(n), s(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = pts[i].x;
        y[i] = pts[i].y;
    }
    for (std::size_t i = 1; i < n; ++i) s[i] = s[i - 1] + std::hypot(x[i] - x[i - 1], y[i] - y[i - 1]);

    if (order == SplineOrder::Cubic) {
        const auto sx = detail::natural_cubic_segments(s, x);
        const auto sy = detail::natural_cubic_segments(s, y);
        std::vector<double> arc(n, 0.0);
        for (std::size_t k = 0; k + 1 < n; ++k)
            arc[k + 1] = arc[k] + detail::cubic_speed_length(sx[k], sy[k], s[k], s[k + 1]);
        s = std::move(arc);
    }

    const double L = s.back();
    if (!(L > 0.0) || !std::isfinite(L)) throw DegenerateTrace("trace has zero arc length");
    const double k = 2.0 / L;
    std::vector<double> knots(n);
    for (std::size_t i = 0; i < n; ++i) {
        knots[i] = -1.0 + k * s[i];
        x[i] *= k;
        y[i] *= k;
    }
    knots.front() = -1.0;
    knots.back() = 1.0;

    auto segs_x = order == SplineOrder::Linear ? detail::linear_segments(knots, x) : detail::natural_cubic_segments(knots, x);
    auto segs_y = order == SplineOrder::Linear ? detail::linear_segments(knots, y) : detail::natural_cubic_segments(knots, y);
    return NormalizedTrace{PiecewisePoly(knots, std::move(segs_x)), PiecewisePoly(knots, std::move(segs_y)),
                           knots, L, trace.label()};
}

}  // namespace inkbasis
