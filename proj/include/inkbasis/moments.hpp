#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "inkbasis/errors.hpp"

namespace inkbasis {

/// Integration weight on [-1, 1]: dx (Legendre type) or dx / sqrt(1 - x^2)
/// (Chebyshev type).
enum class Weight { Unit, InverseSqrt };

inline const char* to_string(Weight w) {
    return w == Weight::Unit ? "unit" : "inverse-sqrt";
}

namespace detail {

inline void check_interval(double a, double b) {
    if (!(a >= -1.0 && b <= 1.0 && a <= b))
        throw DomainError("moment interval [" + std::to_string(a) + ", " + std::to_string(b) +
                          "] is not inside [-1, 1]");
}

}  // namespace detail

/// All moments I_0..I_kmax of x^k over [a, b] under `w`.
///
/// The inverse-sqrt moments use the upward recurrence
///   I_k = ((k-1) I_{k-2} - [x^{k-1} sqrt(1-x^2)]_a^b) / k
/// seeded with I_0 = asin(b) - asin(a) and I_1 = sqrt(1-a^2) - sqrt(1-b^2).
/// The boundary term vanishes at x = +-1, so closed intervals need no special case.
inline std::vector<double> weighted_moments(int kmax, double a, double b, Weight w) {
    detail::check_interval(a, b);
    std::vector<double> m(kmax >= 0 ? static_cast<std::size_t>(kmax) + 1 : 0, 0.0);
    if (kmax < 0) return m;
    if (w == Weight::Unit) {
        double pa = a, pb = b;  // a^{k+1}, b^{k+1}
        for (int k = 0; k <= kmax; ++k) {
            m[k] = (pb - pa) / (k + 1);
            pa *= a;
            pb *= b;
        }
        return m;
    }
    const double ra = std::sqrt((1.0 - a) * (1.0 + a));
    const double rb = std::sqrt((1.0 - b) * (1.0 + b));
    m[0] = std::asin(b) - std::asin(a);
    if (kmax >= 1) m[1] = ra - rb;
    double pa = a, pb = b;  // a^{k-1}, b^{k-1} for k = 2
    for (int k = 2; k <= kmax; ++k) {
        m[k] = ((k - 1) * m[k - 2] - (pb * rb - pa * ra)) / k;
        pa *= a;
        pb *= b;
    }
    return m;
}

/// Integral of x^k over [a, b] under `w`. Throws DomainError unless
/// -1 <= a <= b <= 1.
inline double weighted_moment(int k, double a, double b, Weight w) {
    if (k < 0) throw DomainError("weighted_moment: negative power");
    return weighted_moments(k, a, b, w).back();
}

/// Modified moments M_k = integral of T_k(x) w(x) over [a, b], k = 0..kmax.
/// Unlike the monomial moments these stay well-conditioned at high degree.
inline std::vector<double> chebyshev_moments(int kmax, double a, double b, Weight w) {
    detail::check_interval(a, b);
    std::vector<double> m(kmax >= 0 ? static_cast<std::size_t>(kmax) + 1 : 0, 0.0);
    const double ta = std::acos(a), tb = std::acos(b);  // ta >= tb
    for (int k = 0; k <= kmax; ++k) {
        const double kd = k;
        if (w == Weight::InverseSqrt) {
            m[k] = k == 0 ? ta - tb : (std::sin(kd * ta) - std::sin(kd * tb)) / kd;
            continue;
        }
        // Antiderivative of T_k: T_{k+1}/(2(k+1)) - T_{k-1}/(2(k-1)); T_2/4 for k = 1.
        auto F = [&](double t) {
            const double up = std::cos((kd + 1.0) * t) / (2.0 * (kd + 1.0));
            return k == 1 ? up : up - std::cos((kd - 1.0) * t) / (2.0 * (kd - 1.0));
        };
        m[k] = F(tb) - F(ta);
    }
    return m;
}

}  // namespace inkbasis
