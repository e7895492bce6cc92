#pragma once

// Inner products of Legendre/Chebyshev type, optionally with a first-order
// Sobolev term, and the degree-graded orthogonal families they induce.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "inkbasis/errors.hpp"
#include "inkbasis/moments.hpp"
#include "inkbasis/piecewise.hpp"
#include "inkbasis/poly.hpp"

namespace inkbasis {

/// Default Sobolev weight of the derivative term.
inline constexpr double kDefaultLambda = 0.125;

/// The four families compared throughout the library.
enum class BasisKind { Legendre, Chebyshev, LegendreSobolev, ChebyshevSobolev };

inline constexpr BasisKind kAllBasisKinds[] = {BasisKind::Legendre, BasisKind::Chebyshev,
                                               BasisKind::LegendreSobolev, BasisKind::ChebyshevSobolev};

inline std::string_view to_string(BasisKind k) {
    switch (k) {
        case BasisKind::Legendre: return "legendre";
        case BasisKind::Chebyshev: return "chebyshev";
        case BasisKind::LegendreSobolev: return "legendre-sobolev";
        case BasisKind::ChebyshevSobolev: return "chebyshev-sobolev";
    }
    return "?";
}

inline BasisKind parse_basis_kind(std::string_view s) {
    for (auto k : kAllBasisKinds)
        if (to_string(k) == s) return k;
    throw Error("unknown basis kind '" + std::string(s) + "'");
}

/// <f,g> = sum_{r=0}^{order} lambda_r * integral f^(r) g^(r) w, with lambda_0 = 1
/// and a single lambda shared by all derivative terms. Only order 0 and 1 can
/// be evaluated; higher orders are representable but raise Unsupported.
struct InnerProductSpec {
    Weight weight = Weight::InverseSqrt;
    double lambda = 0.0;
    int order = 0;

    /// True when the derivative term is present.
    bool is_sobolev() const noexcept { return lambda != 0.0 && order >= 1; }

    ClassicalBasis classical() const noexcept {
        return weight == Weight::Unit ? ClassicalBasis::Legendre : ClassicalBasis::Chebyshev;
    }

    void validate() const {
        if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be a finite value >= 0");
        if (order < 0) throw DomainError("Sobolev order must be >= 0");
        if (is_sobolev() && order > 1) throw Unsupported("Sobolev order above 1 is not implemented");
    }

    static InnerProductSpec for_kind(BasisKind k, double lambda = kDefaultLambda) {
        switch (k) {
            case BasisKind::Legendre: return {Weight::Unit, 0.0, 0};
            case BasisKind::Chebyshev: return {Weight::InverseSqrt, 0.0, 0};
            case BasisKind::LegendreSobolev: return {Weight::Unit, lambda, 1};
            case BasisKind::ChebyshevSobolev: return {Weight::InverseSqrt, lambda, 1};
        }
        return {};
    }

    friend bool operator==(const InnerProductSpec&, const InnerProductSpec&) = default;
};

/// <B_i, B_i> for the classical basis matching `w`: pi, pi/2, pi/2, ... for
/// Chebyshev and 2/(2i+1) for Legendre.
inline double classical_sq_norm(Weight w, std::size_t i) {
    if (w == Weight::InverseSqrt) return i == 0 ? std::numbers::pi : std::numbers::pi / 2.0;
    return 2.0 / (2.0 * static_cast<double>(i) + 1.0);
}

namespace detail {

inline double plain_inner(std::span<const double> f, std::span<const double> g, Weight w) {
    const std::size_t n = std::min(f.size(), g.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += classical_sq_norm(w, i) * f[i] * g[i];
    return acc;
}

}  // namespace detail

/// Inner product of two polynomials given in the classical basis of
/// `spec.weight`, evaluated from the diagonal norm formula (plus lambda times
/// the same formula on the derivatives).
inline double inner_closed_form(const DensePoly& f, const DensePoly& g, const InnerProductSpec& spec) {
    spec.validate();
    const auto cb = spec.classical();
    if (f.basis() != cb || g.basis() != cb)
        throw BasisMismatch("inner_closed_form: operands must be in the " + std::string(to_string(cb)) + " basis");
    double v = detail::plain_inner(f.coeffs(), g.coeffs(), spec.weight);
    if (spec.is_sobolev())
        v += spec.lambda * detail::plain_inner(derivative(f).coeffs(), derivative(g).coeffs(), spec.weight);
    return v;
}

/// A degree-graded orthogonal family S_0..S_d. Row i of the expansion holds the
/// coefficients of S_i in the classical basis of the spec's weight; rows are
/// normalized to a unit leading coefficient, so S_i = T_i (or P_i) when the
/// inner product has no derivative term.
class OrthoBasis {
public:
    OrthoBasis(InnerProductSpec spec, int degree, std::vector<double> expansion, std::vector<double> sq_norms)
        : spec_(spec), degree_(degree), expansion_(std::move(expansion)), sq_norms_(std::move(sq_norms)) {
        const auto n = static_cast<std::size_t>(degree_ + 1);
        if (degree_ < 0 || expansion_.size() != n * n || sq_norms_.size() != n)
            throw LengthMismatch("OrthoBasis: expansion/sq_norms do not match degree");
    }

    const InnerProductSpec& spec() const noexcept { return spec_; }
    int degree() const noexcept { return degree_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(degree_ + 1); }
    ClassicalBasis classical() const noexcept { return spec_.classical(); }

    /// Row-major (d+1) x (d+1) lower-triangular expansion matrix.
    const std::vector<double>& expansion() const noexcept { return expansion_; }
    double expansion(std::size_t i, std::size_t j) const noexcept { return expansion_[i * size() + j]; }
    const std::vector<double>& sq_norms() const noexcept { return sq_norms_; }

    /// S_i as a classical-basis polynomial.
    DensePoly element(std::size_t i) const {
        std::vector<double> c(expansion_.begin() + static_cast<std::ptrdiff_t>(i * size()),
                              expansion_.begin() + static_cast<std::ptrdiff_t>(i * size() + i + 1));
        return DensePoly(classical(), std::move(c));
    }

    /// The family S_0..S_d' for d' <= d. Graded construction makes this exact.
    OrthoBasis truncated(int d) const {
        if (d < 0 || d > degree_) throw DomainError("truncated: degree out of range");
        const auto n = static_cast<std::size_t>(d + 1);
        std::vector<double> e(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) e[i * n + j] = expansion(i, j);
        return OrthoBasis(spec_, d, std::move(e), {sq_norms_.begin(), sq_norms_.begin() + static_cast<std::ptrdiff_t>(n)});
    }

    /// Stable identifier, e.g. "chebyshev-sobolev:lambda=0.125:d=10".
    std::string id() const {
        std::string kind = spec_.weight == Weight::Unit ? "legendre" : "chebyshev";
        if (!spec_.is_sobolev()) return kind + ":d=" + std::to_string(degree_);
        char lam[40];
        std::snprintf(lam, sizeof lam, "%.17g", spec_.lambda);
        return kind + "-sobolev:lambda=" + lam + ":d=" + std::to_string(degree_);
    }

private:
    InnerProductSpec spec_;
    int degree_;
    std::vector<double> expansion_;
    std::vector<double> sq_norms_;
};

/// Gram-Schmidt over the classical basis elements under `spec`, modified form
/// with one re-orthogonalization pass. Without a derivative term the result is
/// the classical basis itself, built directly.
inline OrthoBasis build_basis(const InnerProductSpec& spec, int d) {
    spec.validate();
    if (d < 0) throw DomainError("build_basis: degree must be >= 0");
    if (d > kMaxConvertDegree) throw DegreeTooLarge("build_basis: degree above 64");
    const auto n = static_cast<std::size_t>(d + 1);
    std::vector<double> e(n * n, 0.0);
    std::vector<double> h(n);

    if (!spec.is_sobolev()) {
        for (std::size_t i = 0; i < n; ++i) {
            e[i * n + i] = 1.0;
            h[i] = classical_sq_norm(spec.weight, i);
        }
        return OrthoBasis(spec, d, std::move(e), std::move(h));
    }

    const auto cb = spec.classical();
    std::vector<DensePoly> rows;
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> v(i + 1, 0.0);
        v[i] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < i; ++j) {
                const double c = inner_closed_form(DensePoly(cb, v), rows[j], spec) / h[j];
                if (c == 0.0) continue;
                const auto& r = rows[j].coeffs();
                for (std::size_t k = 0; k < r.size(); ++k) v[k] -= c * r[k];
            }
        }
        v[i] = 1.0;
        rows.emplace_back(cb, v);
        h[i] = inner_closed_form(rows[i], rows[i], spec);
        for (std::size_t k = 0; k <= i; ++k) e[i * n + k] = v[k];
    }
    return OrthoBasis(spec, d, std::move(e), std::move(h));
}

inline OrthoBasis build_basis(BasisKind kind, int d, double lambda = kDefaultLambda) {
    return build_basis(InnerProductSpec::for_kind(kind, lambda), d);
}

/// Orthogonal projection coefficients c_i = <f, S_i> / h_i, i = 0..d.
inline std::vector<double> project(const PiecewisePoly& f, const OrthoBasis& basis) {
    const auto& spec = basis.spec();
    const int d = basis.degree();
    auto m = classical_moments(f, basis.classical(), d, spec.weight, 0);
    if (spec.is_sobolev()) {
        const auto m1 = classical_moments(f, basis.classical(), d, spec.weight, 1);
        for (std::size_t j = 0; j < m.size(); ++j) m[j] += spec.lambda * m1[j];
    }
    std::vector<double> c(basis.size(), 0.0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= i; ++j) acc += basis.expansion(i, j) * m[j];
        c[i] = acc / basis.sq_norms()[i];
    }
    return c;
}

/// sum_i coeffs[i] * S_i as a classical-basis polynomial.
inline DensePoly synthesize(std::span<const double> coeffs, const OrthoBasis& basis) {
    if (coeffs.size() > basis.size())
        throw LengthMismatch("synthesize: " + std::to_string(coeffs.size()) + " coefficients for a degree " +
                             std::to_string(basis.degree()) + " basis");
    std::vector<double> out(coeffs.size(), 0.0);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) out[j] += coeffs[i] * basis.expansion(i, j);
    return DensePoly(basis.classical(), std::move(out));
}

// JSON document: {"spec": {"weight", "lambda", "order"}, "degree", "expansion", "sq_norms"}.

inline nlohmann::json to_json(const OrthoBasis& b) {
    return {
        {"id", b.id()},
        {"spec", {{"weight", to_string(b.spec().weight)}, {"lambda", b.spec().lambda}, {"order", b.spec().order}}},
        {"degree", b.degree()},
        {"normalization", "unit-leading-classical-coefficient"},
        {"expansion", b.expansion()},
        {"sq_norms", b.sq_norms()},
    };
}

inline OrthoBasis basis_from_json(const nlohmann::json& j) {
    try {
        InnerProductSpec spec;
        const auto w = j.at("spec").at("weight").get<std::string>();
        if (w == "unit")
            spec.weight = Weight::Unit;
        else if (w == "inverse-sqrt")
            spec.weight = Weight::InverseSqrt;
        else
            throw ParseError(0, "unknown weight '" + w + "'");
        spec.lambda = j.at("spec").at("lambda").get<double>();
        spec.order = j.at("spec").at("order").get<int>();
        spec.validate();
        return OrthoBasis(spec, j.at("degree").get<int>(), j.at("expansion").get<std::vector<double>>(),
                          j.at("sq_norms").get<std::vector<double>>());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, std::string("basis document: ") + e.what());
    }
}

}  // namespace inkbasis
