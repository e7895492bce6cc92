#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "inkbasis/errors.hpp"
#include "inkbasis/normalize.hpp"
#include "inkbasis/sobolev.hpp"

namespace inkbasis {

/// What centring and scaling removed from a symbol: the dropped constant
/// coefficients (in normalized units) and the original arc length.
struct Frame {
    double x0 = 0.0;
    double y0 = 0.0;
    double length = 0.0;
    friend bool operator==(const Frame&, const Frame&) = default;
};

/// 2d numbers describing one symbol: coefficients 1..d of the x and y series.
struct SymbolCoeffs {
    std::string basis_id;
    std::vector<double> xs;
    std::vector<double> ys;
    std::optional<std::string> label;
    std::optional<Frame> frame;

    std::size_t degree() const noexcept { return xs.size(); }
    friend bool operator==(const SymbolCoeffs&, const SymbolCoeffs&) = default;
};

/// Projects both coordinate curves onto `basis` and drops the constant terms.
inline SymbolCoeffs to_coeffs(const NormalizedTrace& t, const OrthoBasis& basis) {
    if (basis.degree() < 1) throw DomainError("to_coeffs: basis degree must be >= 1");
    const auto cx = project(t.cx, basis);
    const auto cy = project(t.cy, basis);
    SymbolCoeffs out;
    out.basis_id = basis.id();
    out.xs.assign(cx.begin() + 1, cx.end());
    out.ys.assign(cy.begin() + 1, cy.end());
    out.label = t.label;
    out.frame = Frame{cx[0], cy[0], t.total_length};
    return out;
}

/// Full coefficient vector (constant term restored from the frame), x then y.
inline std::pair<std::vector<double>, std::vector<double>> full_series(const SymbolCoeffs& c) {
    if (!c.frame) throw Error("symbol has no frame; constant terms are unavailable");
    std::vector<double> x{c.frame->x0}, y{c.frame->y0};
    x.insert(x.end(), c.xs.begin(), c.xs.end());
    y.insert(y.end(), c.ys.begin(), c.ys.end());
    return {std::move(x), std::move(y)};
}

// JSON lines: {"label", "basis_id", "xs", "ys"[, "frame": {"x0", "y0", "length"}]}

inline nlohmann::json to_json(const SymbolCoeffs& c) {
    nlohmann::json j{{"label", nullptr}, {"basis_id", c.basis_id}, {"xs", c.xs}, {"ys", c.ys}};
    if (c.label) j["label"] = *c.label;
    if (c.frame) j["frame"] = {{"x0", c.frame->x0}, {"y0", c.frame->y0}, {"length", c.frame->length}};
    return j;
}

inline SymbolCoeffs symbol_from_json(const nlohmann::json& j) {
    SymbolCoeffs c;
    c.basis_id = j.at("basis_id").get<std::string>();
    c.xs = j.at("xs").get<std::vector<double>>();
    c.ys = j.at("ys").get<std::vector<double>>();
    if (c.xs.size() != c.ys.size()) throw LengthMismatch("xs and ys differ in length");
    if (j.contains("label") && !j["label"].is_null()) c.label = j["label"].get<std::string>();
    if (j.contains("frame")) {
        const auto& f = j["frame"];
        c.frame = Frame{f.at("x0").get<double>(), f.at("y0").get<double>(), f.at("length").get<double>()};
    }
    return c;
}

inline void write_jsonl(std::ostream& out, std::span<const SymbolCoeffs> items) {
    for (const auto& c : items) out << to_json(c).dump() << '\n';
}

inline std::vector<SymbolCoeffs> read_jsonl(std::istream& in) {
    std::vector<SymbolCoeffs> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::trim(line).empty()) continue;
        try {
            out.push_back(symbol_from_json(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(lineno, e.what());
        } catch (const LengthMismatch& e) {
            throw ParseError(lineno, e.what());
        }
    }
    return out;
}

}  // namespace inkbasis
