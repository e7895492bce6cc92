#pragma once

#include <charconv>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "inkbasis/errors.hpp"

namespace inkbasis {

struct Point {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point&, const Point&) = default;
};

/// Time-ordered pen samples of one symbol. Consecutive duplicate points are
/// collapsed on construction, so neighbouring points always differ.
class InkTrace {
public:
    InkTrace() = default;
    explicit InkTrace(std::vector<Point> points, std::optional<std::string> label = std::nullopt)
        : label_(std::move(label)) {
        points_.reserve(points.size());
        for (const auto& p : points)
            if (points_.empty() || !(points_.back() == p)) points_.push_back(p);
    }

    const std::vector<Point>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    const std::optional<std::string>& label() const noexcept { return label_; }
    void set_label(std::optional<std::string> l) { label_ = std::move(l); }

private:
    std::vector<Point> points_;
    std::optional<std::string> label_;
};

/// Joins strokes end to end in the given order; the pen-up gap between two
/// strokes becomes a straight connecting segment. The label of the first
/// labelled stroke is kept.
inline InkTrace concatenate(std::span<const InkTrace> strokes) {
    std::vector<Point> pts;
    std::optional<std::string> label;
    for (const auto& s : strokes) {
        pts.insert(pts.end(), s.points().begin(), s.points().end());
        if (!label && s.label()) label = s.label();
    }
    return InkTrace(std::move(pts), std::move(label));
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n\f\v";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

template <class T>
std::optional<T> parse_number(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

}  // namespace detail

/// UCI pen-based digits: each non-blank line holds 16 integer coordinates
/// (8 x,y pairs) followed by the class digit.
inline std::vector<InkTrace> parse_pendigits(std::istream& in) {
    std::vector<InkTrace> traces;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto body = detail::trim(line);
        if (body.empty()) continue;
        const auto fields = detail::split(body, ',');
        if (fields.size() != 17)
            throw ParseError(lineno, "expected 17 fields, found " + std::to_string(fields.size()));
        std::vector<Point> pts;
        pts.reserve(8);
        for (std::size_t i = 0; i < 16; i += 2) {
            const auto x = detail::parse_number<long>(fields[i]);
            const auto y = detail::parse_number<long>(fields[i + 1]);
            if (!x || !y) throw ParseError(lineno, "non-integer coordinate in field " + std::to_string(x ? i + 2 : i + 1));
            pts.push_back({static_cast<double>(*x), static_cast<double>(*y)});
        }
        const auto cls = detail::parse_number<int>(fields[16]);
        if (!cls || *cls < 0 || *cls > 9) throw ParseError(lineno, "class field is not a digit 0-9");
        traces.emplace_back(std::move(pts), std::to_string(*cls));
    }
    return traces;
}

/// Parses the text content of an InkML <trace>: comma-separated points, each
/// a whitespace-separated list of channel values. Channels past x and y are
/// ignored.
inline std::vector<Point> parse_trace_points(std::string_view text) {
    std::vector<Point> pts;
    if (detail::trim(text).empty()) return pts;
    for (auto chunk : detail::split(text, ',')) {
        chunk = detail::trim(chunk);
        if (chunk.empty()) throw ParseError(0, "empty point in trace");
        double xy[2];
        int got = 0;
        std::size_t pos = 0;
        while (got < 2 && pos < chunk.size()) {
            const auto b = chunk.find_first_not_of(" \t\r\n", pos);
            if (b == std::string_view::npos) break;
            auto e = chunk.find_first_of(" \t\r\n", b);
            if (e == std::string_view::npos) e = chunk.size();
            const auto v = detail::parse_number<double>(chunk.substr(b, e - b));
            if (!v) throw ParseError(0, "non-numeric coordinate '" + std::string(chunk.substr(b, e - b)) + "'");
            xy[got++] = *v;
            pos = e;
        }
        if (got < 2) throw ParseError(0, "trace point with fewer than two channels");
        pts.push_back({xy[0], xy[1]});
    }
    return pts;
}

}  // namespace inkbasis
