#pragma once

// Minimal InkML reader: <trace> elements plus <annotation> labels, either on
// the trace itself, on an enclosing <traceGroup>, or on a <traceGroup> that
// points at the trace through <traceView traceDataRef="...">.

#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "inkbasis/errors.hpp"
#include "inkbasis/trace.hpp"

namespace inkbasis {

namespace detail {

using ptree = boost::property_tree::ptree;

inline std::optional<std::string> attr(const ptree& node, const char* name) {
    if (auto v = node.get_optional<std::string>(std::string("<xmlattr>.") + name)) return *v;
    return std::nullopt;
}

inline std::optional<std::string> annotation_of(const ptree& node) {
    for (const auto& [name, child] : node) {
        if (name != "annotation") continue;
        // Prefer type="truth" (the CROHME convention); otherwise the first one.
        const auto type = attr(child, "type");
        if (!type || *type == "truth" || *type == "label") return std::string(trim(child.data()));
    }
    return std::nullopt;
}

struct InkmlWalker {
    std::vector<InkTrace> traces;
    std::vector<std::optional<std::string>> ids;
    std::map<std::string, std::string> ref_labels;  // traceDataRef -> group label

    void walk(const ptree& node, const std::optional<std::string>& group_label) {
        for (const auto& [name, child] : node) {
            if (name == "trace") {
                InkTrace t(parse_trace_points(child.data()));
                auto label = annotation_of(child);
                t.set_label(label ? label : group_label);
                traces.push_back(std::move(t));
                auto id = attr(child, "xml:id");
                ids.push_back(id ? id : attr(child, "id"));
            } else if (name == "traceGroup") {
                auto label = annotation_of(child);
                if (!label) label = group_label;
                if (label)
                    for (const auto& [vn, view] : child)
                        if (vn == "traceView")
                            if (auto ref = attr(view, "traceDataRef")) ref_labels.emplace(*ref, *label);
                walk(child, label);
            } else if (name != "<xmlattr>" && name != "<xmlcomment>") {
                walk(child, group_label);
            }
        }
    }
};

}  // namespace detail

/// One InkTrace per <trace> element, in document order.
inline std::vector<InkTrace> parse_inkml(std::istream& in) {
    detail::ptree doc;
    try {
        boost::property_tree::read_xml(in, doc);
    } catch (const boost::property_tree::xml_parser_error& e) {
        throw ParseError(e.line(), "malformed XML: " + e.message());
    }
    detail::InkmlWalker w;
    w.walk(doc, std::nullopt);
    for (std::size_t i = 0; i < w.traces.size(); ++i) {
        if (w.traces[i].label() || !w.ids[i]) continue;
        auto it = w.ref_labels.find(*w.ids[i]);
        if (it == w.ref_labels.end()) it = w.ref_labels.find("#" + *w.ids[i]);
        if (it != w.ref_labels.end()) w.traces[i].set_label(it->second);
    }
    return std::move(w.traces);
}

inline std::vector<InkTrace> parse_inkml(const std::string& document) {
    std::istringstream in(document);
    return parse_inkml(in);
}

/// Strokes that share a label and appear consecutively are concatenated into
/// one symbol trace; unlabelled strokes stay on their own.
inline std::vector<InkTrace> group_symbols(const std::vector<InkTrace>& strokes) {
    std::vector<InkTrace> out;
    std::size_t i = 0;
    while (i < strokes.size()) {
        std::size_t j = i + 1;
        if (strokes[i].label())
            while (j < strokes.size() && strokes[j].label() == strokes[i].label()) ++j;
        out.push_back(concatenate(std::span(strokes).subspan(i, j - i)));
        i = j;
    }
    return out;
}

}  // namespace inkbasis
