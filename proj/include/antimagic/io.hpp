#ifndef ANTIMAGIC_IO_HPP
#define ANTIMAGIC_IO_HPP

#include <charconv>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "antimagic/construction.hpp"
#include "antimagic/errors.hpp"
#include "antimagic/graph_core.hpp"
#include "antimagic/oracle.hpp"
#include "antimagic/verification.hpp"

namespace antimagic {

using json = nlohmann::json;

class schema_error : public input_error {
public:
    using input_error::input_error;
};

// {"n", "arcs": [{"from","to","label"}], "sums": {v: int}, "classes": {v: str}, "k1", "k2"}
inline json labeling_to_json(const OrientedLabeling& ol, std::span<const VertexClass> classes,
                             const LabelPartition& p) {
    json arcs = json::array();
    for (const Arc& a : ol.arcs) arcs.push_back({{"from", a.tail}, {"to", a.head}, {"label", a.label}});
    json sums = json::object();
    const auto s = oriented_sums(ol);
    for (std::size_t v = 0; v < s.size(); ++v) sums[std::to_string(v)] = s[v];
    json cls = json::object();
    for (std::size_t v = 0; v < classes.size(); ++v) cls[std::to_string(v)] = to_string(classes[v]);
    return {{"n", ol.n}, {"arcs", arcs}, {"sums", sums}, {"classes", cls}, {"k1", p.k1}, {"k2", p.k2}};
}

inline json construction_to_json(const Construction& c) {
    return labeling_to_json(c.labeling, c.trace.classes, c.trace.partition);
}

struct VerifyDocument {
    OrientedLabeling labeling;
    std::optional<std::vector<Label>> sums;
    std::optional<std::vector<VertexClass>> classes;
    Label k1 = 0;
    Label k2 = 0;
};

namespace detail {

inline const json& require(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw schema_error(std::string("missing key '") + key + "'");
    return *it;
}

inline std::int64_t require_int(const json& value, const std::string& where) {
    if (!value.is_number_integer()) throw schema_error("'" + where + "' must be an integer");
    return value.get<std::int64_t>();
}

inline std::size_t vertex_key(const std::string& key, std::size_t n, const std::string& where) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), v);
    if (ec != std::errc() || ptr != key.data() + key.size() || v >= n)
        throw schema_error("'" + where + "' has invalid vertex key '" + key + "'");
    return v;
}

}  // namespace detail

inline VerifyDocument parse_verify_document(const json& doc) {
    if (!doc.is_object()) throw schema_error("document must be a JSON object");
    for (const auto& [key, _] : doc.items()) {
        if (key != "n" && key != "arcs" && key != "sums" && key != "classes" && key != "k1" && key != "k2")
            throw schema_error("unknown key '" + key + "'");
    }
    VerifyDocument out;
    const std::int64_t n = detail::require_int(detail::require(doc, "n"), "n");
    if (n < 1) throw schema_error("'n' must be positive");
    out.labeling.n = static_cast<std::size_t>(n);
    out.k1 = detail::require_int(detail::require(doc, "k1"), "k1");
    out.k2 = detail::require_int(detail::require(doc, "k2"), "k2");

    const json& arcs = detail::require(doc, "arcs");
    if (!arcs.is_array()) throw schema_error("'arcs' must be an array");
    for (const json& a : arcs) {
        if (!a.is_object() || a.size() != 3) throw schema_error("each arc must be {from, to, label}");
        const std::int64_t from = detail::require_int(detail::require(a, "from"), "from");
        const std::int64_t to = detail::require_int(detail::require(a, "to"), "to");
        const std::int64_t label = detail::require_int(detail::require(a, "label"), "label");
        if (from < 0 || to < 0 || from >= n || to >= n) throw schema_error("arc endpoint out of range");
        if (from == to) throw schema_error("arc is a self-loop");
        out.labeling.arcs.push_back({static_cast<VertexId>(from), static_cast<VertexId>(to), label});
    }

    if (auto it = doc.find("sums"); it != doc.end()) {
        if (!it->is_object() || it->size() != out.labeling.n)
            throw schema_error("'sums' must map every vertex to an integer");
        std::vector<Label> sums(out.labeling.n, 0);
        for (const auto& [key, value] : it->items())
            sums[detail::vertex_key(key, out.labeling.n, "sums")] = detail::require_int(value, "sums." + key);
        out.sums = std::move(sums);
    }
    if (auto it = doc.find("classes"); it != doc.end()) {
        if (!it->is_object() || it->size() != out.labeling.n)
            throw schema_error("'classes' must map every vertex to a class name");
        std::vector<VertexClass> classes(out.labeling.n, VertexClass::NonPathLeaf);
        for (const auto& [key, value] : it->items()) {
            if (!value.is_string()) throw schema_error("'classes." + key + "' must be a string");
            auto c = vertex_class_from_string(value.get<std::string>());
            if (!c) throw schema_error("unknown vertex class '" + value.get<std::string>() + "'");
            classes[detail::vertex_key(key, out.labeling.n, "classes")] = *c;
        }
        out.classes = std::move(classes);
    }
    return out;
}

// Verifies a parsed document. Sums are always recomputed and compared with
// any declared ones; class checks run only when classes are declared.
inline VerificationReport verify_document(const VerifyDocument& doc) {
    VerificationReport rep;
    if (!labels_form_bijection(doc.labeling)) {
        rep.violations.push_back("labels_not_bijection");
        return rep;
    }
    if (doc.classes) {
        rep = check_weight_classes(doc.labeling, std::span<const VertexClass>(*doc.classes));
    } else {
        rep.sums = oriented_sums(doc.labeling);
        for (Label s : rep.sums) rep.weights.push_back(s < 0 ? -s : s);
        rep.antimagic = all_distinct(rep.sums);
        if (!rep.antimagic) rep.violations.push_back("duplicate_sum");
    }
    if (doc.sums && *doc.sums != rep.sums) rep.violations.push_back("sums_mismatch");

    const Label m = static_cast<Label>(doc.labeling.arcs.size());
    std::vector<std::size_t> deg(doc.labeling.n, 0);
    for (const Arc& a : doc.labeling.arcs) {
        ++deg[a.tail];
        ++deg[a.head];
    }
    Label r = 0;
    for (std::size_t d : deg) r += d == 1 ? 1 : 0;
    if (m >= 2 && r >= 2 && r <= m) {
        if (doc.k1 != (m - r + 2) / 2 || doc.k2 != (m + r + 1) / 2 - 1)
            rep.violations.push_back("partition_mismatch");
    }
    return rep;
}

inline json report_to_json(const VerificationReport& rep) {
    json sums = json::object();
    json weights = json::object();
    for (std::size_t v = 0; v < rep.sums.size(); ++v) sums[std::to_string(v)] = rep.sums[v];
    for (std::size_t v = 0; v < rep.weights.size(); ++v) weights[std::to_string(v)] = rep.weights[v];
    json ranges = json::object();
    for (const auto& [name, r] : rep.class_ranges)
        ranges[name] = {{"min", r.min}, {"max", r.max}, {"count", r.count}};
    return {{"antimagic", rep.antimagic},
            {"violations", rep.violations},
            {"sums", sums},
            {"weights", weights},
            {"class_ranges", ranges}};
}

inline json oracle_to_json(const OracleResult& res) {
    json out = {{"m", res.m},
                {"orientations_with_solution", res.orientations_with_solution},
                {"total_antimagic_pairs", res.total_antimagic_pairs},
                {"orientations_enumerated", res.orientations_enumerated},
                {"labelings_per_orientation", res.labelings_per_orientation},
                {"complete", res.complete}};
    if (res.witness) {
        json arcs = json::array();
        for (const Arc& a : res.witness->arcs)
            arcs.push_back({{"from", a.tail}, {"to", a.head}, {"label", a.label}});
        out["witness"] = {{"n", res.witness->n}, {"arcs", arcs}};
    } else {
        out["witness"] = nullptr;
    }
    return out;
}

// Tab-separated rows: one `arc from to label` per arc, then one
// `vertex id sum class` per vertex.
inline void write_tsv(std::ostream& os, const Construction& c) {
    const auto sums = oriented_sums(c.labeling);
    for (const Arc& a : c.labeling.arcs)
        os << "arc\t" << a.tail << '\t' << a.head << '\t' << a.label << '\n';
    for (std::size_t v = 0; v < sums.size(); ++v)
        os << "vertex\t" << v << '\t' << sums[v] << '\t' << to_string(c.trace.classes[v]) << '\n';
}

// Arc labels as edge labels, oriented sums in node labels. Light vertices are
// filled light grey and heavy vertices dark grey.
inline void write_dot(std::ostream& os, const Construction& c, const std::string& name = "caterpillar") {
    const auto sums = oriented_sums(c.labeling);
    os << "digraph \"" << name << "\" {\n";
    for (std::size_t v = 0; v < sums.size(); ++v) {
        os << "  " << v << " [label=\"" << v << "\\n" << sums[v] << "\"";
        switch (c.trace.classes[v]) {
            case VertexClass::Light: os << ", style=filled, fillcolor=lightgrey"; break;
            case VertexClass::Heavy: os << ", style=filled, fillcolor=darkgrey"; break;
            default: break;
        }
        os << "];\n";
    }
    for (const Arc& a : c.labeling.arcs)
        os << "  " << a.tail << " -> " << a.head << " [label=\"" << a.label << "\"];\n";
    os << "}\n";
}

}  // namespace antimagic

#endif  // ANTIMAGIC_IO_HPP
