#ifndef ANTIMAGIC_VERIFICATION_HPP
#define ANTIMAGIC_VERIFICATION_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "antimagic/construction.hpp"
#include "antimagic/errors.hpp"
#include "antimagic/graph_core.hpp"

namespace antimagic {

// Everything in this header is recomputed from arcs and labels alone. The
// construction's directions and path labels are never consulted, except by
// check_claims, whose subject is the trace itself.

struct WeightRange {
    Label min = 0;
    Label max = 0;
    std::size_t count = 0;
};

struct VerificationReport {
    std::vector<Label> sums;      // oriented vertex sum per vertex
    std::vector<Label> weights;   // |sum|
    std::map<std::string, WeightRange> class_ranges;
    bool antimagic = false;
    std::vector<std::string> violations;

    bool passed() const { return antimagic && violations.empty(); }
    bool has(std::string_view name) const {
        return std::find(violations.begin(), violations.end(), name) != violations.end();
    }
};

inline bool labels_form_bijection(const OrientedLabeling& ol) {
    const std::size_t m = ol.arcs.size();
    std::vector<bool> seen(m + 1, false);
    for (const Arc& a : ol.arcs) {
        if (a.label < 1 || static_cast<std::size_t>(a.label) > m) return false;
        if (seen[static_cast<std::size_t>(a.label)]) return false;
        seen[static_cast<std::size_t>(a.label)] = true;
    }
    return true;
}

inline std::vector<Label> oriented_sums(const OrientedLabeling& ol) {
    if (!labels_form_bijection(ol)) throw input_error("labels_not_bijection");
    std::vector<Label> sums(ol.n, 0);
    for (const Arc& a : ol.arcs) {
        if (a.tail >= ol.n || a.head >= ol.n)
            throw input_error("arc endpoint out of range");
        sums[a.head] += a.label;
        sums[a.tail] -= a.label;
    }
    return sums;
}

inline bool all_distinct(std::vector<Label> values) {
    std::sort(values.begin(), values.end());
    return std::adjacent_find(values.begin(), values.end()) == values.end();
}

inline bool verify_antimagic(const OrientedLabeling& ol) {
    return all_distinct(oriented_sums(ol));
}

namespace detail {

struct Bucket {
    std::string name;
    Label lo;
    std::optional<Label> hi;  // open above when empty
    std::vector<Label> weights;
};

}  // namespace detail

// Checks the four weight classes of a constructed labeling:
//   light                    [0, k1-1]
//   degree one               [k1, k2+1]   (u0 at k1, u_k at k2+1 when present)
//   heavy, no heavy edge     [k2+2, m+k1] strictly decreasing along the path
//   heavy with heavy edges   >= m+k1+1
// Only the class assignment is taken from the caller.
inline VerificationReport check_weight_classes(const OrientedLabeling& ol,
                                               std::span<const VertexClass> classes) {
    VerificationReport rep;
    if (!labels_form_bijection(ol)) {
        rep.violations.push_back("labels_not_bijection");
        return rep;
    }
    rep.sums = oriented_sums(ol);
    rep.weights.resize(rep.sums.size());
    for (std::size_t v = 0; v < rep.sums.size(); ++v)
        rep.weights[v] = rep.sums[v] < 0 ? -rep.sums[v] : rep.sums[v];
    rep.antimagic = all_distinct(rep.sums);
    if (!rep.antimagic) rep.violations.push_back("duplicate_sum");
    if (!all_distinct(rep.weights)) rep.violations.push_back("weights_not_distinct");

    const std::size_t n = ol.n;
    if (classes.size() != n) {
        rep.violations.push_back("class_structure");
        return rep;
    }

    std::vector<std::vector<VertexId>> adj(n);
    for (const Arc& a : ol.arcs) {
        adj[a.tail].push_back(a.head);
        adj[a.head].push_back(a.tail);
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());

    const Label m = static_cast<Label>(ol.arcs.size());
    Label r = 0;
    for (const auto& list : adj) r += list.size() == 1 ? 1 : 0;
    if (m < 2 || r < 2 || r > m) {
        rep.violations.push_back("partition_undefined");
        return rep;
    }
    const Label k1 = (m - r + 2) / 2;
    const Label k2 = (m + r + 1) / 2 - 1;

    bool structure_ok = true;
    std::vector<VertexId> path_ends;
    for (VertexId v = 0; v < n; ++v) {
        const bool leaf = adj[v].size() == 1;
        switch (classes[v]) {
            case VertexClass::Light:
            case VertexClass::Heavy: structure_ok &= !leaf && !adj[v].empty(); break;
            case VertexClass::PathEndLeaf: structure_ok &= leaf; path_ends.push_back(v); break;
            case VertexClass::NonPathLeaf: structure_ok &= leaf; break;
        }
    }
    const std::size_t expected_ends = (m - r) % 2 == 0 ? 2 : 1;
    if (path_ends.size() != expected_ends) structure_ok = false;
    if (!structure_ok) {
        rep.violations.push_back("class_structure");
        return rep;
    }

    // Walk P from u0 through light/heavy vertices.
    VertexId u0 = path_ends.front();
    for (VertexId v : path_ends)
        if (rep.weights[v] == k1) { u0 = v; break; }
    std::vector<VertexId> path{u0};
    {
        std::optional<VertexId> prev;
        VertexId cur = u0;
        while (true) {
            std::optional<VertexId> next;
            std::size_t options = 0;
            for (VertexId w : adj[cur]) {
                if (prev && w == *prev) continue;
                const VertexClass c = classes[w];
                const bool on_path = c == VertexClass::Light || c == VertexClass::Heavy ||
                                     (c == VertexClass::PathEndLeaf && w != u0);
                if (on_path) {
                    next = w;
                    ++options;
                }
            }
            if (options > 1) {
                rep.violations.push_back("class_structure");
                return rep;
            }
            if (!next) break;
            path.push_back(*next);
            prev = cur;
            cur = *next;
            if (classes[cur] == VertexClass::PathEndLeaf) break;
        }
    }
    std::size_t on_path_count = 0;
    for (VertexId v = 0; v < n; ++v)
        on_path_count += classes[v] == VertexClass::NonPathLeaf ? 0 : 1;
    if (path.size() != on_path_count) {
        rep.violations.push_back("class_structure");
        return rep;
    }

    if (rep.weights[u0] != k1) rep.violations.push_back("path_start_weight");
    if (expected_ends == 2) {
        const VertexId uk = path.back();
        if (classes[uk] != VertexClass::PathEndLeaf || rep.weights[uk] != k2 + 1)
            rep.violations.push_back("path_end_weight");
    }

    detail::Bucket light{"light", 0, k1 - 1, {}};
    detail::Bucket degree_one{"degree_one", k1, k2 + 1, {}};
    detail::Bucket heavy_plain{"heavy_plain", k2 + 2, m + k1, {}};
    detail::Bucket heavy_loaded{"heavy_loaded", m + k1 + 1, std::nullopt, {}};

    std::vector<Label> plain_in_path_order;
    for (VertexId v : path) {
        if (classes[v] != VertexClass::Heavy) continue;
        bool loaded = false;
        for (VertexId w : adj[v]) loaded |= classes[w] == VertexClass::NonPathLeaf;
        if (!loaded) plain_in_path_order.push_back(rep.weights[v]);
    }
    for (VertexId v = 0; v < n; ++v) {
        switch (classes[v]) {
            case VertexClass::Light: light.weights.push_back(rep.weights[v]); break;
            case VertexClass::PathEndLeaf:
            case VertexClass::NonPathLeaf: degree_one.weights.push_back(rep.weights[v]); break;
            case VertexClass::Heavy: {
                bool loaded = false;
                for (VertexId w : adj[v]) loaded |= classes[w] == VertexClass::NonPathLeaf;
                (loaded ? heavy_loaded : heavy_plain).weights.push_back(rep.weights[v]);
                break;
            }
        }
    }
    for (std::size_t i = 1; i < plain_in_path_order.size(); ++i) {
        if (plain_in_path_order[i] >= plain_in_path_order[i - 1]) {
            rep.violations.push_back("heavy_plain_order");
            break;
        }
    }

    const Label kNone = -1;
    Label previous_max = kNone;
    bool overlap = false;
    for (detail::Bucket* b : {&light, &degree_one, &heavy_plain, &heavy_loaded}) {
        if (b->weights.empty()) continue;
        const auto [lo, hi] = std::minmax_element(b->weights.begin(), b->weights.end());
        rep.class_ranges[b->name] = {*lo, *hi, b->weights.size()};
        if (*lo < b->lo || (b->hi && *hi > *b->hi)) rep.violations.push_back(b->name + "_range");
        if (!all_distinct(b->weights)) rep.violations.push_back(b->name + "_duplicate");
        if (previous_max != kNone && *lo <= previous_max) overlap = true;
        previous_max = *hi;
    }
    if (overlap) rep.violations.push_back("class_overlap");
    return rep;
}

inline VerificationReport check_weight_classes(const OrientedLabeling& ol,
                                               const ConstructionTrace& trace) {
    return check_weight_classes(ol, std::span<const VertexClass>(trace.classes));
}

struct ClaimResult {
    std::string id;
    bool holds = false;
    std::string detail;
};

// Evaluates the three counting claims on one construction trace:
//   claim1         k1 + k2 = m
//   claim2         every light vertex has path weight in {k2, k2+1}
//   claim2_parity  ... and it is k2+1 exactly at even path positions
//   claim3         n_l <= k1 - 1
inline std::vector<ClaimResult> check_claims(const Caterpillar& c, const ConstructionTrace& trace) {
    const Label m = static_cast<Label>(c.edge_count());
    const Label r = static_cast<Label>(c.leaf_count());
    const LabelPartition& p = trace.partition;
    const PathDecomposition& d = trace.decomposition;
    std::vector<ClaimResult> out;

    {
        const bool formula = p.m == m && p.k1 == (m - r + 2) / 2 && p.k2 == (m + r + 1) / 2 - 1;
        out.push_back({"claim1", formula && p.k1 + p.k2 == m,
                       std::to_string(p.k1) + "+" + std::to_string(p.k2) + " vs m=" + std::to_string(m)});
    }

    std::vector<Label> path_sum(d.position.size(), 0);
    for (std::size_t i = 0; i < d.k && i < trace.path_labels.size(); ++i) {
        const bool fwd = trace.path_arc_directions.at(i) == Direction::Forward;
        const VertexId tail = fwd ? d.path[i] : d.path[i + 1];
        const VertexId head = fwd ? d.path[i + 1] : d.path[i];
        path_sum[head] += trace.path_labels[i];
        path_sum[tail] -= trace.path_labels[i];
    }

    bool bounds = true;
    bool parity = true;
    std::size_t n_l = 0;
    std::string first_bad;
    for (std::size_t i = 0; i < d.path.size(); ++i) {
        const VertexId v = d.path[i];
        if (trace.classes.at(v) != VertexClass::Light) continue;
        ++n_l;
        const Label w = path_sum[v] < 0 ? -path_sum[v] : path_sum[v];
        if (w < p.k2 || w > p.k2 + 1) {
            bounds = false;
            if (first_bad.empty()) first_bad = "vertex " + std::to_string(v) + " w_P=" + std::to_string(w);
        }
        if ((w == p.k2 + 1) != (i % 2 == 0)) parity = false;
    }
    out.push_back({"claim2", bounds, first_bad});
    out.push_back({"claim2_parity", parity, ""});
    out.push_back({"claim3", static_cast<Label>(n_l) <= p.k1 - 1,
                   "n_l=" + std::to_string(n_l) + " k1=" + std::to_string(p.k1)});
    return out;
}

}  // namespace antimagic

#endif  // ANTIMAGIC_VERIFICATION_HPP
