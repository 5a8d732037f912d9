#ifndef ANTIMAGIC_CONSTRUCTION_HPP
#define ANTIMAGIC_CONSTRUCTION_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "antimagic/errors.hpp"
#include "antimagic/graph_core.hpp"

namespace antimagic {

// Direction of path edge {u_i, u_{i+1}}: Forward is the arc u_i -> u_{i+1}.
enum class Direction { Forward, Backward };

struct HeavyOrderEntry {
    VertexId vertex = 0;
    Label partial_weight = 0;  // w' before the deferred edge is labeled
};

struct ConstructionTrace {
    LabelPartition partition;
    PathDecomposition decomposition;
    std::vector<VertexClass> classes;             // indexed by vertex
    std::vector<Label> path_labels;               // per path edge
    std::vector<Direction> path_arc_directions;   // per path edge
    std::vector<VertexId> light_order;            // u_{i_1}, ..., u_{i_{n_l}}
    std::map<Edge, Label> heavy_phase1_assignments;
    std::vector<HeavyOrderEntry> heavy_order;     // u_{j_1}, ..., u_{j_{n_h}}
};

struct Construction {
    OrientedLabeling labeling;
    ConstructionTrace trace;
};

// Label sentinel for a non-path arc that has not been labeled yet.
inline constexpr Label kUnlabeled = 0;

inline LabelPartition compute_label_partition(std::size_t m, std::size_t r) {
    if (m < 2) throw input_error("label partition needs m >= 2, got " + std::to_string(m));
    if (r < 2 || r > m)
        throw input_error("label partition needs 2 <= r <= m, got r=" + std::to_string(r) +
                          " m=" + std::to_string(m));
    LabelPartition p;
    p.m = static_cast<Label>(m);
    // ceil((m-r+1)/2) and ceil((m+r)/2) - 1 with non-negative numerators.
    p.k1 = static_cast<Label>((m - r + 2) / 2);
    p.k2 = static_cast<Label>((m + r + 1) / 2) - 1;
    return p;
}

// Alternates L1 (descending from k1) and L3 (descending from m) along P.
inline std::vector<Label> label_path_edges(const PathDecomposition& d, const LabelPartition& p) {
    if (d.k != p.l1().size() + p.l3().size())
        throw invariant_violation("path length " + std::to_string(d.k) +
                                  " does not match |L1|+|L3|");
    std::vector<Label> labels(d.k);
    for (std::size_t i = 0; i < d.k; ++i) {
        const Label idx = static_cast<Label>(i);
        labels[i] = (i % 2 == 0) ? p.k1 - idx / 2 : p.m - (idx - 1) / 2;
    }
    return labels;
}

namespace detail {

// Unsigned sum of path-edge labels at path position i.
inline Label plain_path_sum(const PathDecomposition& d, std::span<const Label> path_labels,
                            std::size_t i) {
    Label s = 0;
    if (i > 0) s += path_labels[i - 1];
    if (i < d.k) s += path_labels[i];
    return s;
}

inline std::size_t offpath_neighbors(const Tree& t, const PathDecomposition& d, VertexId v) {
    std::size_t count = 0;
    for (VertexId w : t.neighbors(v)) count += d.on_path(w) ? 0 : 1;
    return count;
}

// Path endpoint of a non-path edge.
inline VertexId anchor_of(const PathDecomposition& d, const Edge& e) {
    const bool u_on = d.on_path(e.u);
    const bool v_on = d.on_path(e.v);
    if (u_on == v_on) {
        // Both endpoints on P can only happen for a chord, which a tree cannot have.
        throw invariant_violation("non-path edge {" + std::to_string(e.u) + "," +
                                  std::to_string(e.v) + "} is not incident with exactly one path vertex");
    }
    return u_on ? e.u : e.v;
}

inline Label signed_contribution(const Arc& a, VertexId v) {
    if (a.head == v) return a.label;
    if (a.tail == v) return -a.label;
    return 0;
}

}  // namespace detail

inline std::vector<VertexClass> classify_vertices(const Caterpillar& c, const PathDecomposition& d,
                                                  std::span<const Label> path_labels) {
    const Tree& t = c.tree();
    const Label m = static_cast<Label>(c.edge_count());
    std::vector<VertexClass> classes(t.order(), VertexClass::NonPathLeaf);
    for (std::size_t i = 0; i < d.path.size(); ++i) {
        const VertexId v = d.path[i];
        if (degree(t, v) == 1) {
            classes[v] = VertexClass::PathEndLeaf;
            continue;
        }
        const bool light = detail::plain_path_sum(d, path_labels, i) < m &&
                           detail::offpath_neighbors(t, d, v) == 1;
        classes[v] = light ? VertexClass::Light : VertexClass::Heavy;
    }
    return classes;
}

inline std::vector<Direction> orient_path(const PathDecomposition& d,
                                          std::span<const VertexClass> classes) {
    std::vector<Direction> dirs;
    dirs.reserve(d.k);
    if (d.k == 0) return dirs;
    dirs.push_back(Direction::Forward);
    for (std::size_t i = 1; i < d.k; ++i) {
        const VertexClass c = classes[d.path[i]];
        if (c == VertexClass::Light) {
            dirs.push_back(dirs.back());
        } else if (c == VertexClass::Heavy) {
            dirs.push_back(dirs.back() == Direction::Forward ? Direction::Backward : Direction::Forward);
        } else {
            throw invariant_violation("interior path vertex " + std::to_string(d.path[i]) +
                                      " is neither light nor heavy");
        }
    }
    return dirs;
}

inline std::vector<Arc> path_arcs(const PathDecomposition& d, std::span<const Direction> dirs,
                                  std::span<const Label> path_labels) {
    std::vector<Arc> arcs;
    arcs.reserve(d.k);
    for (std::size_t i = 0; i < d.k; ++i) {
        if (dirs[i] == Direction::Forward)
            arcs.push_back({d.path[i], d.path[i + 1], path_labels[i]});
        else
            arcs.push_back({d.path[i + 1], d.path[i], path_labels[i]});
    }
    return arcs;
}

// Oriented sum over the path arcs only, indexed by vertex (zero off the path).
inline std::vector<Label> path_oriented_sums(const PathDecomposition& d,
                                             std::span<const Direction> dirs,
                                             std::span<const Label> path_labels) {
    std::vector<Label> sums(d.position.size(), 0);
    for (const Arc& a : path_arcs(d, dirs, path_labels)) {
        sums[a.head] += a.label;
        sums[a.tail] -= a.label;
    }
    return sums;
}

// Non-path arcs aligned with d.nonpath_edges, all unlabeled. Light edges are
// oriented to shrink the weight of their path vertex, heavy edges to grow it.
inline std::vector<Arc> orient_nonpath_edges(const Caterpillar& c, const PathDecomposition& d,
                                             std::span<const VertexClass> classes,
                                             std::span<const Direction> dirs,
                                             std::span<const Label> path_labels) {
    if (d.position.size() != c.order())
        throw invariant_violation("path decomposition does not belong to this caterpillar");
    const auto sums = path_oriented_sums(d, dirs, path_labels);
    std::vector<Arc> arcs;
    arcs.reserve(d.nonpath_edges.size());
    for (const Edge& e : d.nonpath_edges) {
        const VertexId anchor = detail::anchor_of(d, e);
        const VertexId leaf = e.other(anchor);
        const Label s = sums[anchor];
        if (s == 0)
            throw invariant_violation("zero path sum at vertex " + std::to_string(anchor) +
                                      " incident with a non-path edge");
        bool leaves_anchor = false;
        switch (classes[anchor]) {
            case VertexClass::Light: leaves_anchor = s > 0; break;
            case VertexClass::Heavy: leaves_anchor = s < 0; break;
            default:
                throw invariant_violation("non-path edge at vertex " + std::to_string(anchor) +
                                          " which is neither light nor heavy");
        }
        if (leaves_anchor)
            arcs.push_back({anchor, leaf, kUnlabeled});
        else
            arcs.push_back({leaf, anchor, kUnlabeled});
    }
    return arcs;
}

struct LightLabeling {
    std::vector<Arc> nonpath_arcs;
    std::vector<VertexId> order;
};

// Light vertices sorted by path weight (ties: path index); the t-th one
// (1-based) gets label k2 - t + 1 on its single non-path edge.
inline LightLabeling label_light_edges(const PathDecomposition& d,
                                       std::span<const VertexClass> classes,
                                       std::span<const Label> path_sums,
                                       const LabelPartition& p,
                                       std::vector<Arc> nonpath_arcs) {
    std::vector<std::size_t> arc_at(d.position.size(), npos);
    for (std::size_t j = 0; j < nonpath_arcs.size(); ++j) {
        const VertexId anchor = detail::anchor_of(d, d.nonpath_edges[j]);
        if (classes[anchor] == VertexClass::Light) {
            if (arc_at[anchor] != npos)
                throw invariant_violation("light vertex " + std::to_string(anchor) +
                                          " has more than one non-path edge");
            arc_at[anchor] = j;
        }
    }

    std::vector<VertexId> order;
    for (VertexId v : d.path)
        if (classes[v] == VertexClass::Light) order.push_back(v);
    std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
        const Label wa = path_sums[a] < 0 ? -path_sums[a] : path_sums[a];
        const Label wb = path_sums[b] < 0 ? -path_sums[b] : path_sums[b];
        if (wa != wb) return wa < wb;
        return d.position[a] < d.position[b];
    });

    for (std::size_t t = 0; t < order.size(); ++t) {
        const std::size_t j = arc_at[order[t]];
        if (j == npos)
            throw invariant_violation("light vertex " + std::to_string(order[t]) + " has no non-path edge");
        nonpath_arcs[j].label = p.k2 - static_cast<Label>(t);
    }
    return {std::move(nonpath_arcs), std::move(order)};
}

// Chooses the label for one phase-1 heavy edge out of the current unused pool
// (ascending). Must return a member of the pool.
using Phase1Picker =
    std::function<Label(VertexId anchor, const Edge& edge, std::span<const Label> pool)>;

inline Phase1Picker seeded_picker(std::uint64_t seed) {
    auto engine = std::make_shared<std::mt19937_64>(seed);
    return [engine](VertexId, const Edge&, std::span<const Label> pool) {
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        return pool[pick(*engine)];
    };
}

struct HeavyLabeling {
    std::vector<Arc> nonpath_arcs;
    std::map<Edge, Label> phase1;
    std::vector<HeavyOrderEntry> order;
};

// Phase 1: at every heavy vertex with two or more heavy edges, every heavy
// edge except the one to the largest leaf id takes a label chosen by `pick`.
// Phase 2: heavy vertices with one unlabeled edge, sorted by partial weight
// (ties: path index), take the remaining labels in increasing order.
inline HeavyLabeling label_heavy_edges(const PathDecomposition& d,
                                       std::span<const VertexClass> classes,
                                       std::span<const Label> path_sums,
                                       const LabelPartition& p,
                                       LightLabeling light,
                                       const Phase1Picker& pick) {
    std::vector<Arc> arcs = std::move(light.nonpath_arcs);
    const Label n_l = static_cast<Label>(light.order.size());

    std::vector<bool> used(static_cast<std::size_t>(p.m) + 1, false);
    for (const Arc& a : arcs)
        if (a.label != kUnlabeled) used.at(static_cast<std::size_t>(a.label)) = true;

    std::vector<Label> pool;
    for (Label x = p.k1 + 1; x <= p.k2; ++x)
        if (!used[static_cast<std::size_t>(x)]) pool.push_back(x);

    // Heavy edges grouped by path vertex, in leaf-id order.
    std::vector<std::vector<std::size_t>> heavy_at(d.position.size());
    std::size_t heavy_edges = 0;
    for (std::size_t j = 0; j < arcs.size(); ++j) {
        const VertexId anchor = detail::anchor_of(d, d.nonpath_edges[j]);
        if (classes[anchor] == VertexClass::Heavy) {
            heavy_at[anchor].push_back(j);
            ++heavy_edges;
        } else if (arcs[j].label == kUnlabeled) {
            throw invariant_violation("unlabeled non-path edge at non-heavy vertex " +
                                      std::to_string(anchor));
        }
    }
    const Label expected_last = p.k2 - n_l;
    bool pool_ok = pool.size() == heavy_edges &&
                   static_cast<Label>(pool.size()) == std::max<Label>(0, expected_last - p.k1);
    for (std::size_t i = 0; pool_ok && i < pool.size(); ++i)
        pool_ok = pool[i] == p.k1 + 1 + static_cast<Label>(i);
    if (!pool_ok)
        throw invariant_violation("unused label pool is not [k1+1, k2-n_l] or does not match the " +
                                  std::to_string(heavy_edges) + " heavy edges");

    HeavyLabeling out;
    std::vector<std::size_t> deferred(d.position.size(), npos);
    for (VertexId v : d.path) {
        auto& edges = heavy_at[v];
        if (edges.empty()) continue;
        std::sort(edges.begin(), edges.end(), [&](std::size_t a, std::size_t b) {
            return d.nonpath_edges[a].other(v) < d.nonpath_edges[b].other(v);
        });
        deferred[v] = edges.back();
        for (std::size_t idx = 0; idx + 1 < edges.size(); ++idx) {
            const std::size_t j = edges[idx];
            const Label chosen = pick(v, d.nonpath_edges[j], pool);
            auto it = std::find(pool.begin(), pool.end(), chosen);
            if (it == pool.end())
                throw invariant_violation("phase-1 label " + std::to_string(chosen) +
                                          " is not in the unused pool");
            pool.erase(it);
            arcs[j].label = chosen;
            out.phase1.emplace(d.nonpath_edges[j], chosen);
        }
    }

    for (VertexId v : d.path) {
        if (deferred[v] == npos) continue;
        Label partial = path_sums[v];
        for (std::size_t j : heavy_at[v])
            if (arcs[j].label != kUnlabeled) partial += detail::signed_contribution(arcs[j], v);
        out.order.push_back({v, partial < 0 ? -partial : partial});
    }
    std::stable_sort(out.order.begin(), out.order.end(),
                     [&](const HeavyOrderEntry& a, const HeavyOrderEntry& b) {
                         if (a.partial_weight != b.partial_weight)
                             return a.partial_weight < b.partial_weight;
                         return d.position[a.vertex] < d.position[b.vertex];
                     });
    if (pool.size() != out.order.size())
        throw invariant_violation("phase-2 pool size " + std::to_string(pool.size()) +
                                  " differs from deferred edge count " +
                                  std::to_string(out.order.size()));
    for (std::size_t t = 0; t < out.order.size(); ++t)
        arcs[deferred[out.order[t].vertex]].label = pool[t];

    out.nonpath_arcs = std::move(arcs);
    return out;
}

inline HeavyLabeling label_heavy_edges(const PathDecomposition& d,
                                       std::span<const VertexClass> classes,
                                       std::span<const Label> path_sums,
                                       const LabelPartition& p,
                                       LightLabeling light,
                                       std::uint64_t seed) {
    return label_heavy_edges(d, classes, path_sums, p, std::move(light), seeded_picker(seed));
}

inline Construction construct(const Caterpillar& c, const Phase1Picker& pick) {
    Construction out;
    ConstructionTrace& tr = out.trace;
    tr.partition = compute_label_partition(c.edge_count(), c.leaf_count());
    tr.decomposition = longest_path_decomposition(c);
    const PathDecomposition& d = tr.decomposition;
    if (d.nonpath_edges.size() != static_cast<std::size_t>(tr.partition.k2 - tr.partition.k1))
        throw invariant_violation("non-path edge count differs from |L2|");

    tr.path_labels = label_path_edges(d, tr.partition);
    tr.classes = classify_vertices(c, d, tr.path_labels);
    tr.path_arc_directions = orient_path(d, tr.classes);
    const auto sums = path_oriented_sums(d, tr.path_arc_directions, tr.path_labels);
    auto nonpath = orient_nonpath_edges(c, d, tr.classes, tr.path_arc_directions, tr.path_labels);
    auto light = label_light_edges(d, tr.classes, sums, tr.partition, std::move(nonpath));
    tr.light_order = light.order;
    auto heavy = label_heavy_edges(d, tr.classes, sums, tr.partition, std::move(light), pick);
    tr.heavy_phase1_assignments = std::move(heavy.phase1);
    tr.heavy_order = std::move(heavy.order);

    out.labeling.n = c.order();
    out.labeling.arcs = path_arcs(d, tr.path_arc_directions, tr.path_labels);
    for (const Arc& a : heavy.nonpath_arcs) {
        if (a.label == kUnlabeled) throw invariant_violation("non-path arc left unlabeled");
        out.labeling.arcs.push_back(a);
    }
    return out;
}

inline Construction construct(const Caterpillar& c, std::uint64_t seed = 0) {
    return construct(c, seeded_picker(seed));
}

}  // namespace antimagic

#endif  // ANTIMAGIC_CONSTRUCTION_HPP
