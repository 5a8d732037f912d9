#ifndef ANTIMAGIC_GRAPH_CORE_HPP
#define ANTIMAGIC_GRAPH_CORE_HPP

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "antimagic/errors.hpp"

namespace antimagic {

using VertexId = std::uint32_t;
using Label = std::int64_t;

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// Unordered vertex pair, normalized so that u < v.
struct Edge {
    VertexId u = 0;
    VertexId v = 0;

    Edge() = default;
    Edge(VertexId a, VertexId b) : u(std::min(a, b)), v(std::max(a, b)) {}

    VertexId other(VertexId x) const { return x == u ? v : u; }
    bool contains(VertexId x) const { return x == u || x == v; }

    friend auto operator<=>(const Edge&, const Edge&) = default;
    friend bool operator==(const Edge&, const Edge&) = default;
};

// Undirected tree on vertices [0, n). Neighbor lists are sorted ascending and
// the edge list is sorted lexicographically; every iteration order in the
// library derives from these.
class Tree {
public:
    Tree(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
        if (n_ == 0) throw input_error("tree must have at least one vertex");
        if (n_ > std::numeric_limits<VertexId>::max())
            throw input_error("tree order exceeds vertex id range");
        if (edges_.size() != n_ - 1)
            throw input_error("tree on " + std::to_string(n_) + " vertices needs " +
                              std::to_string(n_ - 1) + " edges, got " +
                              std::to_string(edges_.size()));
        std::sort(edges_.begin(), edges_.end());
        adjacency_.assign(n_, {});
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            const Edge& e = edges_[i];
            if (e.v >= n_) throw input_error("edge endpoint " + std::to_string(e.v) + " out of range");
            if (e.u == e.v) throw input_error("self-loop at vertex " + std::to_string(e.u));
            if (i > 0 && edges_[i - 1] == e)
                throw input_error("parallel edge {" + std::to_string(e.u) + "," +
                                  std::to_string(e.v) + "}");
            adjacency_[e.u].push_back(e.v);
            adjacency_[e.v].push_back(e.u);
        }
        for (auto& list : adjacency_) std::sort(list.begin(), list.end());

        // n-1 edges plus connectivity makes it a tree.
        std::vector<bool> seen(n_, false);
        std::vector<VertexId> stack{0};
        seen[0] = true;
        std::size_t reached = 1;
        while (!stack.empty()) {
            VertexId x = stack.back();
            stack.pop_back();
            for (VertexId y : adjacency_[x]) {
                if (!seen[y]) {
                    seen[y] = true;
                    ++reached;
                    stack.push_back(y);
                }
            }
        }
        if (reached != n_) throw input_error("graph is not connected");
    }

    std::size_t order() const { return n_; }
    std::size_t size() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }

    std::span<const VertexId> neighbors(VertexId v) const {
        check_vertex(v);
        return adjacency_[v];
    }

    bool adjacent(VertexId a, VertexId b) const {
        return edge_index(a, b) != npos;
    }

    // Position of {a,b} in edges(), or npos.
    std::size_t edge_index(VertexId a, VertexId b) const {
        if (a >= n_ || b >= n_ || a == b) return npos;
        Edge e(a, b);
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
        if (it == edges_.end() || *it != e) return npos;
        return static_cast<std::size_t>(it - edges_.begin());
    }

    void check_vertex(VertexId v) const {
        if (v >= n_)
            throw input_error("vertex " + std::to_string(v) + " out of range [0," +
                              std::to_string(n_) + ")");
    }

private:
    std::size_t n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<VertexId>> adjacency_;
};

inline std::size_t degree(const Tree& t, VertexId v) {
    return t.neighbors(v).size();
}

inline std::vector<VertexId> leaves(const Tree& t) {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < t.order(); ++v)
        if (degree(t, v) == 1) out.push_back(v);
    return out;
}

// A caterpillar in canonical form: spine vertices are numbered 0..s-1 in spine
// order, followed by the leaves grouped by spine vertex, left to right.
class Caterpillar {
public:
    const Tree& tree() const { return tree_; }
    const std::vector<VertexId>& spine() const { return spine_; }
    const std::vector<std::size_t>& leaf_counts() const { return leaf_counts_; }

    // Leaves attached to spine vertex i, ascending.
    const std::vector<VertexId>& leaves_at(std::size_t i) const { return leaves_at_.at(i); }

    std::size_t order() const { return tree_.order(); }
    std::size_t edge_count() const { return tree_.size(); }  // m
    std::size_t leaf_count() const { return leaf_count_; }   // r

    friend Caterpillar parse_caterpillar(std::span<const std::size_t> leaf_counts);

private:
    Caterpillar(Tree tree, std::vector<VertexId> spine, std::vector<std::size_t> counts,
                std::vector<std::vector<VertexId>> leaves_at, std::size_t r)
        : tree_(std::move(tree)),
          spine_(std::move(spine)),
          leaf_counts_(std::move(counts)),
          leaves_at_(std::move(leaves_at)),
          leaf_count_(r) {}

    Tree tree_;
    std::vector<VertexId> spine_;
    std::vector<std::size_t> leaf_counts_;
    std::vector<std::vector<VertexId>> leaves_at_;
    std::size_t leaf_count_;
};

inline Caterpillar parse_caterpillar(std::span<const std::size_t> leaf_counts) {
    const std::size_t s = leaf_counts.size();
    if (s == 0) throw input_error("empty leaf-count list");
    if (s == 1 && leaf_counts[0] < 2)
        throw input_error("non-canonical caterpillar: a single spine vertex needs at least 2 leaves");
    if (s >= 2 && (leaf_counts.front() == 0 || leaf_counts.back() == 0))
        throw input_error("non-canonical caterpillar: end spine vertices need at least 1 leaf");

    const std::size_t total_leaves =
        std::accumulate(leaf_counts.begin(), leaf_counts.end(), std::size_t{0});
    const std::size_t n = s + total_leaves;
    if (n > std::numeric_limits<VertexId>::max())
        throw input_error("caterpillar too large");

    std::vector<Edge> edges;
    edges.reserve(n - 1);
    std::vector<VertexId> spine(s);
    std::iota(spine.begin(), spine.end(), VertexId{0});
    for (std::size_t i = 0; i + 1 < s; ++i)
        edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(i + 1));

    std::vector<std::vector<VertexId>> leaves_at(s);
    VertexId next = static_cast<VertexId>(s);
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < leaf_counts[i]; ++j) {
            edges.emplace_back(static_cast<VertexId>(i), next);
            leaves_at[i].push_back(next);
            ++next;
        }
    }

    Tree tree(n, std::move(edges));
    // Every non-spine vertex is a leaf; with s >= 2 the ends carry leaves so
    // no spine vertex is one. With s == 1 the centre has degree >= 2.
    return Caterpillar(std::move(tree), std::move(spine),
                       std::vector<std::size_t>(leaf_counts.begin(), leaf_counts.end()),
                       std::move(leaves_at), total_leaves);
}

inline Caterpillar parse_caterpillar(std::initializer_list<std::size_t> leaf_counts) {
    return parse_caterpillar(std::span<const std::size_t>(leaf_counts.begin(), leaf_counts.size()));
}

// Canonical text form: whitespace-separated leaf counts, e.g. "1 0 1 0 1".
inline std::vector<std::size_t> parse_leaf_counts(std::string_view line) {
    std::vector<std::size_t> counts;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i >= line.size()) break;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        std::string_view token = line.substr(i, j - i);
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc() || ptr != token.data() + token.size())
            throw input_error("invalid leaf count '" + std::string(token) + "'");
        counts.push_back(value);
        i = j;
    }
    return counts;
}

inline Caterpillar parse_caterpillar(std::string_view line) {
    auto counts = parse_leaf_counts(line);
    return parse_caterpillar(std::span<const std::size_t>(counts));
}

inline std::string format_caterpillar(const Caterpillar& c) {
    std::string out;
    for (std::size_t i = 0; i < c.leaf_counts().size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(c.leaf_counts()[i]);
    }
    return out;
}

// Returns the canonical caterpillar for t when t is one. The spine is read
// starting from its end with the smaller vertex id, so canonical inputs
// round-trip to the same leaf counts.
inline std::optional<Caterpillar> is_caterpillar(const Tree& t) {
    const std::size_t n = t.order();
    if (n < 3) return std::nullopt;

    std::vector<bool> inner(n, false);
    std::vector<VertexId> inner_vertices;
    for (VertexId v = 0; v < n; ++v) {
        if (degree(t, v) >= 2) {
            inner[v] = true;
            inner_vertices.push_back(v);
        }
    }

    auto inner_degree = [&](VertexId v) {
        std::size_t d = 0;
        for (VertexId w : t.neighbors(v)) d += inner[w] ? 1 : 0;
        return d;
    };

    VertexId start = inner_vertices.front();
    if (inner_vertices.size() > 1) {
        bool found = false;
        for (VertexId v : inner_vertices) {
            std::size_t d = inner_degree(v);
            if (d > 2) return std::nullopt;
            if (d == 1 && !found) {
                start = v;
                found = true;
            }
        }
        if (!found) return std::nullopt;
    }

    std::vector<VertexId> spine{start};
    std::optional<VertexId> prev;
    VertexId cur = start;
    while (true) {
        std::optional<VertexId> step;
        for (VertexId w : t.neighbors(cur))
            if (inner[w] && w != prev) step = w;
        if (!step) break;
        prev = cur;
        cur = *step;
        spine.push_back(cur);
    }
    if (spine.size() != inner_vertices.size()) return std::nullopt;

    std::vector<std::size_t> counts;
    counts.reserve(spine.size());
    for (VertexId v : spine) counts.push_back(degree(t, v) - inner_degree(v));
    return parse_caterpillar(std::span<const std::size_t>(counts));
}

// Initial segment P = (u0, ..., uk) of a longest path, with k even.
struct PathDecomposition {
    std::vector<VertexId> path;              // u0 .. uk
    std::size_t k = 0;                       // number of path edges
    std::vector<Edge> path_edges;            // path_edges[i] = {u_i, u_{i+1}}
    std::vector<Edge> nonpath_edges;         // sorted
    std::optional<VertexId> trimmed_tail;    // u_{m-r+2} when m-r is odd
    std::vector<std::size_t> position;       // vertex -> path index, npos off the path

    bool on_path(VertexId v) const { return position.at(v) != npos; }
};

// The longest path runs leaf - whole spine - leaf and has m-r+2 edges. At
// each end the leaf with the smallest id is used. When m-r is odd the last
// edge is dropped so that k stays even.
inline PathDecomposition longest_path_decomposition(const Caterpillar& c) {
    const std::size_t m = c.edge_count();
    const std::size_t r = c.leaf_count();
    const std::size_t s = c.spine().size();

    std::vector<VertexId> full;
    full.reserve(s + 2);
    full.push_back(c.leaves_at(0).front());
    for (VertexId v : c.spine()) full.push_back(v);
    if (s == 1)
        full.push_back(c.leaves_at(0).at(1));
    else
        full.push_back(c.leaves_at(s - 1).front());

    if (full.size() - 1 != m - r + 2)
        throw invariant_violation("longest path length differs from m-r+2");

    PathDecomposition d;
    const bool odd = (m - r) % 2 == 1;
    d.k = odd ? m - r + 1 : m - r + 2;
    if (odd) d.trimmed_tail = full.back();
    d.path.assign(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(d.k + 1));

    d.position.assign(c.order(), npos);
    for (std::size_t i = 0; i < d.path.size(); ++i) d.position[d.path[i]] = i;
    for (std::size_t i = 0; i < d.k; ++i) d.path_edges.emplace_back(d.path[i], d.path[i + 1]);

    for (const Edge& e : c.tree().edges()) {
        bool on_path = d.on_path(e.u) && d.on_path(e.v) &&
                       (d.position[e.u] + 1 == d.position[e.v] ||
                        d.position[e.v] + 1 == d.position[e.u]);
        if (!on_path) d.nonpath_edges.push_back(e);
    }
    return d;
}

// Label set split [1,k1] / [k1+1,k2] / [k2+1,m].
struct LabelRange {
    Label first = 1;
    Label last = 0;

    bool empty() const { return last < first; }
    std::size_t size() const { return empty() ? 0 : static_cast<std::size_t>(last - first + 1); }
    bool contains(Label x) const { return x >= first && x <= last; }
    friend bool operator==(const LabelRange&, const LabelRange&) = default;
};

struct LabelPartition {
    Label m = 0;
    Label k1 = 0;
    Label k2 = 0;

    LabelRange l1() const { return {1, k1}; }
    LabelRange l2() const { return {k1 + 1, k2}; }
    LabelRange l3() const { return {k2 + 1, m}; }
};

struct Arc {
    VertexId tail = 0;
    VertexId head = 0;
    Label label = 0;

    friend bool operator==(const Arc&, const Arc&) = default;
};

// An orientation of a graph on n vertices together with arc labels.
struct OrientedLabeling {
    std::size_t n = 0;
    std::vector<Arc> arcs;
};

// True when the undirected pairs of ol.arcs are exactly the edges of t.
inline bool is_orientation_of(const OrientedLabeling& ol, const Tree& t) {
    if (ol.n != t.order() || ol.arcs.size() != t.size()) return false;
    std::vector<Edge> pairs;
    pairs.reserve(ol.arcs.size());
    for (const Arc& a : ol.arcs) pairs.emplace_back(a.tail, a.head);
    std::sort(pairs.begin(), pairs.end());
    return pairs == t.edges();
}

enum class VertexClass { Light, Heavy, PathEndLeaf, NonPathLeaf };

inline std::string_view to_string(VertexClass c) {
    switch (c) {
        case VertexClass::Light: return "light";
        case VertexClass::Heavy: return "heavy";
        case VertexClass::PathEndLeaf: return "path_end_leaf";
        case VertexClass::NonPathLeaf: return "leaf";
    }
    return "?";
}

inline std::optional<VertexClass> vertex_class_from_string(std::string_view s) {
    if (s == "light") return VertexClass::Light;
    if (s == "heavy") return VertexClass::Heavy;
    if (s == "path_end_leaf") return VertexClass::PathEndLeaf;
    if (s == "leaf") return VertexClass::NonPathLeaf;
    return std::nullopt;
}

}  // namespace antimagic

#endif  // ANTIMAGIC_GRAPH_CORE_HPP
