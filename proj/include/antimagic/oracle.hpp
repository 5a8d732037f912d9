#ifndef ANTIMAGIC_ORACLE_HPP
#define ANTIMAGIC_ORACLE_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "antimagic/construction.hpp"
#include "antimagic/errors.hpp"
#include "antimagic/graph_core.hpp"

namespace antimagic {

// Brute force over all 2^m orientations and m! labelings. Deliberately dumb:
// no pruning, no symmetry reduction, its own antimagic predicate.
//
// Orientation bitmask: bit e clear means edges()[e] is the arc u -> v (u < v),
// bit e set means v -> u. Orientations are visited by ascending mask, labelings
// (label of edge e = perm[e]) in lexicographic permutation order.

inline constexpr std::size_t kDefaultOracleCap = 8;
inline constexpr const char* kOracleCapEnv = "ANTIMAGIC_ORACLE_CAP";

inline std::size_t oracle_cap_from_env(std::size_t fallback = kDefaultOracleCap) {
    const char* raw = std::getenv(kOracleCapEnv);
    if (!raw || !*raw) return fallback;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(raw, &end, 10);
    if (*end != '\0') throw input_error(std::string(kOracleCapEnv) + " is not an integer: " + raw);
    return static_cast<std::size_t>(v);
}

struct OracleConfig {
    std::size_t cap = kDefaultOracleCap;
    // Count every antimagic pair instead of stopping at the first witness.
    std::optional<bool> count_all;  // unset: full count only for m <= 6
    unsigned threads = 1;

    bool full_count(std::size_t m) const { return count_all.value_or(m <= 6); }
};

struct OracleResult {
    std::size_t m = 0;
    std::uint64_t orientations_with_solution = 0;
    std::uint64_t total_antimagic_pairs = 0;
    std::uint64_t orientations_enumerated = 0;
    std::uint64_t labelings_per_orientation = 0;  // m! when complete
    bool complete = false;                        // false after an early exit
    std::optional<OrientedLabeling> witness;
};

// Oracle-side antimagic predicate, independent of verification: sums are
// accumulated per edge index and distinctness uses a stamped presence table.
class OracleChecker {
public:
    explicit OracleChecker(const Tree& t) : tree_(t), sums_(t.order(), 0) {
        const Label m = static_cast<Label>(t.size());
        offset_ = m * (m + 1) / 2;
        stamp_.assign(static_cast<std::size_t>(2 * offset_ + 1), 0);
    }

    bool accepts(std::uint64_t mask, std::span<const Label> labels_by_edge) {
        std::fill(sums_.begin(), sums_.end(), 0);
        const auto& edges = tree_.edges();
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const bool reversed = (mask >> e) & 1u;
            const VertexId tail = reversed ? edges[e].v : edges[e].u;
            const VertexId head = reversed ? edges[e].u : edges[e].v;
            sums_[head] += labels_by_edge[e];
            sums_[tail] -= labels_by_edge[e];
        }
        if (++generation_ == 0) {
            std::fill(stamp_.begin(), stamp_.end(), 0);
            generation_ = 1;
        }
        for (Label s : sums_) {
            auto& slot = stamp_[static_cast<std::size_t>(s + offset_)];
            if (slot == generation_) return false;
            slot = generation_;
        }
        return true;
    }

private:
    const Tree& tree_;
    std::vector<Label> sums_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t generation_ = 0;
    Label offset_ = 0;
};

inline OrientedLabeling to_oriented_labeling(const Tree& t, std::uint64_t mask,
                                             std::span<const Label> labels_by_edge) {
    OrientedLabeling ol;
    ol.n = t.order();
    const auto& edges = t.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const bool reversed = (mask >> e) & 1u;
        ol.arcs.push_back({reversed ? edges[e].v : edges[e].u,
                           reversed ? edges[e].u : edges[e].v, labels_by_edge[e]});
    }
    return ol;
}

// Inverse of to_oriented_labeling; nullopt when ol is not an orientation of t.
inline std::optional<std::pair<std::uint64_t, std::vector<Label>>> to_mask_and_labels(
    const Tree& t, const OrientedLabeling& ol) {
    if (!is_orientation_of(ol, t) || t.size() > 63) return std::nullopt;
    std::uint64_t mask = 0;
    std::vector<Label> labels(t.size(), 0);
    for (const Arc& a : ol.arcs) {
        const std::size_t e = t.edge_index(a.tail, a.head);
        if (a.tail > a.head) mask |= std::uint64_t{1} << e;
        labels[e] = a.label;
    }
    return std::make_pair(mask, std::move(labels));
}

// True when ol orients t with a bijective labeling the oracle predicate accepts.
inline bool oracle_accepts(const Tree& t, const OrientedLabeling& ol) {
    auto encoded = to_mask_and_labels(t, ol);
    if (!encoded) return false;
    std::vector<bool> seen(t.size() + 1, false);
    for (Label x : encoded->second) {
        if (x < 1 || static_cast<std::size_t>(x) > t.size() || seen[static_cast<std::size_t>(x)])
            return false;
        seen[static_cast<std::size_t>(x)] = true;
    }
    OracleChecker checker(t);
    return checker.accepts(encoded->first, encoded->second);
}

inline std::uint64_t factorial(std::size_t m) {
    std::uint64_t f = 1;
    for (std::size_t i = 2; i <= m; ++i) f *= i;
    return f;
}

namespace detail {

struct MaskRangeResult {
    std::uint64_t orientations_with_solution = 0;
    std::uint64_t total_pairs = 0;
    std::uint64_t orientations = 0;
    std::uint64_t permutations_last = 0;
    bool permutation_count_ok = true;
    std::optional<std::pair<std::uint64_t, std::vector<Label>>> first;
};

// Masks start, start+stride, ... below limit.
inline MaskRangeResult search_masks(const Tree& t, std::uint64_t start, std::uint64_t stride,
                                    std::uint64_t limit, bool full) {
    MaskRangeResult res;
    const std::size_t m = t.size();
    const std::uint64_t expected = factorial(m);
    OracleChecker checker(t);
    std::vector<Label> perm(m);
    for (std::uint64_t mask = start; mask < limit; mask += stride) {
        ++res.orientations;
        std::iota(perm.begin(), perm.end(), Label{1});
        std::uint64_t hits = 0;
        std::uint64_t visited = 0;
        do {
            ++visited;
            if (checker.accepts(mask, perm)) {
                ++hits;
                if (!res.first) res.first = std::make_pair(mask, perm);
                if (!full) break;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (full && visited != expected) res.permutation_count_ok = false;
        res.permutations_last = visited;
        res.total_pairs += hits;
        if (hits) ++res.orientations_with_solution;
        if (!full && res.first) break;
    }
    return res;
}

}  // namespace detail

inline OracleResult exhaustive_search(const Tree& t, const OracleConfig& cfg = {}) {
    const std::size_t m = t.size();
    if (m > cfg.cap)
        throw resource_refusal("oracle refuses m=" + std::to_string(m) + " above cap " +
                               std::to_string(cfg.cap));
    if (m > 20) throw resource_refusal("oracle cannot enumerate m=" + std::to_string(m));

    OracleResult out;
    out.m = m;
    const bool full = cfg.full_count(m);
    const std::uint64_t limit = std::uint64_t{1} << m;

    std::vector<detail::MaskRangeResult> parts;
    const unsigned workers = full ? std::max(1u, cfg.threads) : 1u;
    if (workers == 1) {
        parts.push_back(detail::search_masks(t, 0, 1, limit, full));
    } else {
        parts.resize(workers);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] { parts[w] = detail::search_masks(t, w, workers, limit, true); });
        for (auto& th : pool) th.join();
    }

    std::optional<std::uint64_t> witness_mask;
    for (const auto& p : parts) {
        out.orientations_with_solution += p.orientations_with_solution;
        out.total_antimagic_pairs += p.total_pairs;
        out.orientations_enumerated += p.orientations;
        if (!p.permutation_count_ok)
            throw invariant_violation("oracle permutation enumeration did not cover m! labelings");
        if (p.first && (!witness_mask || p.first->first < *witness_mask)) {
            witness_mask = p.first->first;
            out.witness = to_oriented_labeling(t, p.first->first, p.first->second);
        }
    }
    out.complete = full;
    if (full) {
        if (out.orientations_enumerated != limit)
            throw invariant_violation("oracle orientation enumeration did not cover 2^m masks");
        out.labelings_per_orientation = factorial(m);
    }
    return out;
}

// Runs the construction and checks its output against the oracle: the arcs
// must orient c, the oracle predicate must accept them, and the oracle must
// independently find that an antimagic orientation exists.
inline bool confirm_construction(const Caterpillar& c, std::uint64_t seed,
                                 const OracleConfig& cfg = {}) {
    if (c.edge_count() > cfg.cap)
        throw resource_refusal("oracle refuses m=" + std::to_string(c.edge_count()) +
                               " above cap " + std::to_string(cfg.cap));
    const Construction built = construct(c, seed);
    if (!oracle_accepts(c.tree(), built.labeling)) return false;
    OracleConfig quick = cfg;
    quick.count_all = false;
    return exhaustive_search(c.tree(), quick).witness.has_value();
}

}  // namespace antimagic

#endif  // ANTIMAGIC_ORACLE_HPP
