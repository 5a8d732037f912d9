#ifndef ANTIMAGIC_GENERATORS_HPP
#define ANTIMAGIC_GENERATORS_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "antimagic/errors.hpp"
#include "antimagic/graph_core.hpp"

namespace antimagic {

namespace detail {

inline bool canonical_counts(const std::vector<std::size_t>& seq) {
    if (seq.empty()) return false;
    if (seq.size() == 1) return seq[0] >= 2;
    return seq.front() >= 1 && seq.back() >= 1;
}

inline bool reversal_representative(const std::vector<std::size_t>& seq) {
    return !std::lexicographical_compare(seq.rbegin(), seq.rend(), seq.begin(), seq.end());
}

// Pre-order DFS over sequences with children in increasing value order, which
// visits sequences in lexicographic order. `room` is the vertex budget left.
inline void enumerate_sequences(std::vector<std::size_t>& seq, std::size_t room,
                                const std::function<void(const std::vector<std::size_t>&)>& emit) {
    if (canonical_counts(seq) && reversal_representative(seq)) emit(seq);
    if (room == 0) return;
    // Appending a spine vertex with c leaves costs 1 + c vertices.
    for (std::size_t c = 0; c + 1 <= room; ++c) {
        seq.push_back(c);
        enumerate_sequences(seq, room - 1 - c, emit);
        seq.pop_back();
    }
}

}  // namespace detail

// Every caterpillar on at most max_n vertices exactly once, up to reversal of
// the spine, in lexicographic order of leaf counts.
inline void for_each_caterpillar(std::size_t max_n, const std::function<void(const Caterpillar&)>& fn) {
    if (max_n < 3) throw input_error("enumeration needs max_n >= 3, got " + std::to_string(max_n));
    std::vector<std::size_t> seq;
    detail::enumerate_sequences(seq, max_n, [&](const std::vector<std::size_t>& s) {
        fn(parse_caterpillar(std::span<const std::size_t>(s)));
    });
}

inline std::vector<Caterpillar> enumerate_caterpillars(std::size_t max_n) {
    std::vector<Caterpillar> out;
    for_each_caterpillar(max_n, [&](const Caterpillar& c) { out.push_back(c); });
    return out;
}

struct GeneratorConfig {
    std::uint64_t seed = 0;
    std::size_t spine_min = 1;
    std::size_t spine_max = 1;
    std::size_t leaf_min = 2;   // leaf budget before end counts are bumped
    std::size_t leaf_max = 2;

    void validate() const {
        if (spine_min < 1) throw input_error("spine length must be at least 1");
        if (spine_min > spine_max) throw input_error("empty spine length range");
        if (leaf_min > leaf_max) throw input_error("empty leaf budget range");
    }
};

// Spine length uniform in range, leaf budget uniform in range and spread over
// the spine vertices uniformly at random; end counts are then bumped to the
// canonical minimum.
template <class Engine>
std::vector<std::size_t> random_leaf_counts(const GeneratorConfig& cfg, Engine& engine) {
    cfg.validate();
    std::uniform_int_distribution<std::size_t> spine_dist(cfg.spine_min, cfg.spine_max);
    std::uniform_int_distribution<std::size_t> budget_dist(cfg.leaf_min, cfg.leaf_max);
    const std::size_t s = spine_dist(engine);
    const std::size_t budget = budget_dist(engine);
    std::vector<std::size_t> counts(s, 0);
    std::uniform_int_distribution<std::size_t> slot(0, s - 1);
    for (std::size_t i = 0; i < budget; ++i) ++counts[slot(engine)];
    if (s == 1) {
        counts[0] = std::max<std::size_t>(counts[0], 2);
    } else {
        counts.front() = std::max<std::size_t>(counts.front(), 1);
        counts.back() = std::max<std::size_t>(counts.back(), 1);
    }
    return counts;
}

template <class Engine>
Caterpillar random_caterpillar(const GeneratorConfig& cfg, Engine& engine) {
    const auto counts = random_leaf_counts(cfg, engine);
    return parse_caterpillar(std::span<const std::size_t>(counts));
}

inline Caterpillar random_caterpillar(const GeneratorConfig& cfg) {
    std::mt19937_64 engine(cfg.seed);
    return random_caterpillar(cfg, engine);
}

// Seeded stream of caterpillars with m <= max_m. Each instance draws a spine
// length in [1, max_m-1] and a leaf budget leaving room for the end bump.
class RandomCaterpillarStream {
public:
    RandomCaterpillarStream(std::uint64_t seed, std::size_t max_m) : engine_(seed), max_m_(max_m) {
        if (max_m_ < 2) throw input_error("random caterpillars need max_m >= 2");
    }

    std::vector<std::size_t> next_leaf_counts() {
        std::uniform_int_distribution<std::size_t> spine_dist(1, max_m_ - 1);
        const std::size_t s = spine_dist(engine_);
        GeneratorConfig cfg;
        cfg.spine_min = cfg.spine_max = s;
        cfg.leaf_min = 0;
        cfg.leaf_max = max_m_ - s - 1;  // m = s-1 + leaves, bump adds at most 2
        return random_leaf_counts(cfg, engine_);
    }

    Caterpillar next() {
        const auto counts = next_leaf_counts();
        return parse_caterpillar(std::span<const std::size_t>(counts));
    }

private:
    std::mt19937_64 engine_;
    std::size_t max_m_;
};

}  // namespace antimagic

#endif  // ANTIMAGIC_GENERATORS_HPP
