#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "antimagic/generators.hpp"
#include "test_support.hpp"

using namespace antimagic;

namespace {

using Seq = std::vector<std::size_t>;

std::vector<Seq> enumerated(std::size_t max_n) {
    std::vector<Seq> out;
    for_each_caterpillar(max_n, [&](const Caterpillar& c) { out.push_back(c.leaf_counts()); });
    return out;
}

Seq canonical_form(Seq s) {
    Seq r(s.rbegin(), s.rend());
    return std::min(s, r);
}

// Number of caterpillars on exactly n >= 3 vertices, up to isomorphism.
std::size_t caterpillars_of_order(std::size_t n) {
    if (n == 3) return 1;
    return (std::size_t{1} << (n - 4)) + (std::size_t{1} << ((n - 4) / 2));
}

}  // namespace

TEST(Enumerate, SmallestOrders) {
    EXPECT_EQ(enumerated(3), (std::vector<Seq>{{2}}));
    EXPECT_EQ(enumerated(4), (std::vector<Seq>{{1, 1}, {2}, {3}}));
}

TEST(Enumerate, RejectsTinyBound) {
    EXPECT_THROW(enumerated(2), input_error);
    EXPECT_THROW(enumerate_caterpillars(0), input_error);
}

TEST(Enumerate, SortedAndReversalFree) {
    auto seqs = enumerated(11);
    EXPECT_TRUE(std::is_sorted(seqs.begin(), seqs.end()));
    std::set<Seq> forms;
    for (const auto& s : seqs) {
        EXPECT_EQ(canonical_form(s), s);
        forms.insert(canonical_form(s));
    }
    EXPECT_EQ(forms.size(), seqs.size());
}

TEST(Enumerate, CountsMatchClosedForm) {
    std::vector<std::size_t> per_order(13, 0);
    for_each_caterpillar(12, [&](const Caterpillar& c) { ++per_order[c.order()]; });
    std::size_t total = 0;
    for (std::size_t n = 3; n <= 12; ++n) {
        EXPECT_EQ(per_order[n], caterpillars_of_order(n)) << "n=" << n;
        total += per_order[n];
    }
    EXPECT_EQ(total, 558u);
    EXPECT_EQ(enumerate_caterpillars(9).size(), 78u);
    EXPECT_EQ(enumerate_caterpillars(7).size(), 22u);
}

TEST(Enumerate, MatchesFreeTreeFilter) {
    // Grow every free tree up to order 10, keep the caterpillars, and compare
    // their canonical leaf-count sequences with the enumerator's output.
    std::set<Seq> expected;
    const auto trees = reference::all_free_trees(10);
    for (std::size_t n = 3; n < trees.size(); ++n)
        for (const auto& adj : trees[n])
            if (auto c = is_caterpillar(reference::to_tree(adj))) expected.insert(canonical_form(c->leaf_counts()));
    auto seqs = enumerated(10);
    EXPECT_EQ(std::set<Seq>(seqs.begin(), seqs.end()), expected);
}

TEST(RandomCaterpillar, DeterministicPerSeed) {
    GeneratorConfig cfg;
    cfg.seed = 42;
    cfg.spine_min = 2;
    cfg.spine_max = 30;
    cfg.leaf_min = 0;
    cfg.leaf_max = 50;
    EXPECT_EQ(random_caterpillar(cfg).leaf_counts(), random_caterpillar(cfg).leaf_counts());
    std::set<Seq> seen;
    for (std::uint64_t s = 0; s < 20; ++s) {
        cfg.seed = s;
        seen.insert(random_caterpillar(cfg).leaf_counts());
    }
    EXPECT_GT(seen.size(), 1u);
}

TEST(RandomCaterpillar, FixedShape) {
    GeneratorConfig cfg;
    cfg.leaf_min = cfg.leaf_max = 5;
    EXPECT_EQ(random_caterpillar(cfg).leaf_counts(), (Seq{5}));
    cfg.spine_min = cfg.spine_max = 4;
    cfg.leaf_min = cfg.leaf_max = 0;
    EXPECT_EQ(random_caterpillar(cfg).leaf_counts(), (Seq{1, 0, 0, 1}));
}

TEST(RandomCaterpillar, RejectsBadConfig) {
    GeneratorConfig cfg;
    cfg.spine_min = 0;
    EXPECT_THROW(random_caterpillar(cfg), input_error);
    cfg.spine_min = 3;
    cfg.spine_max = 2;
    EXPECT_THROW(random_caterpillar(cfg), input_error);
    cfg.spine_max = 3;
    cfg.leaf_min = 4;
    cfg.leaf_max = 1;
    EXPECT_THROW(random_caterpillar(cfg), input_error);
    EXPECT_THROW(RandomCaterpillarStream(0, 1), input_error);
}

TEST(RandomStream, TenThousandInstancesWithinBound) {
    RandomCaterpillarStream stream(7, 1000);
    std::size_t max_seen = 0;
    for (int i = 0; i < 10000; ++i) {
        Caterpillar c = stream.next();
        ASSERT_LE(c.edge_count(), 1000u);
        ASSERT_GE(c.edge_count(), 2u);
        max_seen = std::max(max_seen, c.edge_count());
        if (i % 100 == 0) {
            auto back = is_caterpillar(c.tree());
            ASSERT_TRUE(back.has_value());
            EXPECT_EQ(back->leaf_counts(), c.leaf_counts());
            EXPECT_EQ(format_caterpillar(parse_caterpillar(format_caterpillar(c))), format_caterpillar(c));
        }
    }
    EXPECT_GT(max_seen, 500u);
}

TEST(RandomStream, SameSeedSameSequence) {
    RandomCaterpillarStream a(3, 50), b(3, 50);
    for (int i = 0; i < 200; ++i) ASSERT_EQ(a.next_leaf_counts(), b.next_leaf_counts());
}

TEST(RandomStream, TightBound) {
    RandomCaterpillarStream stream(1, 2);
    for (int i = 0; i < 20; ++i) EXPECT_EQ(stream.next_leaf_counts(), (Seq{2}));
}
