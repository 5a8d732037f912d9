#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "antimagic/construction.hpp"
#include "antimagic/generators.hpp"
#include "antimagic/verification.hpp"
#include "test_support.hpp"

using namespace antimagic;

namespace {

std::vector<Label> weights_of(const VerificationReport& rep, const std::vector<VertexId>& vs) {
    std::vector<Label> out;
    for (VertexId v : vs) out.push_back(rep.weights.at(v));
    return out;
}

OrientedLabeling reversed(OrientedLabeling ol) {
    for (Arc& a : ol.arcs) std::swap(a.tail, a.head);
    return ol;
}

}  // namespace

TEST(OrientedSums, SmallCases) {
    auto built = construct(parse_caterpillar({2}), 0);
    auto sums = oriented_sums(built.labeling);
    const auto& path = built.trace.decomposition.path;
    EXPECT_EQ(sums[path[0]], -1);
    EXPECT_EQ(sums[path[1]], 3);
    EXPECT_EQ(sums[path[2]], -2);

    OrientedLabeling single{2, {{0, 1, 1}}};
    EXPECT_EQ(oriented_sums(single), (std::vector<Label>{-1, 1}));
}

TEST(OrientedSums, RejectsNonBijection) {
    OrientedLabeling ol{3, {{0, 1, 1}, {1, 2, 1}}};
    EXPECT_THROW(oriented_sums(ol), input_error);
    ol.arcs[1].label = 3;
    EXPECT_THROW(oriented_sums(ol), input_error);
    EXPECT_FALSE(labels_form_bijection(ol));
}

TEST(OrientedSums, TotalIsZeroAndMatchesNaive) {
    std::mt19937_64 rng(5);
    for_each_caterpillar(10, [&](const Caterpillar& c) {
        OrientedLabeling ol;
        ol.n = c.order();
        std::vector<Label> labels(c.edge_count());
        std::iota(labels.begin(), labels.end(), Label{1});
        std::shuffle(labels.begin(), labels.end(), rng);
        for (std::size_t e = 0; e < c.edge_count(); ++e) {
            const Edge& edge = c.tree().edges()[e];
            if (rng() & 1)
                ol.arcs.push_back({edge.u, edge.v, labels[e]});
            else
                ol.arcs.push_back({edge.v, edge.u, labels[e]});
        }
        auto sums = oriented_sums(ol);
        EXPECT_EQ(std::accumulate(sums.begin(), sums.end(), Label{0}), 0);
        EXPECT_EQ(sums, reference::naive_sums(ol));
        EXPECT_EQ(verify_antimagic(ol), reference::naive_distinct(sums));
        EXPECT_EQ(verify_antimagic(ol), verify_antimagic(reversed(ol)));
    });
}

TEST(VerifyAntimagic, Examples) {
    // P3 as 0-1-2 with a directed path: sums (-1, -1, 2).
    OrientedLabeling bad{3, {{0, 1, 1}, {1, 2, 2}}};
    EXPECT_EQ(oriented_sums(bad), (std::vector<Label>{-1, -1, 2}));
    EXPECT_FALSE(verify_antimagic(bad));

    EXPECT_TRUE(verify_antimagic(construct(parse_caterpillar({1, 0, 1, 0, 1}), 0).labeling));
    EXPECT_TRUE(verify_antimagic(construct(parse_caterpillar({1, 0, 0, 0, 2}), 0).labeling));
}

TEST(CheckWeightClasses, FiveEdgeExample) {
    auto built = construct(parse_caterpillar({1, 1, 1}), 0);
    auto rep = check_weight_classes(built.labeling, built.trace);
    EXPECT_TRUE(rep.passed()) << ::testing::PrintToString(rep.violations);
    EXPECT_EQ(rep.class_ranges.count("light"), 0u);
    EXPECT_EQ(rep.class_ranges.at("degree_one").min, 2);
    EXPECT_EQ(rep.class_ranges.at("degree_one").max, 4);
    EXPECT_EQ(rep.class_ranges.at("degree_one").count, 3u);
    const auto& p = built.trace.decomposition.path;
    EXPECT_EQ(weights_of(rep, {p[1], p[3]}), (std::vector<Label>{7, 5}));
    EXPECT_EQ(rep.class_ranges.at("heavy_plain").min, 5);
    EXPECT_EQ(rep.class_ranges.at("heavy_plain").max, 7);
    EXPECT_EQ(rep.weights[p[2]], 9);
    EXPECT_EQ(rep.class_ranges.at("heavy_loaded").min, 9);
}

TEST(CheckWeightClasses, LightVertexExample) {
    auto built = construct(parse_caterpillar({1, 0, 0, 0, 2}), 0);
    auto rep = check_weight_classes(built.labeling, built.trace);
    EXPECT_TRUE(rep.passed()) << ::testing::PrintToString(rep.violations);
    EXPECT_EQ(rep.class_ranges.at("light").min, 0);
    EXPECT_EQ(rep.class_ranges.at("light").max, 0);
    EXPECT_EQ(rep.class_ranges.at("degree_one").min, 3);
    EXPECT_EQ(rep.class_ranges.at("degree_one").max, 5);
    const auto& p = built.trace.decomposition.path;
    EXPECT_EQ(weights_of(rep, {p[1], p[2], p[3], p[4]}), (std::vector<Label>{10, 9, 8, 7}));
    EXPECT_EQ(rep.class_ranges.count("heavy_loaded"), 0u);
}

TEST(CheckWeightClasses, WorkedExampleLightWeight) {
    auto built = construct(parse_caterpillar({4, 0, 0, 2, 0, 1, 3}), 0);
    auto rep = check_weight_classes(built.labeling, built.trace);
    EXPECT_TRUE(rep.passed()) << ::testing::PrintToString(rep.violations);
    // Path weight of u6 is |1 - 14| = 13 (its arcs are co-directed), so the
    // final weight is 13 - 12 = 1, inside [0, k1-1] = [0, 3].
    EXPECT_EQ(rep.weights[built.trace.decomposition.path[6]], 1);
}

TEST(CheckWeightClasses, DetectsWrongClasses) {
    auto built = construct(parse_caterpillar({1, 0, 0, 0, 2}), 0);
    auto classes = built.trace.classes;
    const auto& p = built.trace.decomposition.path;

    // A heavy vertex declared light lands outside [0, k1-1].
    auto mislabeled = classes;
    mislabeled[p[2]] = VertexClass::Light;
    auto rep = check_weight_classes(built.labeling, mislabeled);
    EXPECT_TRUE(rep.has("light_range"));

    // A leaf declared heavy breaks the structure.
    auto broken = classes;
    broken[p[0]] = VertexClass::Heavy;
    EXPECT_TRUE(check_weight_classes(built.labeling, broken).has("class_structure"));

    // Wrong length.
    classes.pop_back();
    EXPECT_TRUE(check_weight_classes(built.labeling, classes).has("class_structure"));
}

TEST(CheckWeightClasses, DetectsSwappedLabels) {
    auto built = construct(parse_caterpillar({1, 1, 1}), 0);
    auto ol = built.labeling;
    // Swap the two path labels around u3 (1 and 4); u3's weight stays 5 but
    // u4 moves to 1, below k1.
    std::swap(ol.arcs[2].label, ol.arcs[3].label);
    auto rep = check_weight_classes(ol, built.trace);
    EXPECT_FALSE(rep.passed());
}

TEST(CheckWeightClasses, NonBijectionShortCircuits) {
    auto built = construct(parse_caterpillar({2}), 0);
    auto ol = built.labeling;
    ol.arcs[0].label = 2;
    auto rep = check_weight_classes(ol, built.trace);
    EXPECT_EQ(rep.violations, (std::vector<std::string>{"labels_not_bijection"}));
    EXPECT_FALSE(rep.antimagic);
}

TEST(CheckClaims, Examples) {
    auto built = construct(parse_caterpillar({4, 0, 0, 2, 0, 1, 3}), 0);
    auto claims = check_claims(parse_caterpillar({4, 0, 0, 2, 0, 1, 3}), built.trace);
    ASSERT_EQ(claims.size(), 4u);
    for (const auto& c : claims) EXPECT_TRUE(c.holds) << c.id << " " << c.detail;
    EXPECT_EQ(built.trace.partition.k1 + built.trace.partition.k2, 16);

    auto p3 = parse_caterpillar({2});
    for (const auto& c : check_claims(p3, construct(p3, 0).trace)) EXPECT_TRUE(c.holds) << c.id;
}

TEST(CheckClaims, DetectsTamperedTrace) {
    auto c = parse_caterpillar({1, 0, 0, 0, 2});
    auto tr = construct(c, 0).trace;
    tr.partition.k2 += 1;
    auto claims = check_claims(c, tr);
    EXPECT_FALSE(claims[0].holds);
}

TEST(Verification, AllConstructedOutputsPassUpToOrder11) {
    for_each_caterpillar(11, [](const Caterpillar& c) {
        for (std::uint64_t seed : {0u, 9u}) {
            auto built = construct(c, seed);
            auto rep = check_weight_classes(built.labeling, built.trace);
            EXPECT_TRUE(rep.passed()) << format_caterpillar(c) << " " << ::testing::PrintToString(rep.violations);
            EXPECT_TRUE(reference::naive_distinct(reference::naive_sums(built.labeling)));
            for (const auto& claim : check_claims(c, built.trace)) EXPECT_TRUE(claim.holds) << claim.id;
        }
    });
}
