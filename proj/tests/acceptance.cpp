// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "antimagic/construction.hpp"
#include "antimagic/generators.hpp"
#include "antimagic/oracle.hpp"
#include "antimagic/verification.hpp"
#include "test_support.hpp"

using namespace antimagic;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

int failures = 0;

void report(int id, const std::string& name, const Outcome& o, const std::string& summary) {
    std::printf("[%s] criterion %d: %s: %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(),
                o.pass ? summary.c_str() : o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<std::vector<std::size_t>> property_suite_inputs() {
    std::vector<std::vector<std::size_t>> inputs;
    for_each_caterpillar(12, [&](const Caterpillar& c) { inputs.push_back(c.leaf_counts()); });
    RandomCaterpillarStream stream(7, 1000);
    for (int i = 0; i < 10000; ++i) inputs.push_back(stream.next_leaf_counts());
    return inputs;
}

std::string show(const std::vector<std::size_t>& counts) {
    std::string s;
    for (std::size_t i = 0; i < counts.size(); ++i) s += (i ? " " : "") + std::to_string(counts[i]);
    return s.size() > 60 ? s.substr(0, 60) + "..." : s;
}

struct Deferred {
    Outcome outcome;
    std::string summary;
};

Deferred claims_result, classes_result;

// Criteria 1, 3 and 4 share the same instances and constructions; 3 and 4 are
// reported after criterion 2 to keep the output in order.
void property_suites() {
    const auto inputs = property_suite_inputs();
    Outcome antimagic_ok, claims_ok, classes_ok;
    std::size_t max_m = 0;
    double construct_verify_s = 0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        const Caterpillar c = parse_caterpillar(std::span<const std::size_t>(inputs[i]));
        max_m = std::max(max_m, c.edge_count());
        const auto t0 = std::chrono::steady_clock::now();
        Construction built;
        try {
            built = construct(c, i);
        } catch (const std::exception& e) {
            antimagic_ok.fail(show(inputs[i]) + ": construct threw: " + e.what());
            continue;
        }
        const bool ok = verify_antimagic(built.labeling);
        construct_verify_s += seconds_since(t0);
        if (!ok) antimagic_ok.fail(show(inputs[i]) + ": not antimagic");
        if (!is_orientation_of(built.labeling, c.tree())) antimagic_ok.fail(show(inputs[i]) + ": not an orientation");

        for (const ClaimResult& claim : check_claims(c, built.trace))
            if (!claim.holds) claims_ok.fail(show(inputs[i]) + ": " + claim.id + " " + claim.detail);

        const VerificationReport rep = check_weight_classes(built.labeling, built.trace.classes);
        if (!rep.passed()) classes_ok.fail(show(inputs[i]) + ": " + rep.violations.front());
    }
    if (construct_verify_s >= 60.0) antimagic_ok.fail("construct+verify took " + std::to_string(construct_verify_s) + " s");

    const std::string n = std::to_string(inputs.size()) + " instances (558 enumerated, 10000 random), max m " +
                          std::to_string(max_m);
    report(1, "construct output is antimagic", antimagic_ok,
           n + ", " + std::to_string(construct_verify_s) + " s construct+verify");
    claims_result = {claims_ok, n};
    classes_result = {classes_ok, n};
}

void oracle_cross_validation() {
    Outcome o;
    std::mt19937_64 rng(2024);
    std::size_t instances = 0;
    std::uint64_t pairs = 0;
    for_each_caterpillar(9, [&](const Caterpillar& c) {
        ++instances;
        const Tree& t = c.tree();
        const std::size_t m = t.size();
        const std::string name = show(c.leaf_counts());
        try {
            if (!confirm_construction(c, instances)) o.fail(name + ": confirm_construction false");
        } catch (const std::exception& e) {
            o.fail(name + ": " + e.what());
            return;
        }
        OracleChecker checker(t);
        std::vector<Label> perm(m);
        auto compare = [&](std::uint64_t mask) {
            ++pairs;
            const bool oracle = checker.accepts(mask, perm);
            const bool verifier = verify_antimagic(to_oriented_labeling(t, mask, perm));
            if (oracle != verifier) o.fail(name + ": disagreement at mask " + std::to_string(mask));
        };
        if (m <= 6) {
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
                std::iota(perm.begin(), perm.end(), Label{1});
                do compare(mask);
                while (std::next_permutation(perm.begin(), perm.end()));
            }
        }
        std::uniform_int_distribution<std::uint64_t> mask_dist(0, (std::uint64_t{1} << m) - 1);
        std::iota(perm.begin(), perm.end(), Label{1});
        for (int s = 0; s < 100000; ++s) {
            std::shuffle(perm.begin(), perm.end(), rng);
            compare(mask_dist(rng));
        }
    });
    if (instances != 78) o.fail("expected 78 instances with m <= 8, got " + std::to_string(instances));
    report(2, "oracle cross-validation", o,
           std::to_string(instances) + " instances, " + std::to_string(pairs) + " pairs compared");
}

void partition_scalars() {
    Outcome o;
    const LabelPartition p = compute_label_partition(16, 10);
    if (p.k1 != 4 || p.k2 != 12) o.fail("k1=" + std::to_string(p.k1) + " k2=" + std::to_string(p.k2));
    auto expect = [&](const char* name, LabelRange r, Label a, Label b) {
        if (r.first != a || r.last != b)
            o.fail(std::string(name) + "=[" + std::to_string(r.first) + "," + std::to_string(r.last) + "]");
    };
    expect("L1", p.l1(), 1, 4);
    expect("L2", p.l2(), 5, 12);
    expect("L3", p.l3(), 13, 16);
    report(5, "label partition for (m,r)=(16,10)", o, "k1=4 k2=12, [1,4]/[5,12]/[13,16]");
}

void seed_robustness() {
    Outcome o;
    RandomCaterpillarStream stream(99, 200);
    std::size_t runs = 0;
    std::size_t with_heavy_edges = 0;
    for (int i = 0; i < 100; ++i) {
        const Caterpillar c = stream.next();
        bool any_heavy = false;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            ++runs;
            try {
                const Construction built = construct(c, seed * 7919 + 1);
                any_heavy = any_heavy || !built.trace.heavy_phase1_assignments.empty();
                const VerificationReport rep = check_weight_classes(built.labeling, built.trace.classes);
                if (!rep.passed() || !verify_antimagic(built.labeling))
                    o.fail(format_caterpillar(c).substr(0, 60) + " seed " + std::to_string(seed));
            } catch (const std::exception& e) {
                o.fail(format_caterpillar(c).substr(0, 60) + ": " + e.what());
            }
        }
        with_heavy_edges += any_heavy ? 1 : 0;
    }
    report(6, "seed robustness", o,
           std::to_string(runs) + " runs, " + std::to_string(with_heavy_edges) +
               " instances with randomised heavy labels");
}

void mutation_sensitivity() {
    Outcome o;
    std::mt19937_64 rng(31337);
    const auto small = enumerate_caterpillars(9);
    RandomCaterpillarStream stream(5, 300);
    std::size_t collisions = 0;
    std::size_t small_checked = 0;
    for (int i = 0; i < 1000; ++i) {
        const bool use_small = i % 2 == 0;
        const Caterpillar c = use_small ? small[rng() % small.size()] : stream.next();
        const Construction built = construct(c, static_cast<std::uint64_t>(i));
        OrientedLabeling ol = built.labeling;
        const std::size_t m = ol.arcs.size();
        const std::size_t a = rng() % m;
        std::size_t b = rng() % (m - 1);
        if (b >= a) ++b;
        std::swap(ol.arcs[a].label, ol.arcs[b].label);

        const bool expected = reference::naive_distinct(reference::naive_sums(ol));
        const bool verifier = verify_antimagic(ol);
        if (!expected) ++collisions;
        if (verifier != expected) o.fail(format_caterpillar(c).substr(0, 60) + ": verifier verdict differs");
        if (m <= 8) {
            ++small_checked;
            if (oracle_accepts(c.tree(), ol) != verifier)
                o.fail(format_caterpillar(c) + ": oracle and verifier differ");
        }
    }
    report(7, "mutation sensitivity", o,
           "1000 swaps, " + std::to_string(collisions) + " collisions detected, " + std::to_string(small_checked) +
               " checked against the oracle");
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    property_suites();
    oracle_cross_validation();
    report(3, "claims hold", claims_result.outcome, claims_result.summary);
    report(4, "weight classes hold and never overlap", classes_result.outcome, classes_result.summary);
    partition_scalars();
    seed_robustness();
    mutation_sensitivity();
    std::printf("%s: %d failing criteria, %.1f s\n", failures ? "FAIL" : "PASS", failures, seconds_since(t0));
    return failures ? 1 : 0;
}
