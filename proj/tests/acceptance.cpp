// Acceptance suite. Each test case checks one release criterion end to end
// and prints a single pass/fail line.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "helpers.hpp"
#include "netfair/axioms.hpp"
#include "netfair/ingest.hpp"
#include "netfair/metrics.hpp"
#include "netfair/synth.hpp"
#include "netfair/visibility.hpp"

using namespace netfair;
using namespace netfair::test;

namespace {

class Criterion {
public:
    Criterion(int number, std::string title) : number_(number), title_(std::move(title)) {}

    void expect(bool condition, const std::string& what) {
        if (!condition) failures_.push_back(what);
    }

    bool finish() {
        std::printf("criterion %d [%s] %s\n", number_, failures_.empty() ? "PASS" : "FAIL",
                    title_.c_str());
        for (const std::string& f : failures_) std::printf("    %s\n", f.c_str());
        std::fflush(stdout);
        return failures_.empty();
    }

private:
    int number_;
    std::string title_;
    std::vector<std::string> failures_;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Loads a fixture network back through the interchange files so the check
// covers the loader as well as the metrics.
ReviewFixture through_interchange(const ReviewFixture& fixture, const std::string& tag) {
    TempDir dir("acceptance_" + tag);
    ExportOptions options;
    options.decisions = &fixture.decisions;
    const auto paths = export_network(fixture.network, dir.path(), options);
    AttributedNetwork net = load_network(paths.nodes, paths.edges);
    DecisionVector h = load_decisions(*paths.decisions, net.node_count());
    return ReviewFixture{std::move(net), std::move(h)};
}

bool within_tenth_point(double rate, double quoted_percent) {
    return std::abs(rate * 100.0 - quoted_percent) <= 0.1;
}

}  // namespace

TEST_CASE("criterion 1: confusion-table rates") {
    Criterion c(1, "per-group TPR/FPR reproduce the case-study tables exactly");

    const auto famous = through_interchange(review_fixture(kFamous, kNonFamous), "famous");
    const auto inst =
        through_interchange(review_fixture(kTopInstitution, kNonTopInstitution), "inst");

    const auto famous_groups = GroupPartition::from_network(famous.network);
    const auto inst_groups = GroupPartition::from_network(inst.network);

    struct Case {
        const char* name;
        ConfusionCounts counts;
        double tpr_expected, fpr_expected;
        double tpr_quoted, fpr_quoted;  // percent
    };
    const std::vector<Case> cases{
        {"famous", confusion(famous.network, famous.decisions, famous_groups.groups.at(0)),
         94.0 / 106.0, 13.0 / 166.0, 88.7, 7.8},
        {"non-famous", confusion(famous.network, famous.decisions, famous_groups.groups.at(1)),
         495.0 / 600.0, 85.0 / 1340.0, 82.5, 6.3},
        {"top-institution", confusion(inst.network, inst.decisions, inst_groups.groups.at(0)),
         190.0 / 211.0, 34.0 / 362.0, 90.1, 9.4},
        {"non-top", confusion(inst.network, inst.decisions, inst_groups.groups.at(1)),
         399.0 / 495.0, 64.0 / 1144.0, 80.6, 5.6},
    };
    for (const Case& k : cases) {
        const auto t = tpr(k.counts);
        const auto f = fpr(k.counts);
        c.expect(t.has_value() && *t == k.tpr_expected, std::string(k.name) + ": TPR not exact");
        c.expect(f.has_value() && *f == k.fpr_expected, std::string(k.name) + ": FPR not exact");
        c.expect(t && within_tenth_point(*t, k.tpr_quoted),
                 std::string(k.name) + ": TPR off the quoted value by more than 0.1pp");
        c.expect(f && within_tenth_point(*f, k.fpr_quoted),
                 std::string(k.name) + ": FPR off the quoted value by more than 0.1pp");
    }
    const auto all = confusion(famous.network, famous.decisions);
    c.expect(all == ConfusionCounts{589, 98, 1408, 117}, "whole-network table mismatch");
    CHECK(c.finish());
}

TEST_CASE("criterion 2: acceptance probabilities") {
    Criterion c(2, "group acceptance probabilities are exact rationals");
    const auto famous = through_interchange(review_fixture(kFamous, kNonFamous), "famous2");
    const auto partition = GroupPartition::from_network(famous.network);
    c.expect(acceptance_probability(famous.network, famous.decisions, partition.groups.at(0)) ==
                 107.0 / 272.0,
             "famous-group acceptance is not 107/272");
    c.expect(acceptance_probability(famous.network, famous.decisions, partition.groups.at(1)) ==
                 580.0 / 1940.0,
             "non-famous acceptance is not 580/1940");
    std::vector<NodeId> all(famous.network.node_count());
    for (std::size_t v = 0; v < all.size(); ++v) all[v] = static_cast<NodeId>(v);
    c.expect(acceptance_probability(famous.network, famous.decisions, all) == 687.0 / 2212.0,
             "overall acceptance is not 687/2212");
    CHECK(c.finish());
}

TEST_CASE("criterion 3: saturation convergence") {
    Criterion c(3,
                "terminal fairness visibility equals acceptance probability on 20 connected "
                "synthetic networks");
    const auto start = std::chrono::steady_clock::now();

    int verified = 0;
    std::uint64_t seed = 1;
    while (verified < 20 && seed < 200) {
        SynthConfig config;
        const std::size_t total = 20 + (seed * 13) % 81;  // 20..100 nodes
        const std::size_t first = total / 2 + (seed % 5);
        config.group_sizes = {first, total - first};
        config.intra_edge_prob = 0.15 + 0.01 * static_cast<double>(seed % 10);
        config.inter_edge_prob = 0.08;
        config.degree_skew = 1.0 + static_cast<double>(seed % 3);
        config.outcome_rate = 0.5;
        config.seed = seed;
        config.force_connected = true;
        config.ensure_outcome_mix = true;
        config.tpr_targets = {0.9, 0.75};
        config.fpr_targets = {0.3, 0.2};
        ++seed;

        const auto net = random_attributed_graph(config);
        const auto h = biased_decision(net, config);
        const auto counts = confusion(net, h);
        if (!tpr(counts) || *tpr(counts) <= 0.0 || !fpr(counts) || *fpr(counts) <= 0.0) continue;

        const auto report = convergence_check(net, h, GroupPartition::from_network(net),
                                              ExpectationPolicy{});
        c.expect(report.hypotheses_hold(),
                 "hypotheses unexpectedly failed at seed " + std::to_string(config.seed));
        c.expect(report.converged, "terminal visibility diverged at seed " +
                                       std::to_string(config.seed));
        for (const auto& row : report.groups)
            c.expect(row.equal && row.terminal_visibility.value &&
                         *row.terminal_visibility.value == row.acceptance,
                     "group " + std::to_string(row.group) + " not exactly equal at seed " +
                         std::to_string(config.seed));
        ++verified;
    }
    c.expect(verified >= 20, "fewer than 20 instances verified");
    const double elapsed = seconds_since(start);
    c.expect(elapsed < 10.0, "runtime " + std::to_string(elapsed) + "s exceeds 10s");
    CHECK(c.finish());
}

TEST_CASE("criterion 4: axiom suite") {
    Criterion c(4, "500 satisfied trials per property with zero violations");
    const auto start = std::chrono::steady_clock::now();

    SuiteConfig config;
    config.max_nodes = 30;
    const auto report = run_axiom_suite(config, 500, 20260810);

    const std::vector<AxiomId> required{
        AxiomId::locality,       AxiomId::monotonicity,
        AxiomId::neighborhood_expectation, AxiomId::homogeneity,
        AxiomId::expectation_invariance,   AxiomId::expectation_monotonicity,
        AxiomId::expectation_isomorphism};
    for (AxiomId id : required) {
        bool found = false;
        for (const auto& v : report.verdicts) {
            if (v.axiom != id) continue;
            found = true;
            c.expect(v.satisfied >= 500, std::string(axiom_name(id)) + ": fewer than 500 trials");
            c.expect(v.violations.empty(), std::string(axiom_name(id)) + ": violations found");
        }
        c.expect(found, std::string(axiom_name(id)) + ": verdict missing");
    }
    c.expect(report.all_passed(), "suite reported a failure");
    const double elapsed = seconds_since(start);
    c.expect(elapsed < 60.0, "runtime " + std::to_string(elapsed) + "s exceeds 60s");
    CHECK(c.finish());
}

TEST_CASE("criterion 5: pitfall reproduction") {
    Criterion c(5, "pitfall ordering reverses at delta=1 and matches acceptance at saturation");
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const std::string tag = " (seed " + std::to_string(seed) + ")";
        PitfallInstance inst = pitfall_instance(seed);
        const auto& net = inst.network;
        const auto& h = inst.decisions;
        const auto partition = GroupPartition::from_network(net);
        const auto& g0 = partition.groups.at(0);
        const auto& g1 = partition.groups.at(1);

        const double acc0 = acceptance_probability(net, h, g0);
        const double acc1 = acceptance_probability(net, h, g1);
        c.expect(acc0 > acc1, "group 0 not favored" + tag);
        c.expect(connected_components(net).connected(), "instance not connected" + tag);

        const auto local = perceive_all(net, h, ExpectationPolicy{1});
        const auto fv0 = fairness_visibility(local, g0);
        const auto fv1 = fairness_visibility(local, g1);
        c.expect(fv1.value && fv0.value && *fv1.value > *fv0.value,
                 "delta=1 ordering not reversed" + tag);

        const int bound = eccentricity_bound(net);
        const auto terminal = perceive_all(net, h, ExpectationPolicy{bound});
        const auto tv0 = fairness_visibility(terminal, g0);
        const auto tv1 = fairness_visibility(terminal, g1);
        c.expect(tv0.value && tv1.value && *tv0.value > *tv1.value,
                 "saturation ordering broken" + tag);
        c.expect(tv0.value && *tv0.value == acc0 && tv1.value && *tv1.value == acc1,
                 "saturation visibility not equal to acceptance" + tag);
    }
    CHECK(c.finish());
}

TEST_CASE("criterion 6: neighborhood oracle equivalence") {
    Criterion c(6, "BFS and boolean matrix powers agree on 1000 random cases");
    std::mt19937_64 rng(6021023);
    std::uniform_real_distribution<double> prob(0.02, 0.35);
    std::size_t mismatches = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + rng() % 49;
        const auto net = random_graph(rng, n, prob(rng));
        const auto v = static_cast<NodeId>(rng() % n);
        const int delta = 1 + static_cast<int>(rng() % 6);
        if (neighborhood(net, v, delta) != neighborhood_by_matrix_power(net, v, delta))
            ++mismatches;
    }
    c.expect(mismatches == 0, std::to_string(mismatches) + " mismatches");
    CHECK(c.finish());
}

TEST_CASE("criterion 7: interchange round-trip") {
    Criterion c(7, "export/load round-trips 50 random networks bit-identically");
    std::mt19937_64 rng(7071707);
    for (int trial = 0; trial < 50; ++trial) {
        const std::string tag = " (trial " + std::to_string(trial) + ")";
        const std::size_t n = 2 + rng() % 40;
        const auto net = random_graph(rng, n, 0.2, trial % 2 ? 3 : 0);
        const auto h = random_decisions(rng, n);

        TempDir dir("acceptance_rt");
        ExportOptions options;
        options.decisions = &h;
        const auto paths = export_network(net, dir.path(), options);
        const auto loaded = load_network(paths.nodes, paths.edges);
        const auto h2 = load_decisions(*paths.decisions, n);

        c.expect(loaded.node_count() == net.node_count(), "node count drifted" + tag);
        c.expect(loaded.edges() == net.edges(), "edge multiset drifted" + tag);
        c.expect(h2 == h, "decisions drifted" + tag);
        bool labels_ok = loaded.attribute_dim() == net.attribute_dim();
        for (std::size_t v = 0; labels_ok && v < n; ++v) {
            labels_ok = loaded.protected_value(NodeId(v)) == net.protected_value(NodeId(v)) &&
                        loaded.outcome(NodeId(v)) == net.outcome(NodeId(v));
            const auto a = net.attributes(NodeId(v));
            const auto b = loaded.attributes(NodeId(v));
            for (std::size_t k = 0; labels_ok && k < a.size(); ++k) labels_ok = a[k] == b[k];
        }
        c.expect(labels_ok, "labels drifted" + tag);

        // derived statistics, bit for bit
        const auto counts_a = confusion(net, h);
        const auto counts_b = confusion(loaded, h2);
        c.expect(counts_a == counts_b, "confusion drifted" + tag);
        const auto records_a = perceive_all(net, h, ExpectationPolicy{});
        const auto records_b = perceive_all(loaded, h2, ExpectationPolicy{});
        bool perception_ok = records_a.size() == records_b.size();
        for (std::size_t v = 0; perception_ok && v < records_a.size(); ++v)
            perception_ok = records_a[v].fair == records_b[v].fair &&
                            records_a[v].expectation == records_b[v].expectation;
        c.expect(perception_ok, "perception drifted" + tag);
    }
    CHECK(c.finish());
}

TEST_CASE("criterion 8: degenerate-node handling") {
    Criterion c(8, "peerless nodes follow the configured degenerate rule");
    AttributedNetwork isolated(6, {}, {0, 0, 0, 1, 1, 1}, {1, 0, 1, 0, 1, 0});
    std::mt19937_64 rng(88);
    for (int trial = 0; trial < 10; ++trial) {
        const auto h = random_decisions(rng, 6);
        const auto zero_records =
            perceive_all(isolated, h, ExpectationPolicy{1, DegenerateRule::zero_expectation});
        for (const auto& rec : zero_records)
            c.expect(rec.fair == 1, "zero_expectation node not perceived fair");

        const auto excl_records =
            perceive_all(isolated, h, ExpectationPolicy{1, DegenerateRule::mark_ineligible});
        std::vector<NodeId> all{0, 1, 2, 3, 4, 5};
        const auto fv = fairness_visibility(excl_records, all);
        c.expect(!fv.value.has_value(), "undefined visibility reported as a number");
        c.expect(fv.denominator == 0, "eligible denominator not disclosed as 0");
        c.expect(fv.excluded == 6, "exclusion count wrong");
    }
    CHECK(c.finish());
}
