#include <doctest.h>

#include "fixtures.hpp"
#include "helpers.hpp"
#include "netfair/metrics.hpp"
#include "netfair/visibility.hpp"

using namespace netfair;
using namespace netfair::test;

TEST_SUITE("metrics") {

TEST_CASE("confusion reproduces the case-study tables") {
    const ReviewFixture famous = review_fixture(kFamous, kNonFamous);
    const auto partition = GroupPartition::from_network(famous.network);

    const auto all = confusion(famous.network, famous.decisions);
    CHECK(all == ConfusionCounts{589, 98, 1408, 117});

    const auto g0 = confusion(famous.network, famous.decisions, partition.groups.at(0));
    CHECK(g0 == ConfusionCounts{94, 13, 153, 12});
    CHECK(partition.groups.at(0).size() == 272);

    const auto g1 = confusion(famous.network, famous.decisions, partition.groups.at(1));
    CHECK(g1 == ConfusionCounts{495, 85, 1255, 105});
    CHECK(g0.total() + g1.total() == 2212);
}

TEST_CASE("rates match the quoted percentages") {
    CHECK(*tpr(ConfusionCounts{94, 13, 153, 12}) == 94.0 / 106.0);      // famous, 88.7%
    CHECK(*tpr(ConfusionCounts{495, 85, 1255, 105}) == 495.0 / 600.0);  // non-famous, 82.5%
    CHECK(*tpr(ConfusionCounts{190, 34, 328, 21}) == 190.0 / 211.0);    // top inst., 90.1%
    CHECK(*fpr(ConfusionCounts{94, 13, 153, 12}) == 13.0 / 166.0);      // famous, 7.8%
    CHECK(*fpr(ConfusionCounts{495, 85, 1255, 105}) == 85.0 / 1340.0);  // non-famous, 6.3%
    CHECK(*fpr(ConfusionCounts{190, 34, 328, 21}) == 34.0 / 362.0);     // top inst., 9.4%
}

TEST_CASE("perfect agreement has no errors") {
    std::mt19937_64 rng(5);
    const auto net = random_graph(rng, 20, 0.2);
    std::vector<std::uint8_t> copy(net.node_count());
    for (std::size_t v = 0; v < net.node_count(); ++v) copy[v] = net.outcome(NodeId(v));
    const auto c = confusion(net, DecisionVector(copy));
    CHECK(c.fp == 0);
    CHECK(c.fn == 0);
    CHECK(c.total() == net.node_count());
}

TEST_CASE("undefined rates are signaled, not fabricated") {
    CHECK_FALSE(tpr(ConfusionCounts{0, 5, 7, 0}).has_value());
    CHECK_FALSE(fpr(ConfusionCounts{3, 0, 0, 2}).has_value());
}

TEST_CASE("group confusions sum to the whole-network confusion") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const auto net = random_graph(rng, 4 + rng() % 40, 0.2);
        const auto h = random_decisions(rng, net.node_count());
        const auto partition = GroupPartition::from_network(net);
        ConfusionCounts sum;
        for (const auto& [key, members] : partition.groups) {
            const auto c = confusion(net, h, members);
            sum.tp += c.tp;
            sum.fp += c.fp;
            sum.tn += c.tn;
            sum.fn += c.fn;
        }
        CHECK(sum == confusion(net, h));
    }
}

}  // TEST_SUITE
