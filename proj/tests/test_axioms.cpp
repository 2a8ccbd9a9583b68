#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "helpers.hpp"
#include "netfair/axioms.hpp"

using namespace netfair;
using namespace netfair::test;

namespace {

const ExpectationPolicy kDefault{1, DegenerateRule::zero_expectation};

// Exhaustive bijection search over all permutations; the independent oracle
// for decision_isomorphic on tiny ego nets.
bool brute_force_isomorphic(const EgoNet& a, const EgoNet& b) {
    if (a.size() != b.size()) return false;
    const std::size_t n = a.size();
    auto adjacency = [](const EgoNet& g) {
        std::vector<std::vector<int>> adj(g.size(), std::vector<int>(g.size(), 0));
        for (const auto& [x, y] : g.edges) adj[x][y] = adj[y][x] = 1;
        return adj;
    };
    const auto adj_a = adjacency(a);
    const auto adj_b = adjacency(b);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (perm[a.center_index] != b.center_index) continue;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            ok = a.protected_values[i] == b.protected_values[perm[i]] &&
                 a.outcomes[i] == b.outcomes[perm[i]] && a.decisions[i] == b.decisions[perm[i]];
            for (std::size_t k = 0; k < a.attribute_dim && ok; ++k)
                ok = a.attributes[i * a.attribute_dim + k] ==
                     b.attributes[perm[i] * b.attribute_dim + k];
        }
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = i + 1; j < n && ok; ++j)
                ok = adj_a[i][j] == adj_b[perm[i]][perm[j]];
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

EgoNet make_ego(std::size_t center_index, std::size_t n,
                std::vector<std::pair<std::size_t, std::size_t>> edges,
                std::vector<std::uint8_t> outcomes, std::vector<std::uint8_t> decisions,
                std::vector<int> protected_values = {}) {
    EgoNet g;
    g.center = static_cast<NodeId>(center_index);
    g.center_index = center_index;
    g.members.resize(n);
    std::iota(g.members.begin(), g.members.end(), 0);
    g.edges = std::move(edges);
    g.outcomes = std::move(outcomes);
    g.decisions = std::move(decisions);
    g.protected_values = protected_values.empty() ? std::vector<int>(n, 0)
                                                  : std::move(protected_values);
    return g;
}

// Relayout of an ego net under a random index permutation.
EgoNet permute_ego(const EgoNet& g, std::mt19937_64& rng) {
    const std::size_t n = g.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    EgoNet out;
    out.center = g.center;
    out.center_index = perm[g.center_index];
    out.members = g.members;  // parent ids are irrelevant to isomorphism
    out.attribute_dim = g.attribute_dim;
    out.protected_values.resize(n);
    out.outcomes.resize(n);
    out.decisions.resize(n);
    out.attributes.resize(g.attributes.size());
    for (std::size_t i = 0; i < n; ++i) {
        out.protected_values[perm[i]] = g.protected_values[i];
        out.outcomes[perm[i]] = g.outcomes[i];
        out.decisions[perm[i]] = g.decisions[i];
        for (std::size_t k = 0; k < g.attribute_dim; ++k)
            out.attributes[perm[i] * g.attribute_dim + k] =
                g.attributes[i * g.attribute_dim + k];
    }
    for (auto [x, y] : g.edges) {
        auto a = perm[x];
        auto b = perm[y];
        if (a > b) std::swap(a, b);
        out.edges.emplace_back(a, b);
    }
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

}  // namespace

TEST_SUITE("axioms") {

TEST_CASE("single-edge egos with identical labels are isomorphic") {
    const auto a = make_ego(0, 2, {{0, 1}}, {1, 0}, {1, 1});
    const auto b = make_ego(0, 2, {{0, 1}}, {1, 0}, {1, 1});
    CHECK(decision_isomorphic(a, b));

    auto c = b;
    c.decisions[1] = 0;  // one decision flipped
    CHECK_FALSE(decision_isomorphic(a, c));
}

TEST_CASE("triangle and path of three are not isomorphic") {
    const auto tri = make_ego(0, 3, {{0, 1}, {0, 2}, {1, 2}}, {0, 0, 0}, {0, 0, 0});
    const auto path = make_ego(0, 3, {{0, 1}, {1, 2}}, {0, 0, 0}, {0, 0, 0});
    CHECK_FALSE(decision_isomorphic(tri, path));
    CHECK_FALSE(brute_force_isomorphic(tri, path));
}

TEST_CASE("the bijection must fix the center") {
    // path a-b with swapped roles: labels match pairwise but only by mapping
    // the center to the non-center
    const auto a = make_ego(0, 2, {{0, 1}}, {1, 1}, {0, 1});
    const auto b = make_ego(1, 2, {{0, 1}}, {1, 1}, {0, 1});
    // a's center has decision 0; b's center has decision 1
    CHECK_FALSE(decision_isomorphic(a, b));
    CHECK_FALSE(brute_force_isomorphic(a, b));
}

TEST_CASE("attribute arity mismatch is an argument error") {
    auto a = make_ego(0, 2, {{0, 1}}, {0, 0}, {0, 0});
    auto b = a;
    b.attribute_dim = 1;
    b.attributes = {0.5, 0.5};
    CHECK_THROWS_AS(decision_isomorphic(a, b), std::invalid_argument);
}

TEST_CASE("isomorphism is reflexive and invariant under relabeling") {
    std::mt19937_64 rng(314);
    for (int trial = 0; trial < 100; ++trial) {
        const auto net = random_graph(rng, 4 + rng() % 12, 0.3, trial % 2 ? 1 : 0);
        const auto h = random_decisions(rng, net.node_count());
        const auto v = static_cast<NodeId>(rng() % net.node_count());
        const EgoNet ego = ego_network(net, v, 1 + static_cast<int>(rng() % 2), h);
        CHECK(decision_isomorphic(ego, ego));
        const EgoNet shuffled = permute_ego(ego, rng);
        CHECK(decision_isomorphic(ego, shuffled));
        CHECK(decision_isomorphic(shuffled, ego));
    }
}

TEST_CASE("search agrees with the exhaustive oracle on random pairs") {
    std::mt19937_64 rng(2718);
    std::size_t agreements = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const auto net = random_graph(rng, 5 + rng() % 6, 0.35);
        const auto h = random_decisions(rng, net.node_count());
        const auto u = static_cast<NodeId>(rng() % net.node_count());
        const auto v = static_cast<NodeId>(rng() % net.node_count());
        const EgoNet ego_u = ego_network(net, u, 1, h);
        const EgoNet ego_v = ego_network(net, v, 1, h);
        if (ego_u.size() > 7 || ego_v.size() > 7) continue;
        CHECK(decision_isomorphic(ego_u, ego_v) == brute_force_isomorphic(ego_u, ego_v));
        ++agreements;
    }
    CHECK(agreements > 100);
}

TEST_CASE("locality check") {
    std::mt19937_64 rng(55);
    const auto net = random_graph(rng, 12, 0.3);
    const auto h = random_decisions(rng, net.node_count());

    SUBCASE("identical decisions trivially agree") {
        const auto r = check_locality(net, 3, h, h, kDefault);
        CHECK(r.outcome == CheckOutcome::pass);
    }
    SUBCASE("changed neighborhood is a skip, not a failure") {
        auto h2 = h;
        const auto nbrs = neighborhood(net, 3, 1);
        REQUIRE_FALSE(nbrs.empty());
        h2.set(nbrs.front(), h[nbrs.front()] ^ 1);
        CHECK(check_locality(net, 3, h, h2, kDefault).outcome == CheckOutcome::skipped);
    }
}

TEST_CASE("monotonicity check finds the strict increase") {
    // star center with all same-outcome neighbors accepted: E = 1
    AttributedNetwork net(4, {{0, 1}, {0, 2}, {0, 3}}, {0, 0, 0, 0}, {1, 1, 1, 1});
    const DecisionVector h({0, 1, 1, 1});
    DecisionVector h2 = h;
    h2.set(0, 1);
    CHECK(fairness_perception(net, h, 0, kDefault) == 0);
    CHECK(fairness_perception(net, h2, 0, kDefault) == 1);
    CHECK(check_monotonicity(net, 0, h, h2, kDefault).outcome == CheckOutcome::pass);
    CHECK(check_monotonicity(net, 0, h2, h, kDefault).outcome == CheckOutcome::skipped);
}

TEST_CASE("neighborhood expectation check on a star") {
    AttributedNetwork net(4, {{0, 1}, {0, 2}, {0, 3}}, {0, 0, 0, 0}, {1, 1, 1, 0});
    const DecisionVector h({0, 0, 0, 0});

    SUBCASE("raising a same-outcome neighbor can only drop perception") {
        DecisionVector h2 = h;
        h2.set(1, 1);
        CHECK(fairness_perception(net, h, 0, kDefault) == 1);
        CHECK(fairness_perception(net, h2, 0, kDefault) == 0);
        CHECK(check_neighborhood_expectation(net, 0, h, h2, kDefault).outcome ==
              CheckOutcome::pass);
    }
    SUBCASE("raising only different-outcome neighbors changes nothing") {
        DecisionVector h2 = h;
        h2.set(3, 1);  // node 3 has outcome 0, the center has outcome 1
        CHECK(peer_expectation(net, h, 0, kDefault) == peer_expectation(net, h2, 0, kDefault));
        CHECK(check_neighborhood_expectation(net, 0, h, h2, kDefault).outcome ==
              CheckOutcome::pass);
        CHECK(fairness_perception(net, h2, 0, kDefault) == 1);
    }
    SUBCASE("lowering a neighbor skips the trial") {
        DecisionVector raised = h;
        raised.set(1, 1);
        CHECK(check_neighborhood_expectation(net, 0, raised, h, kDefault).outcome ==
              CheckOutcome::skipped);
    }
}

TEST_CASE("homogeneity check on twin stars") {
    // two disjoint stars with matched labels: centers 0 and 4
    AttributedNetwork net(8, {{0, 1}, {0, 2}, {0, 3}, {4, 5}, {4, 6}, {4, 7}},
                          std::vector<int>(8, 0), {1, 1, 0, 1, 1, 1, 0, 1});
    const DecisionVector h({0, 1, 0, 0, 0, 1, 0, 0});
    CHECK(check_homogeneity(net, 0, 4, h, kDefault).outcome == CheckOutcome::pass);
    CHECK(check_homogeneity(net, 0, 0, h, kDefault).outcome == CheckOutcome::pass);

    // swapping one outcome label breaks the precondition
    AttributedNetwork swapped(8, {{0, 1}, {0, 2}, {0, 3}, {4, 5}, {4, 6}, {4, 7}},
                              std::vector<int>(8, 0), {1, 1, 0, 1, 1, 1, 0, 0});
    CHECK(check_homogeneity(swapped, 0, 4, h, kDefault).outcome == CheckOutcome::skipped);
}

TEST_CASE("suite passes and is deterministic") {
    SuiteConfig config;
    config.max_nodes = 20;
    const auto report = run_axiom_suite(config, 50, 12345);
    CHECK(report.all_passed());
    CHECK(report.verdicts.size() == 8);
    for (const auto& v : report.verdicts) {
        CHECK(v.satisfied >= 50);
        CHECK(v.violations.empty());
    }

    const auto again = run_axiom_suite(config, 50, 12345);
    REQUIRE(again.verdicts.size() == report.verdicts.size());
    for (std::size_t i = 0; i < report.verdicts.size(); ++i) {
        CHECK(again.verdicts[i].attempted == report.verdicts[i].attempted);
        CHECK(again.verdicts[i].satisfied == report.verdicts[i].satisfied);
    }
}

TEST_CASE("suite rejects zero trials") {
    CHECK_THROWS_AS(run_axiom_suite(SuiteConfig{}, 0, 1), std::invalid_argument);
}

TEST_CASE("a strict-inequality mutant is caught by the tie cases") {
    PerceptionHooks mutant = PerceptionHooks::defaults();
    mutant.perceive = [](const AttributedNetwork& net, const DecisionVector& h, NodeId v,
                         const ExpectationPolicy& policy) -> std::uint8_t {
        const auto e = peer_expectation(net, h, v, policy);
        return e.value_or(0.0) < static_cast<double>(h[v]) ? 1 : 0;
    };
    SuiteConfig config;
    config.max_nodes = 20;
    const auto report = run_axiom_suite(config, 60, 99, mutant);
    CHECK_FALSE(report.all_passed());
    for (const auto& v : report.verdicts) {
        if (v.axiom == AxiomId::tie_equality) CHECK_FALSE(v.violations.empty());
        // the comparative axioms cannot distinguish the mutant
        if (v.axiom == AxiomId::monotonicity) CHECK(v.violations.empty());
    }
}

}  // TEST_SUITE
