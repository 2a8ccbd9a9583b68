#include "netfair/axioms.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <random>

#include "netfair/synth.hpp"

namespace netfair {

namespace {

std::invalid_argument arg_error(const std::string& what) {
    return std::invalid_argument("netfair: " + what);
}

// Label class of an ego-net node: everything a bijection must preserve
// besides adjacency.
struct NodeKey {
    bool is_center;
    int protected_value;
    std::uint8_t outcome;
    std::uint8_t decision;
    std::size_t degree;
    std::span<const double> attrs;

    bool operator==(const NodeKey& other) const {
        return is_center == other.is_center && protected_value == other.protected_value &&
               outcome == other.outcome && decision == other.decision && degree == other.degree &&
               std::equal(attrs.begin(), attrs.end(), other.attrs.begin(), other.attrs.end());
    }
};

NodeKey node_key(const EgoNet& g, std::size_t i, const std::vector<std::size_t>& degrees) {
    std::span<const double> attrs;
    if (g.attribute_dim > 0)
        attrs = {g.attributes.data() + i * g.attribute_dim, g.attribute_dim};
    return NodeKey{i == g.center_index, g.protected_values[i], g.outcomes[i], g.decisions[i],
                   degrees[i], attrs};
}

std::vector<std::size_t> ego_degrees(const EgoNet& g) {
    std::vector<std::size_t> deg(g.size(), 0);
    for (const auto& [a, b] : g.edges) {
        ++deg[a];
        ++deg[b];
    }
    return deg;
}

std::vector<std::vector<std::uint8_t>> ego_adjacency(const EgoNet& g) {
    std::vector<std::vector<std::uint8_t>> adj(g.size(), std::vector<std::uint8_t>(g.size(), 0));
    for (const auto& [a, b] : g.edges) {
        adj[a][b] = 1;
        adj[b][a] = 1;
    }
    return adj;
}

}  // namespace

bool decision_isomorphic(const EgoNet& a, const EgoNet& b) {
    if (a.attribute_dim != b.attribute_dim)
        throw arg_error("ego networks carry attribute vectors of different arity");
    const std::size_t n = a.size();
    if (n != b.size() || a.edges.size() != b.edges.size()) return false;

    const std::vector<std::size_t> deg_a = ego_degrees(a);
    const std::vector<std::size_t> deg_b = ego_degrees(b);

    // Candidate targets per source node, filtered by label class. The center
    // can only map to the center.
    std::vector<std::vector<std::size_t>> candidates(n);
    for (std::size_t i = 0; i < n; ++i) {
        const NodeKey ka = node_key(a, i, deg_a);
        for (std::size_t j = 0; j < n; ++j)
            if (ka == node_key(b, j, deg_b)) candidates[i].push_back(j);
        if (candidates[i].empty()) return false;
    }

    // Assign scarce nodes first.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&candidates](std::size_t x, std::size_t y) {
        return candidates[x].size() < candidates[y].size();
    });

    const auto adj_a = ego_adjacency(a);
    const auto adj_b = ego_adjacency(b);
    std::vector<std::size_t> mapping(n, static_cast<std::size_t>(-1));
    std::vector<std::uint8_t> used(n, 0);

    auto extend = [&](auto&& self, std::size_t depth) -> bool {
        if (depth == n) return true;
        const std::size_t i = order[depth];
        for (std::size_t j : candidates[i]) {
            if (used[j]) continue;
            bool consistent = true;
            for (std::size_t d = 0; d < depth && consistent; ++d) {
                const std::size_t prev = order[d];
                consistent = adj_a[i][prev] == adj_b[j][mapping[prev]];
            }
            if (!consistent) continue;
            mapping[i] = j;
            used[j] = 1;
            if (self(self, depth + 1)) return true;
            used[j] = 0;
            mapping[i] = static_cast<std::size_t>(-1);
        }
        return false;
    };
    return extend(extend, 0);
}

PerceptionHooks PerceptionHooks::defaults() {
    PerceptionHooks hooks;
    hooks.perceive = [](const AttributedNetwork& net, const DecisionVector& h, NodeId v,
                        const ExpectationPolicy& policy) {
        return fairness_perception(net, h, v, policy);
    };
    hooks.expectation = [](const AttributedNetwork& net, const DecisionVector& h, NodeId v,
                           const ExpectationPolicy& policy) {
        return peer_expectation(net, h, v, policy);
    };
    return hooks;
}

namespace {

bool agree_on(const DecisionVector& h, const DecisionVector& h2, const std::vector<NodeId>& nodes) {
    for (NodeId u : nodes)
        if (h[u] != h2[u]) return false;
    return true;
}

CheckResult pass_or_fail(bool ok, std::string detail) {
    return CheckResult{ok ? CheckOutcome::pass : CheckOutcome::fail,
                       ok ? std::string{} : std::move(detail)};
}

}  // namespace

CheckResult check_locality(const AttributedNetwork& net, NodeId v, const DecisionVector& h,
                           const DecisionVector& h2, const ExpectationPolicy& policy,
                           const PerceptionHooks& hooks) {
    net.require_sized(h);
    net.require_sized(h2);
    if (h[v] != h2[v] || !agree_on(h, h2, neighborhood(net, v, policy.delta)))
        return {CheckOutcome::skipped, "decisions differ on the node or its neighborhood"};
    const auto f1 = hooks.perceive(net, h, v, policy);
    const auto f2 = hooks.perceive(net, h2, v, policy);
    return pass_or_fail(f1 == f2, "perception changed although the neighborhood did not: f=" +
                                      std::to_string(f1) + " f'=" + std::to_string(f2));
}

CheckResult check_monotonicity(const AttributedNetwork& net, NodeId v, const DecisionVector& h,
                               const DecisionVector& h2, const ExpectationPolicy& policy,
                               const PerceptionHooks& hooks) {
    net.require_sized(h);
    net.require_sized(h2);
    if (!(h[v] == 0 && h2[v] == 1) || !agree_on(h, h2, neighborhood(net, v, policy.delta)))
        return {CheckOutcome::skipped, "decision pair is not a favorable flip"};
    const auto f1 = hooks.perceive(net, h, v, policy);
    const auto f2 = hooks.perceive(net, h2, v, policy);
    return pass_or_fail(f1 <= f2, "perception dropped after a favorable flip: f=" +
                                      std::to_string(f1) + " f'=" + std::to_string(f2));
}

CheckResult check_neighborhood_expectation(const AttributedNetwork& net, NodeId v,
                                           const DecisionVector& h, const DecisionVector& h2,
                                           const ExpectationPolicy& policy,
                                           const PerceptionHooks& hooks) {
    net.require_sized(h);
    net.require_sized(h2);
    if (h[v] != h2[v]) return {CheckOutcome::skipped, "node decision changed"};
    for (NodeId u : neighborhood(net, v, policy.delta))
        if (h[u] > h2[u]) return {CheckOutcome::skipped, "a neighbor decision was lowered"};
    const auto f1 = hooks.perceive(net, h, v, policy);
    const auto f2 = hooks.perceive(net, h2, v, policy);
    return pass_or_fail(f1 >= f2, "perception rose although neighbors improved: f=" +
                                      std::to_string(f1) + " f'=" + std::to_string(f2));
}

CheckResult check_homogeneity(const AttributedNetwork& net, NodeId u, NodeId v,
                              const DecisionVector& h, const ExpectationPolicy& policy,
                              const PerceptionHooks& hooks) {
    net.require_sized(h);
    const EgoNet ego_u = ego_network(net, u, policy.delta, h);
    const EgoNet ego_v = ego_network(net, v, policy.delta, h);
    if (!decision_isomorphic(ego_u, ego_v))
        return {CheckOutcome::skipped, "ego networks are not decision-isomorphic"};
    const auto fu = hooks.perceive(net, h, u, policy);
    const auto fv = hooks.perceive(net, h, v, policy);
    if (fu != fv)
        return pass_or_fail(false, "isomorphic egos with different perception: f(u)=" +
                                       std::to_string(fu) + " f(v)=" + std::to_string(fv));
    const auto eu = hooks.expectation(net, h, u, policy);
    const auto ev = hooks.expectation(net, h, v, policy);
    return pass_or_fail(eu == ev, "isomorphic egos with different expectation");
}

const char* axiom_name(AxiomId id) {
    switch (id) {
        case AxiomId::locality: return "locality";
        case AxiomId::monotonicity: return "monotonicity";
        case AxiomId::neighborhood_expectation: return "neighborhood_expectation";
        case AxiomId::homogeneity: return "homogeneity";
        case AxiomId::expectation_invariance: return "expectation_invariance";
        case AxiomId::expectation_monotonicity: return "expectation_monotonicity";
        case AxiomId::expectation_isomorphism: return "expectation_isomorphism";
        case AxiomId::tie_equality: return "tie_equality";
    }
    return "unknown";
}

namespace {

struct TrialContext {
    AttributedNetwork net;
    DecisionVector h;
    ExpectationPolicy policy;
    NodeId v;
};

DecisionVector random_decisions(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::uint8_t> values(n);
    for (auto& d : values) d = static_cast<std::uint8_t>(rng() & 1);
    return DecisionVector(std::move(values));
}

TrialContext random_trial(const SuiteConfig& config, std::uint64_t trial_seed) {
    std::mt19937_64 rng(trial_seed);
    std::uniform_int_distribution<std::size_t> size_dist(config.min_nodes, config.max_nodes);
    std::uniform_real_distribution<double> prob_dist(config.edge_prob_min, config.edge_prob_max);
    const std::size_t n = std::max<std::size_t>(2, size_dist(rng));

    SynthConfig sc;
    sc.group_sizes = {n / 2, n - n / 2};
    sc.intra_edge_prob = prob_dist(rng);
    sc.inter_edge_prob = prob_dist(rng);
    sc.outcome_rate = config.outcome_rate;
    sc.seed = rng();

    TrialContext ctx{random_attributed_graph(sc), DecisionVector{}, ExpectationPolicy{}, 0};
    ctx.h = random_decisions(rng, ctx.net.node_count());
    ctx.policy.delta = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(config.max_delta));
    ctx.v = static_cast<NodeId>(rng() % ctx.net.node_count());
    return ctx;
}

// Copy of h with random flips restricted to the complement of `frozen`
// (and of v itself when freeze_v is set).
DecisionVector perturb_outside(std::mt19937_64& rng, const DecisionVector& h,
                               const std::vector<NodeId>& frozen, NodeId v, bool freeze_v) {
    std::vector<std::uint8_t> out = h.values();
    std::vector<std::uint8_t> locked(out.size(), 0);
    for (NodeId u : frozen) locked[u] = 1;
    if (freeze_v) locked[v] = 1;
    for (std::size_t u = 0; u < out.size(); ++u)
        if (!locked[u] && (rng() & 1)) out[u] ^= 1;
    return DecisionVector(std::move(out));
}

// Two disjoint copies of a random labeled motif embedded under a random id
// permutation, plus noise nodes kept clear of both copies. ids[0] and ids[k]
// are the twin images of the motif's first node.
struct TwinInstance {
    AttributedNetwork net;
    DecisionVector h;
    NodeId u;
    NodeId v;
};

TwinInstance twin_instance(const SuiteConfig& config, std::uint64_t trial_seed) {
    std::mt19937_64 rng(trial_seed);
    std::uniform_int_distribution<std::size_t> motif_dist(2, 6);
    const std::size_t k = motif_dist(rng);
    const std::size_t extra_cap = config.max_nodes > 2 * k ? config.max_nodes - 2 * k : 0;
    std::uniform_int_distribution<std::size_t> extra_dist(0, extra_cap);
    const std::size_t extra = extra_dist(rng);
    const std::size_t n = 2 * k + extra;

    std::vector<NodeId> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    std::shuffle(ids.begin(), ids.end(), rng);

    std::vector<int> protected_values(n, 0);
    std::vector<std::uint8_t> outcomes(n, 0);
    std::vector<std::uint8_t> decisions(n, 0);
    for (std::size_t i = 0; i < k; ++i) {
        const int p = static_cast<int>(rng() & 1);
        const auto y = static_cast<std::uint8_t>(rng() & 1);
        const auto d = static_cast<std::uint8_t>(rng() & 1);
        protected_values[ids[i]] = protected_values[ids[k + i]] = p;
        outcomes[ids[i]] = outcomes[ids[k + i]] = y;
        decisions[ids[i]] = decisions[ids[k + i]] = d;
    }
    for (std::size_t i = 2 * k; i < n; ++i) {
        protected_values[ids[i]] = static_cast<int>(rng() & 1);
        outcomes[ids[i]] = static_cast<std::uint8_t>(rng() & 1);
        decisions[ids[i]] = static_cast<std::uint8_t>(rng() & 1);
    }

    std::vector<Edge> edges;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            if (rng() & 1) {
                edges.emplace_back(ids[i], ids[j]);
                edges.emplace_back(ids[k + i], ids[k + j]);
            }
        }
    }
    for (std::size_t i = 2 * k; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if ((rng() & 3) == 0) edges.emplace_back(ids[i], ids[j]);

    AttributedNetwork net(n, std::move(edges), std::move(protected_values), std::move(outcomes));
    return TwinInstance{std::move(net), DecisionVector(std::move(decisions)), ids[0], ids[k]};
}

struct TrialOutcome {
    CheckResult result;
    NodeId node = 0;
};

using TrialFn = std::function<TrialOutcome(std::uint64_t trial_seed)>;

AxiomVerdict drive(AxiomId id, std::size_t trials, std::uint64_t base_seed,
                   std::size_t max_attempt_factor, const TrialFn& trial) {
    AxiomVerdict verdict;
    verdict.axiom = id;
    const std::size_t max_attempts = trials * max_attempt_factor;
    while (verdict.satisfied < trials && verdict.attempted < max_attempts) {
        const std::uint64_t trial_seed =
            base_seed + 0x9e3779b97f4a7c15ULL * (verdict.attempted + 1);
        ++verdict.attempted;
        const TrialOutcome outcome = trial(trial_seed);
        if (outcome.result.outcome == CheckOutcome::skipped) continue;
        ++verdict.satisfied;
        if (outcome.result.outcome == CheckOutcome::fail)
            verdict.violations.push_back(
                AxiomWitness{trial_seed, outcome.node, outcome.result.detail});
    }
    return verdict;
}

}  // namespace

SuiteReport run_axiom_suite(const SuiteConfig& config, std::size_t trials, std::uint64_t seed,
                            const PerceptionHooks& hooks) {
    if (trials < 1) throw arg_error("axiom suite needs at least one trial");

    SuiteReport report;
    report.trials_target = trials;

    report.verdicts.push_back(drive(
        AxiomId::locality, trials, seed ^ 0x10c4117eULL, config.max_attempt_factor,
        [&](std::uint64_t ts) -> TrialOutcome {
            TrialContext ctx = random_trial(config, ts);
            std::mt19937_64 rng(ts ^ 0xfeed);
            const auto frozen = neighborhood(ctx.net, ctx.v, ctx.policy.delta);
            const DecisionVector h2 = perturb_outside(rng, ctx.h, frozen, ctx.v, true);
            return {check_locality(ctx.net, ctx.v, ctx.h, h2, ctx.policy, hooks), ctx.v};
        }));

    report.verdicts.push_back(drive(
        AxiomId::monotonicity, trials, seed ^ 0x3030501ULL, config.max_attempt_factor,
        [&](std::uint64_t ts) -> TrialOutcome {
            TrialContext ctx = random_trial(config, ts);
            std::mt19937_64 rng(ts ^ 0xfeed);
            ctx.h.set(ctx.v, 0);
            const auto frozen = neighborhood(ctx.net, ctx.v, ctx.policy.delta);
            DecisionVector h2 = perturb_outside(rng, ctx.h, frozen, ctx.v, true);
            h2.set(ctx.v, 1);
            return {check_monotonicity(ctx.net, ctx.v, ctx.h, h2, ctx.policy, hooks), ctx.v};
        }));

    report.verdicts.push_back(drive(
        AxiomId::neighborhood_expectation, trials, seed ^ 0x4e1647ULL, config.max_attempt_factor,
        [&](std::uint64_t ts) -> TrialOutcome {
            TrialContext ctx = random_trial(config, ts);
            std::mt19937_64 rng(ts ^ 0xfeed);
            const auto frozen = neighborhood(ctx.net, ctx.v, ctx.policy.delta);
            DecisionVector h2 = perturb_outside(rng, ctx.h, frozen, ctx.v, true);
            for (NodeId u : frozen)
                if (ctx.h[u] == 0 && (rng() & 1)) h2.set(u, 1);  // raise, never lower
            return {check_neighborhood_expectation(ctx.net, ctx.v, ctx.h, h2, ctx.policy, hooks),
                    ctx.v};
        }));

    report.verdicts.push_back(drive(
        AxiomId::homogeneity, trials, seed ^ 0x40604e17ULL, config.max_attempt_factor,
        [&](std::uint64_t ts) -> TrialOutcome {
            TwinInstance twins = twin_instance(config, ts);
            std::mt19937_64 rng(ts ^ 0xfeed);
            ExpectationPolicy policy;
            policy.delta = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(config.max_delta));
            return {check_homogeneity(twins.net, twins.u, twins.v, twins.h, policy, hooks),
                    twins.u};
        }));

    report.verdicts.push_back(drive(
        AxiomId::expectation_invariance, trials, seed ^ 0xe1a11ULL, config.max_attempt_factor,
        [&](std::uint64_t ts) -> TrialOutcome {
            TrialContext ctx = random_trial(config, ts);
            std::mt19937_64 rng(ts ^ 0xfeed);
            const auto frozen = neighborhood(ctx.net, ctx.v, ctx.policy.delta);
            // The node's own decision is free: the expectation must ignore it.
            const DecisionVector h2 = perturb_outside(rng, ctx.h, frozen, ctx.v, false);
            const auto e1 = hooks.expectation(ctx.net, ctx.h, ctx.v, ctx.policy);
            const auto e2 = hooks.expectation(ctx.net, h2, ctx.v, ctx.policy);
            return {pass_or_fail(e1 == e2,
                                 "expectation changed although neighborhood decisions did not"),
                    ctx.v};
        }));

    report.verdicts.push_back(drive(
        AxiomId::expectation_monotonicity, trials, seed ^ 0xe2f0a0ULL, config.max_attempt_factor,
        [&](std::uint64_t ts) -> TrialOutcome {
            TrialContext ctx = random_trial(config, ts);
            std::mt19937_64 rng(ts ^ 0xfeed);
            const auto frozen = neighborhood(ctx.net, ctx.v, ctx.policy.delta);
            DecisionVector h2 = perturb_outside(rng, ctx.h, frozen, ctx.v, false);
            for (NodeId u : frozen)
                if (ctx.h[u] == 0 && (rng() & 1)) h2.set(u, 1);
            const auto e1 = hooks.expectation(ctx.net, ctx.h, ctx.v, ctx.policy);
            const auto e2 = hooks.expectation(ctx.net, h2, ctx.v, ctx.policy);
            const bool ok = (e1.has_value() == e2.has_value()) && (!e1 || *e1 <= *e2);
            return {pass_or_fail(ok, "expectation dropped although neighbor decisions rose"),
                    ctx.v};
        }));

    report.verdicts.push_back(drive(
        AxiomId::expectation_isomorphism, trials, seed ^ 0xe3150ULL, config.max_attempt_factor,
        [&](std::uint64_t ts) -> TrialOutcome {
            TwinInstance twins = twin_instance(config, ts);
            std::mt19937_64 rng(ts ^ 0xfeed);
            ExpectationPolicy policy;
            policy.delta = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(config.max_delta));
            const EgoNet ego_u = ego_network(twins.net, twins.u, policy.delta, twins.h);
            const EgoNet ego_v = ego_network(twins.net, twins.v, policy.delta, twins.h);
            if (!decision_isomorphic(ego_u, ego_v))
                return {CheckResult{CheckOutcome::skipped, "twins are not isomorphic"}, twins.u};
            const auto eu = hooks.expectation(twins.net, twins.h, twins.u, policy);
            const auto ev = hooks.expectation(twins.net, twins.h, twins.v, policy);
            return {pass_or_fail(eu == ev, "isomorphic egos with different expectation"), twins.u};
        }));

    report.verdicts.push_back(drive(
        AxiomId::tie_equality, trials, seed ^ 0x71eULL, config.max_attempt_factor,
        [&](std::uint64_t ts) -> TrialOutcome {
            TrialContext ctx = random_trial(config, ts);
            // Force E[h(v)] = h(v) exactly: every same-outcome neighbor copies
            // the node's decision. A node without peers has expectation 0, so
            // its decision is pinned to 0 to keep the tie.
            const auto nbrs = neighborhood(ctx.net, ctx.v, ctx.policy.delta);
            std::size_t peers = 0;
            for (NodeId u : nbrs)
                if (ctx.net.outcome(u) == ctx.net.outcome(ctx.v)) ++peers;
            if (peers == 0) ctx.h.set(ctx.v, 0);
            for (NodeId u : nbrs)
                if (ctx.net.outcome(u) == ctx.net.outcome(ctx.v)) ctx.h.set(u, ctx.h[ctx.v]);
            const auto f = hooks.perceive(ctx.net, ctx.h, ctx.v, ctx.policy);
            return {pass_or_fail(f == 1,
                                 "tie between expectation and decision not perceived fair"),
                    ctx.v};
        }));

    return report;
}

bool SuiteReport::all_passed() const {
    for (const AxiomVerdict& v : verdicts)
        if (!v.passed(trials_target)) return false;
    return true;
}

void write_suite_csv(std::ostream& out, const SuiteReport& report,
                     const std::vector<std::string>& header_lines) {
    for (const std::string& line : header_lines) out << "# " << line << "\n";
    out << "axiom,attempted,satisfied,violations\n";
    for (const AxiomVerdict& v : report.verdicts)
        out << axiom_name(v.axiom) << ',' << v.attempted << ',' << v.satisfied << ','
            << v.violations.size() << "\n";
}

}  // namespace netfair
