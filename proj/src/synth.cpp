#include "netfair/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>

#include <json.hpp>

#include "netfair/metrics.hpp"
#include "netfair/visibility.hpp"

namespace netfair {

namespace {

std::invalid_argument arg_error(const std::string& what) {
    return std::invalid_argument("netfair: " + what);
}

void validate(const SynthConfig& c) {
    if (c.group_sizes.empty()) throw arg_error("synth config needs at least one group");
    for (std::size_t n : c.group_sizes)
        if (n < 1) throw arg_error("every group needs at least one node");
    auto prob_ok = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!prob_ok(c.intra_edge_prob) || !prob_ok(c.inter_edge_prob) || !prob_ok(c.outcome_rate))
        throw arg_error("probabilities must lie in [0,1]");
    if (c.degree_skew <= 0.0) throw arg_error("degree skew must be positive");
}

std::size_t round_half_up(double x) {
    return static_cast<std::size_t>(std::floor(x + 0.5));
}

}  // namespace

AttributedNetwork random_attributed_graph(const SynthConfig& config) {
    validate(config);
    std::size_t n = 0;
    for (std::size_t s : config.group_sizes) n += s;

    std::vector<int> group_of(n);
    {
        std::size_t v = 0;
        for (std::size_t g = 0; g < config.group_sizes.size(); ++g)
            for (std::size_t i = 0; i < config.group_sizes[g]; ++i) group_of[v++] = static_cast<int>(g);
    }

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    const double skew_w = std::sqrt(config.degree_skew);

    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double p = group_of[i] == group_of[j] ? config.intra_edge_prob : config.inter_edge_prob;
            if (group_of[i] == 0) p *= skew_w;
            if (group_of[j] == 0) p *= skew_w;
            p = std::min(p, 1.0);
            if (coin(rng) < p)
                edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
        }
    }

    std::vector<std::uint8_t> outcomes(n);
    for (std::size_t v = 0; v < n; ++v) outcomes[v] = coin(rng) < config.outcome_rate ? 1 : 0;

    if (config.ensure_outcome_mix) {
        std::size_t start = 0;
        for (std::size_t g = 0; g < config.group_sizes.size(); ++g) {
            const std::size_t size = config.group_sizes[g];
            if (size < 2)
                throw arg_error("ensure_outcome_mix needs groups of at least two nodes");
            std::size_t ones = 0;
            for (std::size_t i = 0; i < size; ++i) ones += outcomes[start + i];
            if (ones == 0) outcomes[start + size - 1] = 1;
            else if (ones == size) outcomes[start + size - 1] = 0;
            start += size;
        }
    }

    if (config.force_connected && n > 1) {
        AttributedNetwork probe(n, edges, group_of, outcomes);
        const ComponentPartition parts = connected_components(probe);
        for (std::size_t c = 1; c < parts.count(); ++c)
            edges.emplace_back(parts.components[c - 1].front(), parts.components[c].front());
    }

    return AttributedNetwork(n, std::move(edges), std::move(group_of), std::move(outcomes));
}

DecisionVector biased_decision(const AttributedNetwork& net, const SynthConfig& config) {
    const GroupPartition partition = GroupPartition::from_network(net);
    const std::size_t group_count = partition.group_count();
    if (config.tpr_targets.size() != group_count || config.fpr_targets.size() != group_count)
        throw arg_error("biased_decision needs one TPR and one FPR target per group (" +
                        std::to_string(group_count) + " groups)");
    for (double t : config.tpr_targets)
        if (t < 0.0 || t > 1.0) throw arg_error("TPR targets must lie in [0,1]");
    for (double t : config.fpr_targets)
        if (t < 0.0 || t > 1.0) throw arg_error("FPR targets must lie in [0,1]");

    std::seed_seq seq{config.seed, std::uint64_t{0xb1a5edDEC15100}};
    std::mt19937_64 rng(seq);

    DecisionVector h = DecisionVector::zeros(net.node_count());
    std::size_t gi = 0;
    for (const auto& [key, members] : partition.groups) {
        std::vector<NodeId> positives, negatives;
        for (NodeId v : members)
            (net.outcome(v) ? positives : negatives).push_back(v);

        if (positives.empty())
            throw arg_error("group " + std::to_string(key) +
                            " has no positive outcomes; its TPR target is unattainable");
        if (negatives.empty())
            throw arg_error("group " + std::to_string(key) +
                            " has no negative outcomes; its FPR target is unattainable");

        std::shuffle(positives.begin(), positives.end(), rng);
        std::shuffle(negatives.begin(), negatives.end(), rng);
        const std::size_t accept_pos =
            round_half_up(config.tpr_targets[gi] * static_cast<double>(positives.size()));
        const std::size_t accept_neg =
            round_half_up(config.fpr_targets[gi] * static_cast<double>(negatives.size()));
        for (std::size_t i = 0; i < accept_pos; ++i) h.set(positives[i], 1);
        for (std::size_t i = 0; i < accept_neg; ++i) h.set(negatives[i], 1);
        ++gi;
    }
    return h;
}

namespace {

// One pitfall construction attempt. Group 0 is a dense ring-backed community
// with a favorable decision pattern; group 1 is a handful of hubs plus many
// degree-1 leaves, mostly rejected. Rejected leaves see only their hub, whose
// decision is 0, so their peer expectation vanishes and they perceive the
// outcome as fair.
PitfallInstance build_pitfall(std::uint64_t seed) {
    constexpr std::size_t kGroup0 = 24;
    constexpr std::size_t kHubs = 6;
    constexpr std::size_t kLeaves = 50;
    constexpr std::size_t kN = kGroup0 + kHubs + kLeaves;
    constexpr std::size_t kHubBase = kGroup0;
    constexpr std::size_t kLeafBase = kGroup0 + kHubs;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    std::vector<int> protected_values(kN, 1);
    std::vector<std::uint8_t> outcomes(kN, 0);
    std::vector<std::uint8_t> decisions(kN, 0);

    for (std::size_t v = 0; v < kGroup0; ++v) protected_values[v] = 0;

    // Group 0: half acceptable; 10 of 12 acceptable accepted, 4 of 12
    // unacceptable accepted. Acceptance 14/24.
    for (std::size_t v = 0; v < 12; ++v) outcomes[v] = 1;
    for (std::size_t v = 0; v < 10; ++v) decisions[v] = 1;
    for (std::size_t v = 12; v < 16; ++v) decisions[v] = 1;

    // Hubs: mixed outcomes, all rejected.
    for (std::size_t i = 0; i < kHubs / 2; ++i) outcomes[kHubBase + i] = 1;

    // Leaves: random outcomes; 8 random leaves accepted. Acceptance of
    // group 1 is 8/56.
    for (std::size_t i = 0; i < kLeaves; ++i)
        outcomes[kLeafBase + i] = coin(rng) < 0.5 ? 1 : 0;
    {
        std::vector<std::size_t> leaf_ids(kLeaves);
        for (std::size_t i = 0; i < kLeaves; ++i) leaf_ids[i] = kLeafBase + i;
        std::shuffle(leaf_ids.begin(), leaf_ids.end(), rng);
        for (std::size_t i = 0; i < 8; ++i) decisions[leaf_ids[i]] = 1;
    }

    std::set<Edge> edges;
    auto add_edge = [&edges](std::size_t a, std::size_t b) {
        if (a == b) return;
        if (a > b) std::swap(a, b);
        edges.emplace(static_cast<NodeId>(a), static_cast<NodeId>(b));
    };

    // Dense group 0: ring for connectivity plus random infill.
    for (std::size_t v = 0; v < kGroup0; ++v) add_edge(v, (v + 1) % kGroup0);
    for (std::size_t i = 0; i < kGroup0; ++i)
        for (std::size_t j = i + 1; j < kGroup0; ++j)
            if (coin(rng) < 0.5) add_edge(i, j);

    // Hub backbone, bridged into group 0.
    for (std::size_t i = 0; i + 1 < kHubs; ++i) add_edge(kHubBase + i, kHubBase + i + 1);
    add_edge(0, kHubBase);

    // Each leaf hangs off a random hub.
    std::uniform_int_distribution<std::size_t> hub_pick(0, kHubs - 1);
    for (std::size_t i = 0; i < kLeaves; ++i)
        add_edge(kLeafBase + i, kHubBase + hub_pick(rng));

    // Every rejected group-0 node must see an accepted same-outcome peer so
    // its expectation stays positive at delta = 1.
    for (std::size_t v = 0; v < kGroup0; ++v) {
        if (decisions[v] == 1) continue;
        const std::size_t lo = outcomes[v] == 1 ? 0 : 12;
        const std::size_t hi = outcomes[v] == 1 ? 10 : 16;
        bool covered = false;
        for (std::size_t u = lo; u < hi && !covered; ++u) {
            Edge e{static_cast<NodeId>(std::min(u, v)), static_cast<NodeId>(std::max(u, v))};
            covered = u != v && edges.count(e) > 0;
        }
        if (!covered) add_edge(v, lo);
    }

    AttributedNetwork net(kN, std::vector<Edge>(edges.begin(), edges.end()),
                          std::move(protected_values), std::move(outcomes));
    return PitfallInstance{std::move(net), DecisionVector(std::move(decisions))};
}

std::string check_pitfall(const PitfallInstance& inst) {
    const AttributedNetwork& net = inst.network;
    const DecisionVector& h = inst.decisions;

    if (!connected_components(net).connected()) return "network is not connected";
    const ConfusionCounts counts = confusion(net, h);
    const auto t = tpr(counts);
    const auto f = fpr(counts);
    if (!t || *t <= 0.0) return "TPR is not positive";
    if (!f || *f <= 0.0) return "FPR is not positive";

    const GroupPartition partition = GroupPartition::from_network(net);
    const std::vector<NodeId>& g0 = partition.groups.at(0);
    const std::vector<NodeId>& g1 = partition.groups.at(1);

    double deg0 = 0.0, deg1 = 0.0;
    for (NodeId v : g0) deg0 += static_cast<double>(net.degree(v));
    for (NodeId v : g1) deg1 += static_cast<double>(net.degree(v));
    deg0 /= static_cast<double>(g0.size());
    deg1 /= static_cast<double>(g1.size());
    if (deg0 <= deg1) return "group 0 does not have the higher mean degree";

    const double acc0 = acceptance_probability(net, h, g0);
    const double acc1 = acceptance_probability(net, h, g1);
    if (acc0 <= acc1) return "group 0 does not have the higher acceptance probability";

    ExpectationPolicy local{1, DegenerateRule::zero_expectation};
    const std::vector<PerceptionRecord> records = perceive_all(net, h, local);
    const auto fv0 = fairness_visibility(records, g0);
    const auto fv1 = fairness_visibility(records, g1);
    if (!(fv1.value && fv0.value && *fv1.value > *fv0.value))
        return "visibility ordering at delta=1 is not reversed";

    ExpectationPolicy saturated{std::max(1, eccentricity_bound(net)),
                                DegenerateRule::zero_expectation};
    const std::vector<PerceptionRecord> terminal = perceive_all(net, h, saturated);
    const auto tv0 = fairness_visibility(terminal, g0);
    const auto tv1 = fairness_visibility(terminal, g1);
    if (!(tv0.value && tv1.value && *tv0.value > *tv1.value))
        return "visibility ordering at saturation does not match acceptance";

    return {};
}

}  // namespace

PitfallInstance pitfall_instance(std::uint64_t seed) {
    constexpr int kAttempts = 8;
    std::string last_failure;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        PitfallInstance inst = build_pitfall(seed + 0x9e3779b97f4a7c15ULL * attempt);
        last_failure = check_pitfall(inst);
        if (last_failure.empty()) return inst;
    }
    throw PitfallError("netfair: pitfall construction failed for seed " + std::to_string(seed) +
                       " after " + std::to_string(kAttempts) + " attempts: " + last_failure);
}

SynthConfig load_synth_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw arg_error("cannot open synth config " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw arg_error("synth config " + path.string() + ": " + e.what());
    }
    SynthConfig c;
    try {
        if (j.contains("group_sizes")) c.group_sizes = j["group_sizes"].get<std::vector<std::size_t>>();
        if (j.contains("intra_edge_prob")) c.intra_edge_prob = j["intra_edge_prob"].get<double>();
        if (j.contains("inter_edge_prob")) c.inter_edge_prob = j["inter_edge_prob"].get<double>();
        if (j.contains("degree_skew")) c.degree_skew = j["degree_skew"].get<double>();
        if (j.contains("outcome_rate")) c.outcome_rate = j["outcome_rate"].get<double>();
        if (j.contains("tpr_targets")) c.tpr_targets = j["tpr_targets"].get<std::vector<double>>();
        if (j.contains("fpr_targets")) c.fpr_targets = j["fpr_targets"].get<std::vector<double>>();
        if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("force_connected")) c.force_connected = j["force_connected"].get<bool>();
        if (j.contains("ensure_outcome_mix"))
            c.ensure_outcome_mix = j["ensure_outcome_mix"].get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw arg_error("synth config " + path.string() + ": " + e.what());
    }
    validate(c);
    return c;
}

}  // namespace netfair
