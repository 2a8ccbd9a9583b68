#ifndef NETFAIR_SYNTH_HPP
#define NETFAIR_SYNTH_HPP

#include <filesystem>

#include "netfair/graph.hpp"

namespace netfair {

// Two-block-style generator configuration. Group g's pair probabilities are
// scaled by sqrt(degree_skew) per group-0 endpoint, so group 0 ends up with
// roughly degree_skew times the mean degree of the other groups when the
// cross-group term is small.
struct SynthConfig {
    std::vector<std::size_t> group_sizes{50, 50};
    double intra_edge_prob = 0.1;
    double inter_edge_prob = 0.02;
    double degree_skew = 1.0;
    double outcome_rate = 0.5;
    std::vector<double> tpr_targets;  // per group, required by biased_decision
    std::vector<double> fpr_targets;
    std::uint64_t seed = 0;
    bool force_connected = false;    // chain components together after sampling
    bool ensure_outcome_mix = false; // guarantee both outcome classes per group
};

// Deterministic for a given config: same seed, same network.
AttributedNetwork random_attributed_graph(const SynthConfig& config);

// Starts from the fair oracle h = y and flips decisions so each group's
// empirical TPR/FPR hit the configured targets as closely as integer counts
// allow (rounding half up). Throws when a target is set for an outcome class
// the group does not contain.
DecisionVector biased_decision(const AttributedNetwork& net, const SynthConfig& config);

struct PitfallInstance {
    AttributedNetwork network;
    DecisionVector decisions;
};

class PitfallError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Connected two-group network where group 0 has the higher mean degree and
// the strictly higher acceptance probability, yet group 1 shows the higher
// fairness visibility at delta = 1. At the saturation radius the ordering
// flips to match the acceptance probabilities. The construction is validated
// against the perception pipeline before being returned; PitfallError carries
// a diagnostic if every attempt for the seed fails.
PitfallInstance pitfall_instance(std::uint64_t seed);

// Reads a SynthConfig from a JSON object file; missing fields keep defaults.
SynthConfig load_synth_config(const std::filesystem::path& path);

}  // namespace netfair

#endif
