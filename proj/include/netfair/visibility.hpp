#ifndef NETFAIR_VISIBILITY_HPP
#define NETFAIR_VISIBILITY_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "netfair/perception.hpp"

namespace netfair {

// Nodes keyed by protected value. Groups are disjoint, nonempty, and cover
// the whole node set.
struct GroupPartition {
    std::map<int, std::vector<NodeId>> groups;

    static GroupPartition from_network(const AttributedNetwork& net);
    static GroupPartition from_groups(std::map<int, std::vector<NodeId>> groups,
                                      std::size_t node_count);

    std::size_t group_count() const { return groups.size(); }
};

// Share of a group perceiving the decision as fair. Records whose expectation
// is absent (mark_ineligible nodes) are excluded and the denominator shrinks
// to the eligible count; value is empty when that denominator reaches 0.
struct VisibilityValue {
    std::size_t fair_count = 0;
    std::size_t denominator = 0;
    std::size_t excluded = 0;
    std::optional<double> value;
};

VisibilityValue fairness_visibility(const std::vector<PerceptionRecord>& records,
                                    const std::vector<NodeId>& group);

// Largest pairwise |FV(c) - FV(c')| over the partition. Parity holds when
// the gap is 0 (callers may compare against their own epsilon).
double visibility_parity_gap(const std::vector<PerceptionRecord>& records,
                             const GroupPartition& partition);

// P(h = 1 | group).
double acceptance_probability(const AttributedNetwork& net, const DecisionVector& h,
                              const std::vector<NodeId>& group);

// Largest pairwise acceptance-probability difference. Reads only h and the
// partition, so it is independent of delta and the perception policy.
double demographic_parity_gap(const AttributedNetwork& net, const DecisionVector& h,
                              const GroupPartition& partition);

struct SweepRow {
    int delta = 0;
    int group = 0;
    VisibilityValue visibility;
    double acceptance = 0.0;
};

struct SweepTable {
    int delta_max = 0;
    std::vector<SweepRow> rows;  // ordered by (delta, group)
};

// Recomputes perception at every radius 1..delta_max and records the fairness
// visibility of each group, with the group's acceptance probability as the
// reference value.
SweepTable visibility_sweep(const AttributedNetwork& net, const DecisionVector& h,
                            const GroupPartition& partition, int delta_max,
                            const ExpectationPolicy& policy);

// delta,group,fairness_visibility,acceptance_probability,fair_count,denominator
void write_sweep_csv(std::ostream& out, const SweepTable& table,
                     const std::vector<std::string>& header_lines = {});

struct ConvergenceReport {
    bool connected = false;
    std::optional<double> tpr_value;
    std::optional<double> fpr_value;
    std::vector<std::string> failed_hypotheses;  // empty iff hypotheses hold
    int saturation_delta = 0;

    struct GroupRow {
        int group = 0;
        VisibilityValue terminal_visibility;
        double acceptance = 0.0;
        bool equal = false;
    };
    std::vector<GroupRow> groups;

    bool hypotheses_hold() const { return failed_hypotheses.empty(); }
    // True when the hypotheses hold and every group's terminal visibility
    // equals its acceptance probability exactly.
    bool converged = false;
};

// Verifies the convergence hypotheses (connected network, nonzero TPR and
// FPR), evaluates the sweep at the saturation radius, and checks that each
// group's fairness visibility lands exactly on its acceptance probability.
// Hypothesis failures are reported, never thrown.
ConvergenceReport convergence_check(const AttributedNetwork& net, const DecisionVector& h,
                                    const GroupPartition& partition,
                                    const ExpectationPolicy& policy);

}  // namespace netfair

#endif
