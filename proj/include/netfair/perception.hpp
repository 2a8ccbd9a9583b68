#ifndef NETFAIR_PERCEPTION_HPP
#define NETFAIR_PERCEPTION_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "netfair/graph.hpp"

namespace netfair {

// What to do when a node has no neighbor sharing its outcome, so the peer
// expectation divides by zero: treat the expectation as 0 (the node perceives
// any decision as fair), or flag the node so aggregations can exclude it.
enum class DegenerateRule { zero_expectation, mark_ineligible };

struct ExpectationPolicy {
    int delta = 1;
    DegenerateRule degenerate = DegenerateRule::zero_expectation;
};

struct PerceptionRecord {
    NodeId node = 0;
    std::uint8_t outcome = 0;
    std::uint8_t decision = 0;
    std::optional<double> expectation;  // absent only under mark_ineligible
    std::uint8_t fair = 0;
    bool eligible = true;               // false when the peer denominator was 0
};

struct PerceptionTotals {
    std::size_t fair = 0;
    std::size_t unfair = 0;
    std::size_t ineligible = 0;
};

// Average decision among delta-neighbors sharing v's outcome. Returns an
// empty optional when the denominator is zero and the policy marks such
// nodes ineligible; returns 0 under the zero_expectation rule. The value is
// an exact small-integer rational.
std::optional<double> peer_expectation(const AttributedNetwork& net, const DecisionVector& h,
                                       NodeId v, const ExpectationPolicy& policy);

// 1 iff the expected decision is at most the actual decision. Ties count as
// fair; the comparison is exact (integer numerator against h(v)), so no
// floating-point tolerance is involved. An ineligible node compares against
// an expectation of 0 and is therefore reported fair, with the record's
// eligible flag cleared.
std::uint8_t fairness_perception(const AttributedNetwork& net, const DecisionVector& h,
                                 NodeId v, const ExpectationPolicy& policy);

PerceptionRecord perceive_node(const AttributedNetwork& net, const DecisionVector& h,
                               NodeId v, const ExpectationPolicy& policy);

// One record per node, ordered by node id.
std::vector<PerceptionRecord> perceive_all(const AttributedNetwork& net, const DecisionVector& h,
                                           const ExpectationPolicy& policy);

PerceptionTotals perception_totals(const std::vector<PerceptionRecord>& records);

// Writes the per-node report: node_id,y,h,expectation,fair,eligible.
// header_lines are emitted first, each prefixed with "# ".
void write_perception_csv(std::ostream& out, const std::vector<PerceptionRecord>& records,
                          const std::vector<std::string>& header_lines = {});

}  // namespace netfair

#endif
