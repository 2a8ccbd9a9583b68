#ifndef NETFAIR_METRICS_HPP
#define NETFAIR_METRICS_HPP

#include <optional>

#include "netfair/graph.hpp"

namespace netfair {

struct ConfusionCounts {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;
    std::size_t fn = 0;

    std::size_t total() const { return tp + fp + tn + fn; }
    bool operator==(const ConfusionCounts&) const = default;
};

// Tallies of the four (outcome, decision) cells over a node group.
ConfusionCounts confusion(const AttributedNetwork& net, const DecisionVector& h,
                          const std::vector<NodeId>& group);

// Whole-network tallies.
ConfusionCounts confusion(const AttributedNetwork& net, const DecisionVector& h);

// tp / (tp + fn); empty when the group has no positive outcomes.
std::optional<double> tpr(const ConfusionCounts& counts);

// fp / (fp + tn); empty when the group has no negative outcomes.
std::optional<double> fpr(const ConfusionCounts& counts);

}  // namespace netfair

#endif
