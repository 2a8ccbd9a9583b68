#include "netfair/metrics.hpp"

namespace netfair {

ConfusionCounts confusion(const AttributedNetwork& net, const DecisionVector& h,
                          const std::vector<NodeId>& group) {
    net.require_sized(h);
    ConfusionCounts c;
    for (NodeId v : group) {
        net.require_valid(v);
        const bool y = net.outcome(v) != 0;
        const bool d = h[v] != 0;
        if (y && d) ++c.tp;
        else if (!y && d) ++c.fp;
        else if (y && !d) ++c.fn;
        else ++c.tn;
    }
    return c;
}

ConfusionCounts confusion(const AttributedNetwork& net, const DecisionVector& h) {
    net.require_sized(h);
    ConfusionCounts c;
    for (std::size_t v = 0; v < net.node_count(); ++v) {
        const bool y = net.outcome(static_cast<NodeId>(v)) != 0;
        const bool d = h[v] != 0;
        if (y && d) ++c.tp;
        else if (!y && d) ++c.fp;
        else if (y && !d) ++c.fn;
        else ++c.tn;
    }
    return c;
}

std::optional<double> tpr(const ConfusionCounts& counts) {
    const std::size_t denom = counts.tp + counts.fn;
    if (denom == 0) return std::nullopt;
    return static_cast<double>(counts.tp) / static_cast<double>(denom);
}

std::optional<double> fpr(const ConfusionCounts& counts) {
    const std::size_t denom = counts.fp + counts.tn;
    if (denom == 0) return std::nullopt;
    return static_cast<double>(counts.fp) / static_cast<double>(denom);
}

}  // namespace netfair
