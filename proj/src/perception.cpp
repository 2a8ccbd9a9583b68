#include "netfair/perception.hpp"

#include <cstdio>
#include <ostream>

namespace netfair {

namespace {

struct PeerTerms {
    std::size_t favored = 0;  // same-outcome neighbors with h(u) = 1
    std::size_t peers = 0;    // same-outcome neighbors (k1 or k0, per y_v)
};

PeerTerms peer_terms(const AttributedNetwork& net, const DecisionVector& h, NodeId v, int delta) {
    PeerTerms t;
    const std::uint8_t y = net.outcome(v);
    for (NodeId u : neighborhood(net, v, delta)) {
        if (net.outcome(u) != y) continue;
        ++t.peers;
        t.favored += h[u];
    }
    return t;
}

}  // namespace

std::optional<double> peer_expectation(const AttributedNetwork& net, const DecisionVector& h,
                                       NodeId v, const ExpectationPolicy& policy) {
    net.require_sized(h);
    const PeerTerms t = peer_terms(net, h, v, policy.delta);
    if (t.peers == 0) {
        if (policy.degenerate == DegenerateRule::zero_expectation) return 0.0;
        return std::nullopt;
    }
    return static_cast<double>(t.favored) / static_cast<double>(t.peers);
}

std::uint8_t fairness_perception(const AttributedNetwork& net, const DecisionVector& h,
                                 NodeId v, const ExpectationPolicy& policy) {
    net.require_sized(h);
    if (h[v] == 1) return 1;  // the expectation never exceeds 1
    const PeerTerms t = peer_terms(net, h, v, policy.delta);
    return t.favored == 0 ? 1 : 0;  // exact: E <= 0 iff the numerator is 0
}

PerceptionRecord perceive_node(const AttributedNetwork& net, const DecisionVector& h,
                               NodeId v, const ExpectationPolicy& policy) {
    net.require_sized(h);
    const PeerTerms t = peer_terms(net, h, v, policy.delta);
    PerceptionRecord rec;
    rec.node = v;
    rec.outcome = net.outcome(v);
    rec.decision = h[v];
    rec.eligible = t.peers > 0;
    if (rec.eligible) {
        rec.expectation = static_cast<double>(t.favored) / static_cast<double>(t.peers);
        rec.fair = (rec.decision == 1 || t.favored == 0) ? 1 : 0;
    } else {
        if (policy.degenerate == DegenerateRule::zero_expectation) rec.expectation = 0.0;
        rec.fair = 1;  // compares an expectation of 0 against h(v)
    }
    return rec;
}

std::vector<PerceptionRecord> perceive_all(const AttributedNetwork& net, const DecisionVector& h,
                                           const ExpectationPolicy& policy) {
    net.require_sized(h);
    std::vector<PerceptionRecord> records;
    records.reserve(net.node_count());
    for (std::size_t v = 0; v < net.node_count(); ++v)
        records.push_back(perceive_node(net, h, static_cast<NodeId>(v), policy));
    return records;
}

PerceptionTotals perception_totals(const std::vector<PerceptionRecord>& records) {
    PerceptionTotals t;
    for (const PerceptionRecord& rec : records) {
        if (!rec.eligible) ++t.ineligible;
        if (rec.fair) ++t.fair;
        else ++t.unfair;
    }
    return t;
}

void write_perception_csv(std::ostream& out, const std::vector<PerceptionRecord>& records,
                          const std::vector<std::string>& header_lines) {
    for (const std::string& line : header_lines) out << "# " << line << "\n";
    out << "node_id,y,h,expectation,fair,eligible\n";
    char buf[64];
    for (const PerceptionRecord& rec : records) {
        out << rec.node << ',' << int(rec.outcome) << ',' << int(rec.decision) << ',';
        if (rec.expectation) {
            std::snprintf(buf, sizeof(buf), "%.12g", *rec.expectation);
            out << buf;
        }
        out << ',' << int(rec.fair) << ',' << (rec.eligible ? 1 : 0) << "\n";
    }
}

}  // namespace netfair
