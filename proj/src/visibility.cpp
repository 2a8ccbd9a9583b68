#include "netfair/visibility.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "netfair/metrics.hpp"

namespace netfair {

namespace {

std::invalid_argument arg_error(const std::string& what) {
    return std::invalid_argument("netfair: " + what);
}

// Records from perceive_all are ordered by node id; fall back to a scan when
// handed anything else.
const PerceptionRecord& record_for(const std::vector<PerceptionRecord>& records, NodeId v) {
    if (v < records.size() && records[v].node == v) return records[v];
    for (const PerceptionRecord& rec : records)
        if (rec.node == v) return rec;
    throw arg_error("perception records do not cover node " + std::to_string(v));
}

}  // namespace

GroupPartition GroupPartition::from_network(const AttributedNetwork& net) {
    GroupPartition part;
    for (std::size_t v = 0; v < net.node_count(); ++v)
        part.groups[net.protected_value(static_cast<NodeId>(v))].push_back(static_cast<NodeId>(v));
    return part;
}

GroupPartition GroupPartition::from_groups(std::map<int, std::vector<NodeId>> groups,
                                           std::size_t node_count) {
    std::vector<bool> seen(node_count, false);
    std::size_t covered = 0;
    for (auto& [key, members] : groups) {
        if (members.empty()) throw arg_error("group " + std::to_string(key) + " is empty");
        for (NodeId v : members) {
            if (v >= node_count) throw arg_error("group member out of range");
            if (seen[v]) throw arg_error("node " + std::to_string(v) + " appears in two groups");
            seen[v] = true;
            ++covered;
        }
        std::sort(members.begin(), members.end());
    }
    if (covered != node_count) throw arg_error("groups do not cover every node");
    GroupPartition part;
    part.groups = std::move(groups);
    return part;
}

VisibilityValue fairness_visibility(const std::vector<PerceptionRecord>& records,
                                    const std::vector<NodeId>& group) {
    if (group.empty()) throw arg_error("fairness visibility of an empty group is undefined");
    VisibilityValue v;
    for (NodeId node : group) {
        const PerceptionRecord& rec = record_for(records, node);
        if (!rec.expectation.has_value()) {
            ++v.excluded;
            continue;
        }
        ++v.denominator;
        v.fair_count += rec.fair;
    }
    if (v.denominator > 0)
        v.value = static_cast<double>(v.fair_count) / static_cast<double>(v.denominator);
    return v;
}

double visibility_parity_gap(const std::vector<PerceptionRecord>& records,
                             const GroupPartition& partition) {
    if (partition.group_count() < 2)
        throw arg_error("visibility parity needs at least two groups");
    std::vector<double> values;
    for (const auto& [key, members] : partition.groups) {
        VisibilityValue v = fairness_visibility(records, members);
        if (!v.value)
            throw arg_error("group " + std::to_string(key) +
                            " has no eligible nodes; its visibility is undefined");
        values.push_back(*v.value);
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return *hi - *lo;
}

double acceptance_probability(const AttributedNetwork& net, const DecisionVector& h,
                              const std::vector<NodeId>& group) {
    net.require_sized(h);
    if (group.empty()) throw arg_error("acceptance probability of an empty group is undefined");
    std::size_t accepted = 0;
    for (NodeId v : group) {
        net.require_valid(v);
        accepted += h[v];
    }
    return static_cast<double>(accepted) / static_cast<double>(group.size());
}

double demographic_parity_gap(const AttributedNetwork& net, const DecisionVector& h,
                              const GroupPartition& partition) {
    if (partition.group_count() < 2)
        throw arg_error("demographic parity needs at least two groups");
    std::vector<double> values;
    for (const auto& [key, members] : partition.groups)
        values.push_back(acceptance_probability(net, h, members));
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return *hi - *lo;
}

SweepTable visibility_sweep(const AttributedNetwork& net, const DecisionVector& h,
                            const GroupPartition& partition, int delta_max,
                            const ExpectationPolicy& policy) {
    if (delta_max < 1) throw arg_error("delta_max must be >= 1");
    SweepTable table;
    table.delta_max = delta_max;
    for (int delta = 1; delta <= delta_max; ++delta) {
        ExpectationPolicy p = policy;
        p.delta = delta;
        const std::vector<PerceptionRecord> records = perceive_all(net, h, p);
        for (const auto& [key, members] : partition.groups) {
            SweepRow row;
            row.delta = delta;
            row.group = key;
            row.visibility = fairness_visibility(records, members);
            row.acceptance = acceptance_probability(net, h, members);
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

void write_sweep_csv(std::ostream& out, const SweepTable& table,
                     const std::vector<std::string>& header_lines) {
    for (const std::string& line : header_lines) out << "# " << line << "\n";
    out << "delta,group,fairness_visibility,acceptance_probability,fair_count,denominator\n";
    char buf[64];
    for (const SweepRow& row : table.rows) {
        out << row.delta << ',' << row.group << ',';
        if (row.visibility.value) {
            std::snprintf(buf, sizeof(buf), "%.12g", *row.visibility.value);
            out << buf;
        }
        std::snprintf(buf, sizeof(buf), "%.12g", row.acceptance);
        out << ',' << buf << ',' << row.visibility.fair_count << ',' << row.visibility.denominator
            << "\n";
    }
}

ConvergenceReport convergence_check(const AttributedNetwork& net, const DecisionVector& h,
                                    const GroupPartition& partition,
                                    const ExpectationPolicy& policy) {
    net.require_sized(h);
    ConvergenceReport report;

    report.connected = connected_components(net).connected();
    if (!report.connected) report.failed_hypotheses.push_back("network is not connected");

    const ConfusionCounts counts = confusion(net, h);
    report.tpr_value = tpr(counts);
    report.fpr_value = fpr(counts);
    if (!report.tpr_value || *report.tpr_value <= 0.0)
        report.failed_hypotheses.push_back("true positive rate is not positive");
    if (!report.fpr_value || *report.fpr_value <= 0.0)
        report.failed_hypotheses.push_back("false positive rate is not positive");

    report.saturation_delta = std::max(1, eccentricity_bound(net));

    ExpectationPolicy p = policy;
    p.delta = report.saturation_delta;
    const std::vector<PerceptionRecord> records = perceive_all(net, h, p);

    bool all_equal = true;
    for (const auto& [key, members] : partition.groups) {
        ConvergenceReport::GroupRow row;
        row.group = key;
        row.terminal_visibility = fairness_visibility(records, members);
        row.acceptance = acceptance_probability(net, h, members);
        // Exact check on the underlying counts, not on rounded doubles.
        std::size_t accepted = 0;
        for (NodeId v : members) accepted += h[v];
        row.equal = row.terminal_visibility.denominator == members.size() &&
                    row.terminal_visibility.fair_count == accepted;
        all_equal = all_equal && row.equal;
        report.groups.push_back(std::move(row));
    }
    report.converged = report.hypotheses_hold() && all_equal;
    return report;
}

}  // namespace netfair
