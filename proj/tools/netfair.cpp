// Command-line front end: ingest review data, compute perception reports,
// sweep the neighborhood radius, audit parity, run the axiom suite, and
// generate synthetic instances.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "netfair/axioms.hpp"
#include "netfair/ingest.hpp"
#include "netfair/metrics.hpp"
#include "netfair/synth.hpp"
#include "netfair/visibility.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

// Exit codes: 0 success, 2 usage, 3 data, 4 verification failure.
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitVerification = 4;

struct CliError : std::runtime_error {
    int code;
    CliError(int code, const std::string& what) : std::runtime_error(what), code(code) {}
};

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string fmt_opt(const std::optional<double>& x) {
    return x ? fmt(*x) : std::string("undefined");
}

// Everything a rerun needs, recorded verbatim at the top of each output.
struct Manifest {
    std::vector<std::pair<std::string, std::string>> fields;

    void add(const std::string& key, const std::string& value) { fields.emplace_back(key, value); }

    std::vector<std::string> lines() const {
        std::vector<std::string> out;
        out.push_back(std::string("netfair ") + kVersion);
        for (const auto& [k, v] : fields) out.push_back(k + ": " + v);
        return out;
    }

    json to_json() const {
        json j;
        j["tool"] = std::string("netfair ") + kVersion;
        for (const auto& [k, v] : fields) j[k] = v;
        return j;
    }
};

std::string join_command(int argc, char** argv) {
    std::string out;
    for (int i = 0; i < argc; ++i) {
        if (i) out.push_back(' ');
        out += argv[i];
    }
    return out;
}

std::ofstream open_out(const fs::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path);
    if (!out) throw CliError(kExitData, "cannot write " + path.string());
    return out;
}

void write_json_file(const fs::path& path, const Manifest& manifest, json rows) {
    json j;
    j["manifest"] = manifest.to_json();
    j["rows"] = std::move(rows);
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

// JSON mirrors of the interchange tables.
void write_network_json(const fs::path& dir, const Manifest& manifest,
                        const netfair::AttributedNetwork& net,
                        const netfair::DecisionVector* decisions) {
    json nodes = json::array();
    for (std::size_t v = 0; v < net.node_count(); ++v) {
        const auto node = static_cast<netfair::NodeId>(v);
        json row = {{"node_id", v},
                    {"protected_value", net.protected_value(node)},
                    {"outcome", net.outcome(node)}};
        if (net.attribute_dim() > 0) {
            const auto attrs = net.attributes(node);
            row["attributes"] = std::vector<double>(attrs.begin(), attrs.end());
        }
        nodes.push_back(std::move(row));
    }
    write_json_file(dir / "nodes.json", manifest, std::move(nodes));

    json edges = json::array();
    for (const netfair::Edge& e : net.edges())
        edges.push_back({{"node_id_a", e.first}, {"node_id_b", e.second}});
    write_json_file(dir / "edges.json", manifest, std::move(edges));

    if (decisions) {
        json rows = json::array();
        for (std::size_t v = 0; v < net.node_count(); ++v)
            rows.push_back({{"node_id", v}, {"decision", (*decisions)[v]}});
        write_json_file(dir / "decisions.json", manifest, std::move(rows));
    }
}

netfair::DegenerateRule parse_rule(const std::string& name) {
    if (name == "zero") return netfair::DegenerateRule::zero_expectation;
    if (name == "exclude") return netfair::DegenerateRule::mark_ineligible;
    throw CliError(kExitUsage, "--degenerate must be 'zero' or 'exclude'");
}

struct NetworkInputs {
    std::string nodes;
    std::string edges;
    std::string decisions;
    bool normalize = false;
};

void add_network_options(CLI::App* cmd, NetworkInputs& in, bool with_decisions = true) {
    cmd->add_option("--nodes", in.nodes, "nodes table (node_id,protected_value,outcome[,x*])")
        ->required();
    cmd->add_option("--edges", in.edges, "edges table (node_id_a,node_id_b)")->required();
    if (with_decisions)
        cmd->add_option("--decisions", in.decisions, "decisions table (node_id,decision)")
            ->required();
    cmd->add_flag("--normalize", in.normalize, "drop duplicate edges and self-loops on load");
}

struct LoadedData {
    netfair::AttributedNetwork net;
    netfair::DecisionVector h;
};

LoadedData load_inputs(const NetworkInputs& in) {
    netfair::AttributedNetwork net =
        netfair::load_network(in.nodes, in.edges, in.normalize);
    netfair::DecisionVector h = netfair::load_decisions(in.decisions, net.node_count());
    return {std::move(net), std::move(h)};
}

void print_confusion_block(std::ostream& out, const std::string& title,
                           const netfair::ConfusionCounts& c) {
    out << title << "\n";
    out << "                 y=1      y=0\n";
    char buf[128];
    std::snprintf(buf, sizeof(buf), "    h=1  %11zu %8zu\n", c.tp, c.fp);
    out << buf;
    std::snprintf(buf, sizeof(buf), "    h=0  %11zu %8zu\n", c.fn, c.tn);
    out << buf;
    out << "    TPR " << fmt_opt(netfair::tpr(c)) << "  FPR " << fmt_opt(netfair::fpr(c)) << "\n";
}

// --- ingest ---------------------------------------------------------------

struct IngestOpts {
    std::string papers;
    std::string authors;
    std::string famous_list;
    std::string institution_list;
    std::string attribute = "famous";
    std::string link_rule = "shared";
    double threshold = 6.0;
    bool normalize_ids = false;
    std::string out_dir;
    bool json_out = false;
};

int cmd_ingest(const IngestOpts& opts, const std::string& command) {
    auto papers = netfair::load_papers(opts.papers);
    if (papers.empty()) throw CliError(kExitData, opts.papers + ": no paper rows");
    auto authors = netfair::load_authors(opts.authors);

    netfair::ProtectedSpec spec;
    if (opts.attribute == "famous") {
        spec.choice = netfair::ProtectedAttribute::famous_author;
        if (opts.famous_list.empty())
            throw CliError(kExitUsage, "--attribute famous requires --famous LIST");
        spec.famous_author_ids = netfair::load_name_list(opts.famous_list);
    } else if (opts.attribute == "top") {
        spec.choice = netfair::ProtectedAttribute::top_institution;
        if (opts.institution_list.empty())
            throw CliError(kExitUsage, "--attribute top requires --top-institutions LIST");
        spec.top_institution_names = netfair::load_name_list(opts.institution_list);
    } else {
        throw CliError(kExitUsage, "--attribute must be 'famous' or 'top'");
    }
    if (opts.normalize_ids) netfair::normalize_author_ids(papers, authors, &spec.famous_author_ids);

    netfair::LinkRule rule;
    if (opts.link_rule == "shared") rule = netfair::LinkRule::shared_author;
    else if (opts.link_rule == "collab") rule = netfair::LinkRule::shared_author_or_collaboration;
    else throw CliError(kExitUsage, "--link-rule must be 'shared' or 'collab'");

    const netfair::AttributedNetwork net =
        netfair::build_review_network(papers, authors, rule, spec, opts.threshold);
    const netfair::DecisionVector h = netfair::acceptance_decisions(papers);

    Manifest manifest;
    manifest.add("command", command);
    manifest.add("attribute", opts.attribute);
    manifest.add("link_rule", opts.link_rule);
    manifest.add("threshold", fmt(opts.threshold));

    netfair::ExportOptions export_opts;
    export_opts.decisions = &h;
    export_opts.header_lines = manifest.lines();
    netfair::export_network(net, opts.out_dir, export_opts);

    std::ostringstream summary;
    summary << "nodes: " << net.node_count() << "\n";
    summary << "edges: " << net.edge_count() << "\n";
    const auto partition = netfair::GroupPartition::from_network(net);
    json group_rows = json::array();
    for (const auto& [key, members] : partition.groups) {
        const auto counts = netfair::confusion(net, h, members);
        std::ostringstream title;
        title << "group protected_value=" << key << " (" << members.size() << " papers)";
        print_confusion_block(summary, title.str(), counts);
        const double acc = netfair::acceptance_probability(net, h, members);
        summary << "    acceptance " << fmt(acc) << "\n";
        group_rows.push_back({{"group", key},
                              {"size", members.size()},
                              {"tp", counts.tp},
                              {"fp", counts.fp},
                              {"fn", counts.fn},
                              {"tn", counts.tn},
                              {"acceptance", acc}});
    }
    print_confusion_block(summary, "all papers", netfair::confusion(net, h));

    auto out = open_out(fs::path(opts.out_dir) / "summary.txt");
    for (const std::string& line : manifest.lines()) out << "# " << line << "\n";
    out << summary.str();
    std::cout << summary.str();
    if (opts.json_out) {
        write_json_file(fs::path(opts.out_dir) / "summary.json", manifest, std::move(group_rows));
        write_network_json(opts.out_dir, manifest, net, &h);
    }
    return 0;
}

// --- perceive ---------------------------------------------------------------

struct PerceiveOpts {
    NetworkInputs in;
    int delta = 1;
    std::string degenerate = "zero";
    std::string out_dir;
    bool json_out = false;
};

int cmd_perceive(const PerceiveOpts& opts, const std::string& command) {
    if (opts.delta < 1) throw CliError(kExitUsage, "--delta must be >= 1");
    const LoadedData data = load_inputs(opts.in);
    const netfair::ExpectationPolicy policy{opts.delta, parse_rule(opts.degenerate)};

    Manifest manifest;
    manifest.add("command", command);
    manifest.add("delta", std::to_string(opts.delta));
    manifest.add("degenerate", opts.degenerate);

    const auto records = netfair::perceive_all(data.net, data.h, policy);
    {
        auto out = open_out(fs::path(opts.out_dir) / "perception.csv");
        netfair::write_perception_csv(out, records, manifest.lines());
    }

    // Per-group fair/unfair breakdown split by confusion cell.
    const auto partition = netfair::GroupPartition::from_network(data.net);
    auto cell_of = [](const netfair::PerceptionRecord& r) {
        if (r.outcome && r.decision) return "tp";
        if (!r.outcome && r.decision) return "fp";
        if (r.outcome && !r.decision) return "fn";
        return "tn";
    };
    struct Bucket {
        std::size_t total = 0, fair = 0, unfair = 0, ineligible = 0;
    };
    std::map<std::pair<int, std::string>, Bucket> buckets;
    for (const auto& [key, members] : partition.groups) {
        for (netfair::NodeId v : members) {
            const auto& rec = records[v];
            Bucket& b = buckets[{key, cell_of(rec)}];
            ++b.total;
            if (!rec.eligible) ++b.ineligible;
            if (rec.fair) ++b.fair;
            else ++b.unfair;
        }
    }
    json rows = json::array();
    {
        auto out = open_out(fs::path(opts.out_dir) / "perception_groups.csv");
        for (const std::string& line : manifest.lines()) out << "# " << line << "\n";
        out << "group,cell,total,fair,unfair,ineligible\n";
        for (const auto& [key, b] : buckets) {
            out << key.first << ',' << key.second << ',' << b.total << ',' << b.fair << ','
                << b.unfair << ',' << b.ineligible << "\n";
            rows.push_back({{"group", key.first},
                            {"cell", key.second},
                            {"total", b.total},
                            {"fair", b.fair},
                            {"unfair", b.unfair},
                            {"ineligible", b.ineligible}});
        }
    }
    if (opts.json_out) {
        json record_rows = json::array();
        for (const auto& rec : records) {
            json r = {{"node_id", rec.node}, {"y", rec.outcome},       {"h", rec.decision},
                      {"fair", rec.fair},   {"eligible", rec.eligible}};
            if (rec.expectation) r["expectation"] = *rec.expectation;
            record_rows.push_back(std::move(r));
        }
        write_json_file(fs::path(opts.out_dir) / "perception.json", manifest,
                        std::move(record_rows));
        write_json_file(fs::path(opts.out_dir) / "perception_groups.json", manifest,
                        std::move(rows));
    }

    const auto totals = netfair::perception_totals(records);
    std::cout << "perceived fair: " << totals.fair << "\nperceived unfair: " << totals.unfair
              << "\nineligible: " << totals.ineligible << "\n";
    for (const auto& [key, members] : partition.groups) {
        const auto fv = netfair::fairness_visibility(records, members);
        std::cout << "group " << key << " fairness visibility: "
                  << (fv.value ? fmt(*fv.value) : "undefined") << " (" << fv.fair_count << "/"
                  << fv.denominator << ")\n";
    }
    return 0;
}

// --- sweep ------------------------------------------------------------------

struct SweepOpts {
    NetworkInputs in;
    int delta_max = 1;
    std::string degenerate = "zero";
    bool plot = false;
    bool require_connected = false;
    std::string out_dir;
    bool json_out = false;
};

void write_plot_script(const fs::path& path, const std::string& csv_name) {
    auto out = open_out(path);
    out << "#!/usr/bin/env python3\n"
        << "\"\"\"Plot fairness visibility against the neighborhood radius.\"\"\"\n"
        << "import csv\n"
        << "from collections import defaultdict\n"
        << "import matplotlib.pyplot as plt\n\n"
        << "rows = []\n"
        << "with open(\"" << csv_name << "\") as f:\n"
        << "    for row in csv.DictReader(l for l in f if not l.startswith(\"#\")):\n"
        << "        rows.append(row)\n\n"
        << "by_group = defaultdict(list)\n"
        << "for row in rows:\n"
        << "    by_group[row[\"group\"]].append(row)\n\n"
        << "for group, entries in sorted(by_group.items()):\n"
        << "    entries.sort(key=lambda r: int(r[\"delta\"]))\n"
        << "    deltas = [int(r[\"delta\"]) for r in entries]\n"
        << "    fv = [float(r[\"fairness_visibility\"]) for r in entries if r[\"fairness_visibility\"]]\n"
        << "    plt.plot(deltas[:len(fv)], fv, marker=\"o\", label=f\"group {group}\")\n"
        << "    plt.axhline(float(entries[0][\"acceptance_probability\"]), linestyle=\"--\",\n"
        << "                alpha=0.5)\n\n"
        << "plt.xlabel(\"neighborhood radius\")\n"
        << "plt.ylabel(\"fairness visibility\")\n"
        << "plt.legend()\n"
        << "plt.tight_layout()\n"
        << "plt.savefig(\"sweep.png\", dpi=150)\n"
        << "print(\"wrote sweep.png\")\n";
}

int cmd_sweep(const SweepOpts& opts, const std::string& command) {
    if (opts.delta_max < 1) throw CliError(kExitUsage, "--delta-max must be >= 1");
    const LoadedData data = load_inputs(opts.in);

    if (opts.require_connected) {
        const auto parts = netfair::connected_components(data.net);
        if (!parts.connected()) {
            std::cerr << "network is not connected: " << parts.count() << " components, sizes";
            for (const auto& comp : parts.components) std::cerr << ' ' << comp.size();
            std::cerr << "\n";
            return kExitVerification;
        }
    }

    const netfair::ExpectationPolicy policy{1, parse_rule(opts.degenerate)};
    const auto partition = netfair::GroupPartition::from_network(data.net);
    const auto table =
        netfair::visibility_sweep(data.net, data.h, partition, opts.delta_max, policy);

    Manifest manifest;
    manifest.add("command", command);
    manifest.add("delta_max", std::to_string(opts.delta_max));
    manifest.add("degenerate", opts.degenerate);

    {
        auto out = open_out(fs::path(opts.out_dir) / "sweep.csv");
        netfair::write_sweep_csv(out, table, manifest.lines());
    }
    if (opts.plot) write_plot_script(fs::path(opts.out_dir) / "plot_sweep.py", "sweep.csv");
    if (opts.json_out) {
        json rows = json::array();
        for (const auto& row : table.rows) {
            json r = {{"delta", row.delta},
                      {"group", row.group},
                      {"acceptance_probability", row.acceptance},
                      {"fair_count", row.visibility.fair_count},
                      {"denominator", row.visibility.denominator}};
            if (row.visibility.value) r["fairness_visibility"] = *row.visibility.value;
            rows.push_back(std::move(r));
        }
        write_json_file(fs::path(opts.out_dir) / "sweep.json", manifest, std::move(rows));
    }
    std::cout << "sweep rows: " << table.rows.size() << " (delta 1.." << opts.delta_max << ", "
              << partition.group_count() << " groups)\n";
    return 0;
}

// --- parity -----------------------------------------------------------------

struct ParityOpts {
    NetworkInputs in;
    int delta = 1;
    std::string degenerate = "zero";
    double epsilon = 0.0;
    std::string out_dir;
    bool json_out = false;
};

int cmd_parity(const ParityOpts& opts, const std::string& command) {
    if (opts.delta < 1) throw CliError(kExitUsage, "--delta must be >= 1");
    const LoadedData data = load_inputs(opts.in);
    const netfair::ExpectationPolicy policy{opts.delta, parse_rule(opts.degenerate)};
    const auto partition = netfair::GroupPartition::from_network(data.net);
    if (partition.group_count() < 2)
        throw CliError(kExitData, "parity needs at least two protected groups");
    const auto records = netfair::perceive_all(data.net, data.h, policy);

    Manifest manifest;
    manifest.add("command", command);
    manifest.add("delta", std::to_string(opts.delta));
    manifest.add("degenerate", opts.degenerate);
    manifest.add("epsilon", fmt(opts.epsilon));

    json rows = json::array();
    {
        auto out = open_out(fs::path(opts.out_dir) / "parity.csv");
        for (const std::string& line : manifest.lines()) out << "# " << line << "\n";
        out << "group,size,fair_count,denominator,fairness_visibility,accepted_count,"
               "acceptance_probability\n";
        for (const auto& [key, members] : partition.groups) {
            const auto fv = netfair::fairness_visibility(records, members);
            const double acc = netfair::acceptance_probability(data.net, data.h, members);
            std::size_t accepted = 0;
            for (netfair::NodeId v : members) accepted += data.h[v];
            out << key << ',' << members.size() << ',' << fv.fair_count << ',' << fv.denominator
                << ',';
            if (fv.value) out << fmt(*fv.value);
            out << ',' << accepted << ',' << fmt(acc) << "\n";
            json r = {{"group", key},
                      {"size", members.size()},
                      {"fair_count", fv.fair_count},
                      {"denominator", fv.denominator},
                      {"accepted_count", accepted},
                      {"acceptance_probability", acc}};
            if (fv.value) r["fairness_visibility"] = *fv.value;
            rows.push_back(std::move(r));
        }
    }

    std::ostringstream summary;
    const double dp_gap = netfair::demographic_parity_gap(data.net, data.h, partition);
    summary << "demographic parity gap: " << fmt(dp_gap) << " ["
            << (dp_gap <= opts.epsilon ? "holds" : "violated") << " at epsilon "
            << fmt(opts.epsilon) << "]\n";
    std::optional<double> fv_gap;
    try {
        fv_gap = netfair::visibility_parity_gap(records, partition);
        summary << "visibility parity gap (delta=" << opts.delta << "): " << fmt(*fv_gap) << " ["
                << (*fv_gap <= opts.epsilon ? "holds" : "violated") << " at epsilon "
                << fmt(opts.epsilon) << "]\n";
    } catch (const std::invalid_argument& e) {
        summary << "visibility parity gap: undefined (" << e.what() << ")\n";
    }
    for (const auto& [key, members] : partition.groups) {
        std::ostringstream title;
        title << "group protected_value=" << key << " (" << members.size() << " nodes)";
        print_confusion_block(summary, title.str(),
                              netfair::confusion(data.net, data.h, members));
    }

    auto out = open_out(fs::path(opts.out_dir) / "parity_summary.txt");
    for (const std::string& line : manifest.lines()) out << "# " << line << "\n";
    out << summary.str();
    std::cout << summary.str();
    if (opts.json_out)
        write_json_file(fs::path(opts.out_dir) / "parity.json", manifest, std::move(rows));
    return 0;
}

// --- axioms -----------------------------------------------------------------

struct AxiomsOpts {
    std::size_t trials = 500;
    std::uint64_t seed = 1;
    std::size_t max_nodes = 30;
    int delta_max = 3;
    std::string out_dir;
    bool json_out = false;
};

int cmd_axioms(const AxiomsOpts& opts, const std::string& command) {
    if (opts.trials < 1) throw CliError(kExitUsage, "--trials must be >= 1");
    if (opts.max_nodes < 4) throw CliError(kExitUsage, "--max-nodes must be >= 4");
    if (opts.delta_max < 1) throw CliError(kExitUsage, "--delta-max must be >= 1");

    netfair::SuiteConfig config;
    config.max_nodes = opts.max_nodes;
    config.max_delta = opts.delta_max;
    const auto report = netfair::run_axiom_suite(config, opts.trials, opts.seed);

    Manifest manifest;
    manifest.add("command", command);
    manifest.add("trials", std::to_string(opts.trials));
    manifest.add("seed", std::to_string(opts.seed));
    manifest.add("max_nodes", std::to_string(opts.max_nodes));
    manifest.add("delta_max", std::to_string(opts.delta_max));

    {
        auto out = open_out(fs::path(opts.out_dir) / "axioms.csv");
        netfair::write_suite_csv(out, report, manifest.lines());
    }
    if (opts.json_out) {
        json rows = json::array();
        for (const auto& v : report.verdicts) {
            json witnesses = json::array();
            for (const auto& w : v.violations)
                witnesses.push_back(
                    {{"trial_seed", w.trial_seed}, {"node", w.node}, {"detail", w.detail}});
            rows.push_back({{"axiom", netfair::axiom_name(v.axiom)},
                            {"attempted", v.attempted},
                            {"satisfied", v.satisfied},
                            {"violations", std::move(witnesses)}});
        }
        write_json_file(fs::path(opts.out_dir) / "axioms.json", manifest, std::move(rows));
    }

    for (const auto& v : report.verdicts) {
        std::cout << netfair::axiom_name(v.axiom) << ": " << v.satisfied << "/" << v.attempted
                  << " satisfied, " << v.violations.size() << " violations ["
                  << (v.passed(report.trials_target) ? "PASS" : "FAIL") << "]\n";
        for (const auto& w : v.violations)
            std::cout << "  violation at trial seed " << w.trial_seed << " node " << w.node << ": "
                      << w.detail << "\n";
    }
    return report.all_passed() ? 0 : kExitVerification;
}

// --- synth ------------------------------------------------------------------

struct SynthOpts {
    std::string config_path;
    std::vector<std::size_t> group_sizes;
    double intra = -1.0, inter = -1.0, skew = -1.0, outcome_rate = -1.0;
    std::vector<double> tpr_targets, fpr_targets;
    std::uint64_t seed = 0;
    bool seed_given = false;
    bool force_connected = false;
    bool ensure_outcome_mix = false;
    bool pitfall = false;
    std::string out_dir;
    bool json_out = false;
};

int cmd_synth(const SynthOpts& opts, const std::string& command) {
    Manifest manifest;
    manifest.add("command", command);
    manifest.add("seed", std::to_string(opts.seed));

    netfair::ExportOptions export_opts;
    export_opts.header_lines = manifest.lines();

    if (opts.pitfall) {
        const netfair::PitfallInstance inst = netfair::pitfall_instance(opts.seed);
        export_opts.decisions = &inst.decisions;
        netfair::export_network(inst.network, opts.out_dir, export_opts);
        if (opts.json_out)
            write_network_json(opts.out_dir, manifest, inst.network, &inst.decisions);
        std::cout << "pitfall instance: " << inst.network.node_count() << " nodes, "
                  << inst.network.edge_count() << " edges\n";
        return 0;
    }

    netfair::SynthConfig config;
    if (!opts.config_path.empty()) config = netfair::load_synth_config(opts.config_path);
    if (!opts.group_sizes.empty()) config.group_sizes = opts.group_sizes;
    if (opts.intra >= 0) config.intra_edge_prob = opts.intra;
    if (opts.inter >= 0) config.inter_edge_prob = opts.inter;
    if (opts.skew >= 0) config.degree_skew = opts.skew;
    if (opts.outcome_rate >= 0) config.outcome_rate = opts.outcome_rate;
    if (!opts.tpr_targets.empty()) config.tpr_targets = opts.tpr_targets;
    if (!opts.fpr_targets.empty()) config.fpr_targets = opts.fpr_targets;
    if (opts.seed_given) config.seed = opts.seed;
    if (opts.force_connected) config.force_connected = true;
    if (opts.ensure_outcome_mix) config.ensure_outcome_mix = true;

    const netfair::AttributedNetwork net = netfair::random_attributed_graph(config);
    std::optional<netfair::DecisionVector> h;
    if (!config.tpr_targets.empty() || !config.fpr_targets.empty()) {
        h = netfair::biased_decision(net, config);
        export_opts.decisions = &*h;
    }
    netfair::export_network(net, opts.out_dir, export_opts);
    if (opts.json_out) write_network_json(opts.out_dir, manifest, net, h ? &*h : nullptr);
    std::cout << "synthetic network: " << net.node_count() << " nodes, " << net.edge_count()
              << " edges" << (h ? ", decisions written" : "") << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"network-centric fairness perception toolkit"};
    app.set_version_flag("--version", std::string("netfair ") + kVersion);
    app.require_subcommand(1);
    const std::string command = join_command(argc, argv);

    IngestOpts ingest;
    auto* ingest_cmd = app.add_subcommand("ingest", "build a review network from data tables");
    ingest_cmd->add_option("--papers", ingest.papers, "papers table (csv or json)")->required();
    ingest_cmd->add_option("--authors", ingest.authors, "authors table (csv or json)")->required();
    ingest_cmd->add_option("--famous", ingest.famous_list, "famous-author ids, one per line");
    ingest_cmd->add_option("--top-institutions", ingest.institution_list,
                           "top institution names, one per line");
    ingest_cmd->add_option("--attribute", ingest.attribute, "protected attribute: famous|top");
    ingest_cmd->add_option("--link-rule", ingest.link_rule, "edge rule: shared|collab");
    ingest_cmd->add_option("--threshold", ingest.threshold,
                           "acceptability threshold (outcome 1 iff avg_rating > threshold-1)");
    ingest_cmd->add_flag("--normalize-ids", ingest.normalize_ids,
                         "trim and lower-case author ids before matching");
    ingest_cmd->add_option("--out", ingest.out_dir, "output directory")->required();
    ingest_cmd->add_flag("--json", ingest.json_out, "also write JSON mirrors");

    PerceiveOpts perceive;
    auto* perceive_cmd = app.add_subcommand("perceive", "per-node fairness perception report");
    add_network_options(perceive_cmd, perceive.in);
    perceive_cmd->add_option("--delta", perceive.delta, "neighborhood radius (default 1)");
    perceive_cmd->add_option("--degenerate", perceive.degenerate,
                             "peerless-node rule: zero|exclude");
    perceive_cmd->add_option("--out", perceive.out_dir, "output directory")->required();
    perceive_cmd->add_flag("--json", perceive.json_out, "also write JSON mirrors");

    SweepOpts sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "fairness visibility across radii");
    add_network_options(sweep_cmd, sweep.in);
    sweep_cmd->add_option("--delta-max", sweep.delta_max, "largest radius to evaluate")
        ->required();
    sweep_cmd->add_option("--degenerate", sweep.degenerate, "peerless-node rule: zero|exclude");
    sweep_cmd->add_flag("--plot", sweep.plot, "emit a plotting script next to the table");
    sweep_cmd->add_flag("--require-connected", sweep.require_connected,
                        "refuse disconnected networks");
    sweep_cmd->add_option("--out", sweep.out_dir, "output directory")->required();
    sweep_cmd->add_flag("--json", sweep.json_out, "also write JSON mirrors");

    ParityOpts parity;
    auto* parity_cmd = app.add_subcommand("parity", "group visibility and demographic parity");
    add_network_options(parity_cmd, parity.in);
    parity_cmd->add_option("--delta", parity.delta, "neighborhood radius (default 1)");
    parity_cmd->add_option("--degenerate", parity.degenerate, "peerless-node rule: zero|exclude");
    parity_cmd->add_option("--epsilon", parity.epsilon, "tolerated parity gap (default 0)");
    parity_cmd->add_option("--out", parity.out_dir, "output directory")->required();
    parity_cmd->add_flag("--json", parity.json_out, "also write JSON mirrors");

    AxiomsOpts axioms;
    auto* axioms_cmd = app.add_subcommand("axioms", "randomized axiom verification suite");
    axioms_cmd->add_option("--trials", axioms.trials, "satisfied trials required per property");
    axioms_cmd->add_option("--seed", axioms.seed, "suite seed (default 1)");
    axioms_cmd->add_option("--max-nodes", axioms.max_nodes, "largest sampled network");
    axioms_cmd->add_option("--delta-max", axioms.delta_max, "largest sampled radius");
    axioms_cmd->add_option("--out", axioms.out_dir, "output directory")->required();
    axioms_cmd->add_flag("--json", axioms.json_out, "also write JSON mirrors");

    SynthOpts synth;
    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic attributed network");
    synth_cmd->add_option("--config", synth.config_path, "JSON generator config");
    synth_cmd->add_option("--groups", synth.group_sizes, "group sizes, e.g. --groups 50 50");
    synth_cmd->add_option("--intra", synth.intra, "within-group edge probability");
    synth_cmd->add_option("--inter", synth.inter, "cross-group edge probability");
    synth_cmd->add_option("--skew", synth.skew, "group-0 degree skew factor");
    synth_cmd->add_option("--outcome-rate", synth.outcome_rate, "P(y=1) per node");
    synth_cmd->add_option("--tpr", synth.tpr_targets, "per-group TPR targets for decisions");
    synth_cmd->add_option("--fpr", synth.fpr_targets, "per-group FPR targets for decisions");
    auto* seed_opt = synth_cmd->add_option("--seed", synth.seed, "generator seed");
    synth_cmd->add_flag("--connected", synth.force_connected, "chain components together");
    synth_cmd->add_flag("--outcome-mix", synth.ensure_outcome_mix,
                        "guarantee both outcome classes per group");
    synth_cmd->add_flag("--pitfall", synth.pitfall,
                        "emit a validated small-radius pitfall instance");
    synth_cmd->add_option("--out", synth.out_dir, "output directory")->required();
    synth_cmd->add_flag("--json", synth.json_out, "also write JSON mirrors");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    synth.seed_given = seed_opt->count() > 0;

    try {
        if (ingest_cmd->parsed()) return cmd_ingest(ingest, command);
        if (perceive_cmd->parsed()) return cmd_perceive(perceive, command);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep, command);
        if (parity_cmd->parsed()) return cmd_parity(parity, command);
        if (axioms_cmd->parsed()) return cmd_axioms(axioms, command);
        if (synth_cmd->parsed()) return cmd_synth(synth, command);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code;
    } catch (const netfair::IngestError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const netfair::PitfallError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const netfair::CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return 0;
}
