#include "netfair/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "csv.hpp"

namespace netfair {

namespace {

using detail::CsvTable;

bool is_json(const std::filesystem::path& path) {
    return path.extension() == ".json";
}

nlohmann::json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open " + path.string());
    try {
        nlohmann::json j;
        in >> j;
        return j;
    } catch (const nlohmann::json::exception& e) {
        throw IngestError(path.string() + ": " + e.what());
    }
}

std::unordered_map<std::string, std::size_t> author_index(
    const std::vector<AuthorRecord>& authors) {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < authors.size(); ++i) {
        if (!index.emplace(authors[i].author_id, i).second)
            throw IngestError("duplicate author id '" + authors[i].author_id + "'");
    }
    return index;
}

void require_resolved(const std::vector<PaperRecord>& papers,
                      const std::unordered_map<std::string, std::size_t>& authors) {
    for (const PaperRecord& paper : papers) {
        if (paper.author_ids.empty())
            throw IngestError("paper '" + paper.paper_id + "' lists no authors");
        for (const std::string& a : paper.author_ids)
            if (!authors.count(a))
                throw IngestError("paper '" + paper.paper_id + "' references unknown author '" +
                                  a + "'");
    }
}

}  // namespace

std::vector<PaperRecord> load_papers(const std::filesystem::path& path) {
    std::vector<PaperRecord> papers;
    if (is_json(path)) {
        const nlohmann::json j = read_json(path);
        if (!j.is_array()) throw IngestError(path.string() + ": expected an array of papers");
        try {
            for (const auto& item : j) {
                PaperRecord p;
                p.paper_id = item.at("paper_id").get<std::string>();
                p.author_ids = item.at("author_ids").get<std::vector<std::string>>();
                p.avg_rating = item.at("avg_rating").get<double>();
                p.accepted = item.at("accepted").get<bool>();
                papers.push_back(std::move(p));
            }
        } catch (const nlohmann::json::exception& e) {
            throw IngestError(path.string() + ": " + e.what());
        }
    } else {
        const CsvTable table = detail::read_csv(path);
        const std::size_t c_id = table.require_column("paper_id");
        const std::size_t c_authors = table.require_column("author_ids");
        const std::size_t c_rating = table.require_column("avg_rating");
        const std::size_t c_accepted = table.require_column("accepted");
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            PaperRecord p;
            p.paper_id = table.cell(r, c_id);
            p.author_ids = detail::split_list_field(table.cell(r, c_authors));
            p.avg_rating = detail::parse_double(table, r, c_rating);
            p.accepted = detail::parse_bool(table, r, c_accepted);
            if (p.paper_id.empty()) table.fail(r, "empty paper_id");
            papers.push_back(std::move(p));
        }
    }
    std::unordered_set<std::string> seen;
    for (const PaperRecord& p : papers)
        if (!seen.insert(p.paper_id).second)
            throw IngestError("duplicate paper id '" + p.paper_id + "'");
    return papers;
}

std::vector<AuthorRecord> load_authors(const std::filesystem::path& path) {
    std::vector<AuthorRecord> authors;
    if (is_json(path)) {
        const nlohmann::json j = read_json(path);
        if (!j.is_array()) throw IngestError(path.string() + ": expected an array of authors");
        try {
            for (const auto& item : j) {
                AuthorRecord a;
                a.author_id = item.at("author_id").get<std::string>();
                a.affiliation = item.value("affiliation", std::string{});
                if (item.contains("prior_collaborator_ids"))
                    a.prior_collaborator_ids =
                        item["prior_collaborator_ids"].get<std::vector<std::string>>();
                authors.push_back(std::move(a));
            }
        } catch (const nlohmann::json::exception& e) {
            throw IngestError(path.string() + ": " + e.what());
        }
    } else {
        const CsvTable table = detail::read_csv(path);
        const std::size_t c_id = table.require_column("author_id");
        const std::size_t c_aff = table.require_column("affiliation");
        const std::size_t c_collab = table.require_column("prior_collaborator_ids");
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            AuthorRecord a;
            a.author_id = table.cell(r, c_id);
            a.affiliation = table.cell(r, c_aff);
            a.prior_collaborator_ids = detail::split_list_field(table.cell(r, c_collab));
            if (a.author_id.empty()) table.fail(r, "empty author_id");
            authors.push_back(std::move(a));
        }
    }
    return authors;
}

std::set<std::string> load_name_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open " + path.string());
    std::set<std::string> names;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto begin = line.find_first_not_of(" \t");
        if (begin == std::string::npos) continue;
        const auto end = line.find_last_not_of(" \t");
        line = line.substr(begin, end - begin + 1);
        if (line.empty() || line.front() == '#') continue;
        names.insert(line);
    }
    return names;
}

namespace {

std::string normalized_id(const std::string& id) {
    const auto begin = id.find_first_not_of(" \t");
    if (begin == std::string::npos) return {};
    const auto end = id.find_last_not_of(" \t");
    std::string out = id.substr(begin, end - begin + 1);
    for (char& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace

void normalize_author_ids(std::vector<PaperRecord>& papers, std::vector<AuthorRecord>& authors,
                          std::set<std::string>* famous_author_ids) {
    for (PaperRecord& p : papers)
        for (std::string& a : p.author_ids) a = normalized_id(a);
    for (AuthorRecord& a : authors) {
        a.author_id = normalized_id(a.author_id);
        for (std::string& c : a.prior_collaborator_ids) c = normalized_id(c);
    }
    if (famous_author_ids) {
        std::set<std::string> normalized;
        for (const std::string& name : *famous_author_ids) normalized.insert(normalized_id(name));
        *famous_author_ids = std::move(normalized);
    }
}

std::vector<Edge> review_edges(const std::vector<PaperRecord>& papers,
                               const std::vector<AuthorRecord>& authors, LinkRule rule) {
    const auto index = author_index(authors);
    require_resolved(papers, index);

    // papers per author, in input order
    std::unordered_map<std::string, std::vector<NodeId>> papers_of;
    for (std::size_t i = 0; i < papers.size(); ++i)
        for (const std::string& a : papers[i].author_ids)
            papers_of[a].push_back(static_cast<NodeId>(i));

    std::set<Edge> edges;
    auto link = [&edges](NodeId a, NodeId b) {
        if (a == b) return;
        if (a > b) std::swap(a, b);
        edges.emplace(a, b);
    };

    for (const auto& [author, list] : papers_of)
        for (std::size_t i = 0; i < list.size(); ++i)
            for (std::size_t j = i + 1; j < list.size(); ++j) link(list[i], list[j]);

    if (rule == LinkRule::shared_author_or_collaboration) {
        for (const AuthorRecord& a : authors) {
            const auto mine = papers_of.find(a.author_id);
            if (mine == papers_of.end()) continue;
            for (const std::string& collab : a.prior_collaborator_ids) {
                const auto theirs = papers_of.find(collab);
                if (theirs == papers_of.end()) continue;
                for (NodeId p : mine->second)
                    for (NodeId q : theirs->second) link(p, q);
            }
        }
    }
    return {edges.begin(), edges.end()};
}

std::vector<int> assign_protected(const std::vector<PaperRecord>& papers,
                                  const std::vector<AuthorRecord>& authors,
                                  const ProtectedSpec& spec) {
    const auto index = author_index(authors);
    require_resolved(papers, index);
    if (spec.choice == ProtectedAttribute::famous_author && spec.famous_author_ids.empty())
        throw IngestError("famous-author attribute selected but the famous list is empty");
    if (spec.choice == ProtectedAttribute::top_institution && spec.top_institution_names.empty())
        throw IngestError("top-institution attribute selected but the institution list is empty");

    std::vector<int> values(papers.size(), 1);
    for (std::size_t i = 0; i < papers.size(); ++i) {
        bool in_group = false;
        for (const std::string& a : papers[i].author_ids) {
            if (spec.choice == ProtectedAttribute::famous_author) {
                in_group = spec.famous_author_ids.count(a) > 0;
            } else {
                in_group = spec.top_institution_names.count(authors[index.at(a)].affiliation) > 0;
            }
            if (in_group) break;
        }
        values[i] = in_group ? 0 : 1;
    }
    return values;
}

std::vector<std::uint8_t> acceptability_labels(const std::vector<PaperRecord>& papers,
                                               double threshold) {
    std::vector<std::uint8_t> labels(papers.size());
    for (std::size_t i = 0; i < papers.size(); ++i)
        labels[i] = papers[i].avg_rating > threshold - 1.0 ? 1 : 0;
    return labels;
}

DecisionVector acceptance_decisions(const std::vector<PaperRecord>& papers) {
    std::vector<std::uint8_t> values(papers.size());
    for (std::size_t i = 0; i < papers.size(); ++i) values[i] = papers[i].accepted ? 1 : 0;
    return DecisionVector(std::move(values));
}

AttributedNetwork build_review_network(const std::vector<PaperRecord>& papers,
                                       const std::vector<AuthorRecord>& authors, LinkRule rule,
                                       const ProtectedSpec& spec, double threshold) {
    return AttributedNetwork(papers.size(), review_edges(papers, authors, rule),
                             assign_protected(papers, authors, spec),
                             acceptability_labels(papers, threshold));
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IngestError("cannot write " + path.string());
    return out;
}

void write_header(std::ofstream& out, const std::vector<std::string>& lines) {
    for (const std::string& line : lines) out << "# " << line << "\n";
}

}  // namespace

ExportPaths export_network(const AttributedNetwork& net, const std::filesystem::path& dir,
                           const ExportOptions& options) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IngestError("cannot create directory " + dir.string() + ": " + ec.message());

    ExportPaths paths;
    paths.nodes = dir / "nodes.csv";
    paths.edges = dir / "edges.csv";

    char buf[64];
    {
        auto out = open_out(paths.nodes);
        write_header(out, options.header_lines);
        out << "node_id,protected_value,outcome";
        for (std::size_t k = 0; k < net.attribute_dim(); ++k) out << ",x" << k;
        out << "\n";
        for (std::size_t v = 0; v < net.node_count(); ++v) {
            const auto node = static_cast<NodeId>(v);
            out << v << ',' << net.protected_value(node) << ',' << int(net.outcome(node));
            for (double x : net.attributes(node)) {
                std::snprintf(buf, sizeof(buf), "%.17g", x);
                out << ',' << buf;
            }
            out << "\n";
        }
    }
    {
        auto out = open_out(paths.edges);
        write_header(out, options.header_lines);
        out << "node_id_a,node_id_b\n";
        for (const Edge& e : net.edges()) out << e.first << ',' << e.second << "\n";
    }
    if (options.decisions) {
        net.require_sized(*options.decisions);
        paths.decisions = dir / "decisions.csv";
        auto out = open_out(*paths.decisions);
        write_header(out, options.header_lines);
        out << "node_id,decision\n";
        for (std::size_t v = 0; v < net.node_count(); ++v)
            out << v << ',' << int((*options.decisions)[v]) << "\n";
    }
    return paths;
}

AttributedNetwork load_network(const std::filesystem::path& nodes_path,
                               const std::filesystem::path& edges_path, bool normalize) {
    const CsvTable nodes = detail::read_csv(nodes_path);
    const std::size_t c_id = nodes.require_column("node_id");
    const std::size_t c_prot = nodes.require_column("protected_value");
    const std::size_t c_outcome = nodes.require_column("outcome");

    // Attribute columns are everything named x<k>, in header order.
    std::vector<std::size_t> attr_cols;
    for (std::size_t c = 0; c < nodes.column_order.size(); ++c) {
        const std::string& name = nodes.column_order[c];
        if (c == c_id || c == c_prot || c == c_outcome) continue;
        if (name.size() >= 2 && name.front() == 'x') attr_cols.push_back(c);
        else throw IngestError(nodes.source + ": unexpected column '" + name + "'");
    }

    const std::size_t n = nodes.rows.size();
    std::vector<int> protected_values(n);
    std::vector<std::uint8_t> outcomes(n);
    std::vector<std::vector<double>> attributes;
    if (!attr_cols.empty()) attributes.assign(n, std::vector<double>(attr_cols.size()));
    std::vector<bool> seen(n, false);
    for (std::size_t r = 0; r < n; ++r) {
        const long long id = detail::parse_int(nodes, r, c_id);
        if (id < 0 || static_cast<std::size_t>(id) >= n)
            nodes.fail(r, "node_id " + std::to_string(id) + " outside the dense range [0," +
                              std::to_string(n) + ")");
        if (seen[static_cast<std::size_t>(id)]) nodes.fail(r, "duplicate node_id");
        seen[static_cast<std::size_t>(id)] = true;
        const auto v = static_cast<std::size_t>(id);
        protected_values[v] = static_cast<int>(detail::parse_int(nodes, r, c_prot));
        const long long y = detail::parse_int(nodes, r, c_outcome);
        if (y != 0 && y != 1) nodes.fail(r, "outcome must be 0 or 1");
        outcomes[v] = static_cast<std::uint8_t>(y);
        for (std::size_t k = 0; k < attr_cols.size(); ++k)
            attributes[v][k] = detail::parse_double(nodes, r, attr_cols[k]);
    }

    const CsvTable edges = detail::read_csv(edges_path);
    const std::size_t c_a = edges.require_column("node_id_a");
    const std::size_t c_b = edges.require_column("node_id_b");
    std::vector<Edge> edge_list;
    edge_list.reserve(edges.rows.size());
    for (std::size_t r = 0; r < edges.rows.size(); ++r) {
        const long long a = detail::parse_int(edges, r, c_a);
        const long long b = detail::parse_int(edges, r, c_b);
        if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n)
            edges.fail(r, "edge endpoint outside the node range");
        edge_list.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>(b));
    }
    if (normalize) {
        for (Edge& e : edge_list)
            if (e.first > e.second) std::swap(e.first, e.second);
        std::sort(edge_list.begin(), edge_list.end());
        edge_list.erase(std::unique(edge_list.begin(), edge_list.end()), edge_list.end());
        std::erase_if(edge_list, [](const Edge& e) { return e.first == e.second; });
    }
    try {
        return AttributedNetwork(n, std::move(edge_list), std::move(protected_values),
                                 std::move(outcomes), std::move(attributes));
    } catch (const std::invalid_argument& e) {
        throw IngestError(edges_path.string() + ": " + e.what());
    }
}

DecisionVector load_decisions(const std::filesystem::path& path, std::size_t node_count) {
    const CsvTable table = detail::read_csv(path);
    const std::size_t c_id = table.require_column("node_id");
    const std::size_t c_dec = table.require_column("decision");
    if (table.rows.size() != node_count)
        throw IngestError(path.string() + ": expected " + std::to_string(node_count) +
                          " decisions, got " + std::to_string(table.rows.size()));
    std::vector<std::uint8_t> values(node_count, 0);
    std::vector<bool> seen(node_count, false);
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const long long id = detail::parse_int(table, r, c_id);
        if (id < 0 || static_cast<std::size_t>(id) >= node_count)
            table.fail(r, "node_id outside the node range");
        if (seen[static_cast<std::size_t>(id)]) table.fail(r, "duplicate node_id");
        seen[static_cast<std::size_t>(id)] = true;
        const long long d = detail::parse_int(table, r, c_dec);
        if (d != 0 && d != 1) table.fail(r, "decision must be 0 or 1");
        values[static_cast<std::size_t>(id)] = static_cast<std::uint8_t>(d);
    }
    return DecisionVector(std::move(values));
}

}  // namespace netfair
