#ifndef NETFAIR_INGEST_HPP
#define NETFAIR_INGEST_HPP

#include <filesystem>
#include <optional>
#include <set>
#include <string>

#include "netfair/graph.hpp"

namespace netfair {

class IngestError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PaperRecord {
    std::string paper_id;
    std::vector<std::string> author_ids;
    double avg_rating = 0.0;
    bool accepted = false;
};

struct AuthorRecord {
    std::string author_id;
    std::string affiliation;
    std::vector<std::string> prior_collaborator_ids;
};

enum class ProtectedAttribute { famous_author, top_institution };

struct ProtectedSpec {
    std::set<std::string> famous_author_ids;
    std::set<std::string> top_institution_names;
    ProtectedAttribute choice = ProtectedAttribute::famous_author;
};

enum class LinkRule { shared_author, shared_author_or_collaboration };

// Table loaders. A ".json" extension selects the structured form (an array
// of objects with the same field names); anything else is read as CSV with a
// header row. List-valued fields use ';' between entries.
std::vector<PaperRecord> load_papers(const std::filesystem::path& path);
std::vector<AuthorRecord> load_authors(const std::filesystem::path& path);

// One entry per line; blank lines and '#' comments skipped.
std::set<std::string> load_name_list(const std::filesystem::path& path);

// Optional identity cleanup, off by default: trims surrounding whitespace and
// lower-cases ASCII in author ids wherever they appear (paper author lists,
// author records, collaborator lists, famous rosters). Matching itself always
// stays exact.
void normalize_author_ids(std::vector<PaperRecord>& papers, std::vector<AuthorRecord>& authors,
                          std::set<std::string>* famous_author_ids = nullptr);

// One node per paper, in input order. Two papers are linked when they share
// an author, or (under shared_author_or_collaboration) when an author of one
// appears among the prior collaborators of an author of the other. Every
// referenced author id must resolve against the author table.
std::vector<Edge> review_edges(const std::vector<PaperRecord>& papers,
                               const std::vector<AuthorRecord>& authors, LinkRule rule);

// Protected value per paper: 0 when the paper touches the chosen roster
// (famous author, or top-institution affiliation), 1 otherwise.
std::vector<int> assign_protected(const std::vector<PaperRecord>& papers,
                                  const std::vector<AuthorRecord>& authors,
                                  const ProtectedSpec& spec);

// Outcome per paper: 1 when avg_rating > threshold - 1. With the default
// threshold of 6 every average rating above 5 counts as acceptable.
std::vector<std::uint8_t> acceptability_labels(const std::vector<PaperRecord>& papers,
                                               double threshold);

// The audited decision: the venue's accept/reject call per paper.
DecisionVector acceptance_decisions(const std::vector<PaperRecord>& papers);

AttributedNetwork build_review_network(const std::vector<PaperRecord>& papers,
                                       const std::vector<AuthorRecord>& authors, LinkRule rule,
                                       const ProtectedSpec& spec, double threshold);

// --- network interchange ------------------------------------------------
//
// nodes file:     node_id,protected_value,outcome[,x0,x1,...]
// edges file:     node_id_a,node_id_b
// decisions file: node_id,decision
//
// Node ids must be dense in [0, n). Rows may appear in any order. Lines
// starting with '#' are ignored, which is where the run manifest lives.

struct ExportOptions {
    const DecisionVector* decisions = nullptr;   // also writes decisions.csv
    std::vector<std::string> header_lines;       // '# '-prefixed atop each file
};

struct ExportPaths {
    std::filesystem::path nodes;
    std::filesystem::path edges;
    std::optional<std::filesystem::path> decisions;
};

ExportPaths export_network(const AttributedNetwork& net, const std::filesystem::path& dir,
                           const ExportOptions& options = {});

// When normalize is set, duplicate edges are collapsed and self-loops
// dropped before construction; otherwise they fail loudly.
AttributedNetwork load_network(const std::filesystem::path& nodes_path,
                               const std::filesystem::path& edges_path, bool normalize = false);

DecisionVector load_decisions(const std::filesystem::path& path, std::size_t node_count);

}  // namespace netfair

#endif
