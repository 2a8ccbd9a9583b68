#ifndef NETFAIR_GRAPH_HPP
#define NETFAIR_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace netfair {

using NodeId = std::uint32_t;

// Unordered edge, stored with first < second.
using Edge = std::pair<NodeId, NodeId>;

// Thrown when an operation is asked to run beyond its supported size.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Binary decision h(v) for every node of a network.
class DecisionVector {
public:
    DecisionVector() = default;
    explicit DecisionVector(std::vector<std::uint8_t> values);

    static DecisionVector zeros(std::size_t n);
    static DecisionVector ones(std::size_t n);

    std::size_t size() const { return values_.size(); }
    std::uint8_t operator[](std::size_t i) const { return values_[i]; }
    void set(std::size_t i, std::uint8_t value);
    std::size_t count_ones() const;
    const std::vector<std::uint8_t>& values() const { return values_; }

    bool operator==(const DecisionVector&) const = default;

private:
    std::vector<std::uint8_t> values_;
};

// Undirected attributed network. Each node carries a categorical protected
// value, an optional real-valued attribute vector, and a binary outcome.
// Immutable after construction; all accessors are safe to call concurrently.
//
// Construction rejects self-loops, duplicate edges, out-of-range endpoints,
// non-binary outcomes, and ragged attribute rows.
class AttributedNetwork {
public:
    AttributedNetwork(std::size_t node_count,
                      std::vector<Edge> edges,
                      std::vector<int> protected_values,
                      std::vector<std::uint8_t> outcomes,
                      std::vector<std::vector<double>> attributes = {});

    std::size_t node_count() const { return node_count_; }
    std::size_t edge_count() const { return edges_.size(); }

    std::span<const NodeId> neighbors(NodeId v) const;
    std::size_t degree(NodeId v) const;

    int protected_value(NodeId v) const;
    std::uint8_t outcome(NodeId v) const;
    std::span<const double> attributes(NodeId v) const;
    std::size_t attribute_dim() const { return attr_dim_; }

    // Canonical edge list: pairs normalized to (min,max), sorted ascending.
    const std::vector<Edge>& edges() const { return edges_; }

    void require_valid(NodeId v) const;
    void require_sized(const DecisionVector& h) const;

private:
    std::size_t node_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<int> protected_;
    std::vector<std::uint8_t> outcomes_;
    std::vector<double> attrs_;         // flat node_count x attr_dim
    std::size_t attr_dim_ = 0;
    std::vector<std::size_t> adj_offsets_;
    std::vector<NodeId> adj_;
};

// Induced subgraph on N(center, delta) plus the center, with all labels
// (protected value, attributes, outcome, decision) copied per member.
struct EgoNet {
    NodeId center = 0;
    std::size_t center_index = 0;              // position of center in members
    std::vector<NodeId> members;               // parent ids, sorted ascending
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // member indices, a < b
    std::size_t attribute_dim = 0;
    std::vector<int> protected_values;
    std::vector<double> attributes;            // flat members x attribute_dim
    std::vector<std::uint8_t> outcomes;
    std::vector<std::uint8_t> decisions;

    std::size_t size() const { return members.size(); }
};

struct ComponentPartition {
    std::vector<std::size_t> label;            // node -> component index
    std::vector<std::vector<NodeId>> components;  // members sorted ascending

    std::size_t count() const { return components.size(); }
    bool connected() const { return components.size() <= 1; }
};

// All nodes u != v with shortest-path distance(u, v) <= delta, sorted.
// The node itself is never a member of its own neighborhood.
std::vector<NodeId> neighborhood(const AttributedNetwork& net, NodeId v, int delta);

// Reference implementation of the neighborhood via repeated boolean products
// of the adjacency matrix: u is reachable iff some walk of length k <= delta
// joins u and v. Agrees with neighborhood() on every input; kept independent
// of the BFS path so the two can cross-check each other. Dense, so guarded
// to networks of at most 200 nodes.
std::vector<NodeId> neighborhood_by_matrix_power(const AttributedNetwork& net, NodeId v, int delta);

EgoNet ego_network(const AttributedNetwork& net, NodeId v, int delta, const DecisionVector& h);

ComponentPartition connected_components(const AttributedNetwork& net);

// Maximum over components of the component diameter. For any delta at or
// above this value, neighborhood(v, delta) covers the whole component of v
// (minus v itself) for every node v.
int eccentricity_bound(const AttributedNetwork& net);

}  // namespace netfair

#endif
