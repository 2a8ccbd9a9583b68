#include "netfair/graph.hpp"

#include <algorithm>
#include <string>

namespace netfair {

namespace {

std::invalid_argument arg_error(const std::string& what) {
    return std::invalid_argument("netfair: " + what);
}

}  // namespace

DecisionVector::DecisionVector(std::vector<std::uint8_t> values) : values_(std::move(values)) {
    for (std::uint8_t v : values_) {
        if (v > 1) throw arg_error("decision values must be 0 or 1");
    }
}

DecisionVector DecisionVector::zeros(std::size_t n) {
    return DecisionVector(std::vector<std::uint8_t>(n, 0));
}

DecisionVector DecisionVector::ones(std::size_t n) {
    return DecisionVector(std::vector<std::uint8_t>(n, 1));
}

void DecisionVector::set(std::size_t i, std::uint8_t value) {
    if (i >= values_.size()) throw arg_error("decision index out of range");
    if (value > 1) throw arg_error("decision values must be 0 or 1");
    values_[i] = value;
}

std::size_t DecisionVector::count_ones() const {
    std::size_t n = 0;
    for (std::uint8_t v : values_) n += v;
    return n;
}

AttributedNetwork::AttributedNetwork(std::size_t node_count,
                                     std::vector<Edge> edges,
                                     std::vector<int> protected_values,
                                     std::vector<std::uint8_t> outcomes,
                                     std::vector<std::vector<double>> attributes)
    : node_count_(node_count),
      protected_(std::move(protected_values)),
      outcomes_(std::move(outcomes)) {
    if (protected_.size() != node_count_)
        throw arg_error("protected values must cover every node");
    if (outcomes_.size() != node_count_)
        throw arg_error("outcomes must cover every node");
    for (std::uint8_t y : outcomes_) {
        if (y > 1) throw arg_error("outcomes must be 0 or 1");
    }

    if (!attributes.empty()) {
        if (attributes.size() != node_count_)
            throw arg_error("attribute rows must cover every node");
        attr_dim_ = attributes.front().size();
        attrs_.reserve(node_count_ * attr_dim_);
        for (const auto& row : attributes) {
            if (row.size() != attr_dim_)
                throw arg_error("attribute rows must all have the same length");
            attrs_.insert(attrs_.end(), row.begin(), row.end());
        }
    }

    edges_.reserve(edges.size());
    for (Edge e : edges) {
        if (e.first >= node_count_ || e.second >= node_count_)
            throw arg_error("edge endpoint out of range: (" + std::to_string(e.first) + "," +
                            std::to_string(e.second) + ")");
        if (e.first == e.second)
            throw arg_error("self-loop on node " + std::to_string(e.first));
        if (e.first > e.second) std::swap(e.first, e.second);
        edges_.push_back(e);
    }
    std::sort(edges_.begin(), edges_.end());
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end())
        throw arg_error("duplicate edge (" + std::to_string(dup->first) + "," +
                        std::to_string(dup->second) + ")");

    // CSR adjacency, neighbor lists sorted ascending.
    std::vector<std::size_t> deg(node_count_, 0);
    for (const Edge& e : edges_) {
        ++deg[e.first];
        ++deg[e.second];
    }
    adj_offsets_.assign(node_count_ + 1, 0);
    for (std::size_t v = 0; v < node_count_; ++v) adj_offsets_[v + 1] = adj_offsets_[v] + deg[v];
    adj_.resize(adj_offsets_.back());
    std::vector<std::size_t> cursor(adj_offsets_.begin(), adj_offsets_.end() - 1);
    for (const Edge& e : edges_) {
        adj_[cursor[e.first]++] = e.second;
        adj_[cursor[e.second]++] = e.first;
    }
    for (std::size_t v = 0; v < node_count_; ++v)
        std::sort(adj_.begin() + static_cast<std::ptrdiff_t>(adj_offsets_[v]),
                  adj_.begin() + static_cast<std::ptrdiff_t>(adj_offsets_[v + 1]));
}

std::span<const NodeId> AttributedNetwork::neighbors(NodeId v) const {
    require_valid(v);
    return {adj_.data() + adj_offsets_[v], adj_offsets_[v + 1] - adj_offsets_[v]};
}

std::size_t AttributedNetwork::degree(NodeId v) const {
    require_valid(v);
    return adj_offsets_[v + 1] - adj_offsets_[v];
}

int AttributedNetwork::protected_value(NodeId v) const {
    require_valid(v);
    return protected_[v];
}

std::uint8_t AttributedNetwork::outcome(NodeId v) const {
    require_valid(v);
    return outcomes_[v];
}

std::span<const double> AttributedNetwork::attributes(NodeId v) const {
    require_valid(v);
    if (attr_dim_ == 0) return {};
    return {attrs_.data() + static_cast<std::size_t>(v) * attr_dim_, attr_dim_};
}

void AttributedNetwork::require_valid(NodeId v) const {
    if (v >= node_count_)
        throw arg_error("node id " + std::to_string(v) + " out of range [0," +
                        std::to_string(node_count_) + ")");
}

void AttributedNetwork::require_sized(const DecisionVector& h) const {
    if (h.size() != node_count_)
        throw arg_error("decision vector length " + std::to_string(h.size()) +
                        " does not match node count " + std::to_string(node_count_));
}

std::vector<NodeId> neighborhood(const AttributedNetwork& net, NodeId v, int delta) {
    net.require_valid(v);
    if (delta < 1) throw arg_error("delta must be >= 1");

    std::vector<int> dist(net.node_count(), -1);
    std::vector<NodeId> queue;
    queue.reserve(net.node_count());
    dist[v] = 0;
    queue.push_back(v);
    std::vector<NodeId> out;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        NodeId u = queue[head];
        if (dist[u] == delta) break;  // queue is ordered by distance
        for (NodeId w : net.neighbors(u)) {
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
                out.push_back(w);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<NodeId> neighborhood_by_matrix_power(const AttributedNetwork& net, NodeId v, int delta) {
    constexpr std::size_t kMaxNodes = 200;
    net.require_valid(v);
    if (delta < 1) throw arg_error("delta must be >= 1");
    const std::size_t n = net.node_count();
    if (n > kMaxNodes)
        throw CapacityError("netfair: matrix-power neighborhood supports at most " +
                            std::to_string(kMaxNodes) + " nodes, got " + std::to_string(n));

    const std::size_t words = (n + 63) / 64;
    auto bit_set = [words](std::vector<std::uint64_t>& row, std::size_t i) {
        row[i / 64] |= std::uint64_t{1} << (i % 64);
    };
    auto bit_test = [](const std::vector<std::uint64_t>& row, std::size_t i) {
        return (row[i / 64] >> (i % 64)) & 1u;
    };

    std::vector<std::vector<std::uint64_t>> adj(n, std::vector<std::uint64_t>(words, 0));
    for (const Edge& e : net.edges()) {
        bit_set(adj[e.first], e.second);
        bit_set(adj[e.second], e.first);
    }

    // cur holds the nodes reached by walks of length exactly k; acc their union.
    std::vector<std::uint64_t> cur(words, 0), acc(words, 0), next(words, 0);
    bit_set(cur, v);
    for (int k = 0; k < delta; ++k) {
        std::fill(next.begin(), next.end(), 0);
        for (std::size_t u = 0; u < n; ++u) {
            if (bit_test(cur, u)) {
                for (std::size_t w = 0; w < words; ++w) next[w] |= adj[u][w];
            }
        }
        cur = next;
        for (std::size_t w = 0; w < words; ++w) acc[w] |= cur[w];
    }

    std::vector<NodeId> out;
    for (std::size_t u = 0; u < n; ++u) {
        if (u != v && bit_test(acc, u)) out.push_back(static_cast<NodeId>(u));
    }
    return out;
}

EgoNet ego_network(const AttributedNetwork& net, NodeId v, int delta, const DecisionVector& h) {
    net.require_sized(h);
    EgoNet ego;
    ego.center = v;
    ego.members = neighborhood(net, v, delta);
    ego.members.push_back(v);
    std::sort(ego.members.begin(), ego.members.end());
    ego.center_index = static_cast<std::size_t>(
        std::lower_bound(ego.members.begin(), ego.members.end(), v) - ego.members.begin());

    const std::size_t m = ego.members.size();
    ego.attribute_dim = net.attribute_dim();
    ego.protected_values.reserve(m);
    ego.outcomes.reserve(m);
    ego.decisions.reserve(m);
    ego.attributes.reserve(m * ego.attribute_dim);
    for (NodeId u : ego.members) {
        ego.protected_values.push_back(net.protected_value(u));
        ego.outcomes.push_back(net.outcome(u));
        ego.decisions.push_back(h[u]);
        auto attrs = net.attributes(u);
        ego.attributes.insert(ego.attributes.end(), attrs.begin(), attrs.end());
    }

    // Induced edges: members are sorted, so parent-id order matches index order.
    for (std::size_t i = 0; i < m; ++i) {
        NodeId u = ego.members[i];
        for (NodeId w : net.neighbors(u)) {
            if (w <= u) continue;
            auto it = std::lower_bound(ego.members.begin(), ego.members.end(), w);
            if (it != ego.members.end() && *it == w) {
                ego.edges.emplace_back(i, static_cast<std::size_t>(it - ego.members.begin()));
            }
        }
    }
    return ego;
}

ComponentPartition connected_components(const AttributedNetwork& net) {
    const std::size_t n = net.node_count();
    ComponentPartition part;
    part.label.assign(n, static_cast<std::size_t>(-1));
    std::vector<NodeId> queue;
    for (std::size_t s = 0; s < n; ++s) {
        if (part.label[s] != static_cast<std::size_t>(-1)) continue;
        const std::size_t comp = part.components.size();
        part.components.emplace_back();
        queue.clear();
        queue.push_back(static_cast<NodeId>(s));
        part.label[s] = comp;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            NodeId u = queue[head];
            part.components[comp].push_back(u);
            for (NodeId w : net.neighbors(u)) {
                if (part.label[w] == static_cast<std::size_t>(-1)) {
                    part.label[w] = comp;
                    queue.push_back(w);
                }
            }
        }
        std::sort(part.components[comp].begin(), part.components[comp].end());
    }
    return part;
}

int eccentricity_bound(const AttributedNetwork& net) {
    const std::size_t n = net.node_count();
    int bound = 0;
    std::vector<int> dist(n);
    std::vector<NodeId> queue;
    queue.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        queue.clear();
        dist[s] = 0;
        queue.push_back(static_cast<NodeId>(s));
        int ecc = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            NodeId u = queue[head];
            ecc = dist[u];
            for (NodeId w : net.neighbors(u)) {
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        bound = std::max(bound, ecc);
    }
    return bound;
}

}  // namespace netfair
