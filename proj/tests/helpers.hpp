// Shared builders for the test suites.
#ifndef NETFAIR_TESTS_HELPERS_HPP
#define NETFAIR_TESTS_HELPERS_HPP

#include <atomic>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "netfair/graph.hpp"

namespace netfair::test {

// Path 0-1-2-...-(n-1). Outcomes default to zero, one group.
inline AttributedNetwork path_graph(std::size_t n, std::vector<std::uint8_t> outcomes = {},
                                    std::vector<int> protected_values = {}) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < n; ++i)
        edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(i + 1));
    if (outcomes.empty()) outcomes.assign(n, 0);
    if (protected_values.empty()) protected_values.assign(n, 0);
    return AttributedNetwork(n, std::move(edges), std::move(protected_values),
                             std::move(outcomes));
}

// Star with center 0 and leaves 1..n-1.
inline AttributedNetwork star_graph(std::size_t leaves, std::vector<std::uint8_t> outcomes = {},
                                    std::vector<int> protected_values = {}) {
    const std::size_t n = leaves + 1;
    std::vector<Edge> edges;
    for (std::size_t i = 1; i < n; ++i) edges.emplace_back(0, static_cast<NodeId>(i));
    if (outcomes.empty()) outcomes.assign(n, 0);
    if (protected_values.empty()) protected_values.assign(n, 0);
    return AttributedNetwork(n, std::move(edges), std::move(protected_values),
                             std::move(outcomes));
}

inline AttributedNetwork complete_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
    return AttributedNetwork(n, std::move(edges), std::vector<int>(n, 0),
                             std::vector<std::uint8_t>(n, 0));
}

// G(n, p) with random labels and optional random attribute vectors.
inline AttributedNetwork random_graph(std::mt19937_64& rng, std::size_t n, double p,
                                      std::size_t attr_dim = 0) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (coin(rng) < p) edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
    std::vector<int> protected_values(n);
    std::vector<std::uint8_t> outcomes(n);
    for (std::size_t v = 0; v < n; ++v) {
        protected_values[v] = static_cast<int>(rng() & 1);
        outcomes[v] = static_cast<std::uint8_t>(rng() & 1);
    }
    std::vector<std::vector<double>> attrs;
    if (attr_dim > 0) {
        attrs.assign(n, std::vector<double>(attr_dim));
        for (auto& row : attrs)
            for (double& x : row) x = coin(rng);
    }
    return AttributedNetwork(n, std::move(edges), std::move(protected_values),
                             std::move(outcomes), std::move(attrs));
}

inline DecisionVector random_decisions(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::uint8_t> values(n);
    for (auto& d : values) d = static_cast<std::uint8_t>(rng() & 1);
    return DecisionVector(std::move(values));
}

// Fresh directory under the system temp root, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<unsigned> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("netfair_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

}  // namespace netfair::test

#endif
