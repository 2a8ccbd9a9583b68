// Fixture networks encoding the reference peer-review corpus tallies (2212
// reviewed papers split by famous-author and top-institution attributes).
// Edges are irrelevant for the confusion and acceptance statistics, so the
// fixtures carry none.
#ifndef NETFAIR_TESTS_FIXTURES_HPP
#define NETFAIR_TESTS_FIXTURES_HPP

#include <cstddef>

#include "netfair/graph.hpp"

namespace netfair::test {

struct CellCounts {
    std::size_t tp, fp, fn, tn;
    std::size_t size() const { return tp + fp + fn + tn; }
};

// Reference 2x2 tables: group 0 is the favored group (famous authors / top
// institutions), group 1 the rest.
inline constexpr CellCounts kAllPapers{589, 98, 117, 1408};
inline constexpr CellCounts kFamous{94, 13, 12, 153};
inline constexpr CellCounts kNonFamous{495, 85, 105, 1255};
inline constexpr CellCounts kTopInstitution{190, 34, 21, 328};
inline constexpr CellCounts kNonTopInstitution{399, 64, 96, 1080};

struct ReviewFixture {
    AttributedNetwork network;
    DecisionVector decisions;
};

// Edgeless network with per-group (y, h) cells laid out to match the given
// tables exactly.
inline ReviewFixture review_fixture(const CellCounts& group0, const CellCounts& group1) {
    const std::size_t n = group0.size() + group1.size();
    std::vector<int> protected_values;
    std::vector<std::uint8_t> outcomes;
    std::vector<std::uint8_t> decisions;
    protected_values.reserve(n);
    outcomes.reserve(n);
    decisions.reserve(n);

    auto emit = [&](int group, const CellCounts& c) {
        auto cell = [&](std::size_t count, std::uint8_t y, std::uint8_t h) {
            for (std::size_t i = 0; i < count; ++i) {
                protected_values.push_back(group);
                outcomes.push_back(y);
                decisions.push_back(h);
            }
        };
        cell(c.tp, 1, 1);
        cell(c.fp, 0, 1);
        cell(c.fn, 1, 0);
        cell(c.tn, 0, 0);
    };
    emit(0, group0);
    emit(1, group1);

    return ReviewFixture{
        AttributedNetwork(n, {}, std::move(protected_values), std::move(outcomes)),
        DecisionVector(std::move(decisions))};
}

}  // namespace netfair::test

#endif
