#ifndef NETFAIR_AXIOMS_HPP
#define NETFAIR_AXIOMS_HPP

#include <functional>
#include <iosfwd>
#include <string>

#include "netfair/perception.hpp"

namespace netfair {

// True iff a bijection between the two ego networks maps center to center,
// preserves the (protected, attributes, outcome, decision) labels of every
// node, and preserves adjacency in both directions. Backtracking search with
// label-class pruning; intended for the small graphs ego networks are.
bool decision_isomorphic(const EgoNet& a, const EgoNet& b);

// Test seam: the perception functions the checks evaluate. Defaults to the
// shipped implementation; suites can inject a broken variant to prove the
// checks have teeth.
struct PerceptionHooks {
    std::function<std::uint8_t(const AttributedNetwork&, const DecisionVector&, NodeId,
                               const ExpectationPolicy&)>
        perceive;
    std::function<std::optional<double>(const AttributedNetwork&, const DecisionVector&, NodeId,
                                        const ExpectationPolicy&)>
        expectation;

    static PerceptionHooks defaults();
};

enum class CheckOutcome { pass, fail, skipped };

struct CheckResult {
    CheckOutcome outcome = CheckOutcome::skipped;
    std::string detail;
};

// Each check verifies its own precondition and reports skipped when unmet.
CheckResult check_locality(const AttributedNetwork& net, NodeId v, const DecisionVector& h,
                           const DecisionVector& h2, const ExpectationPolicy& policy,
                           const PerceptionHooks& hooks = PerceptionHooks::defaults());
CheckResult check_monotonicity(const AttributedNetwork& net, NodeId v, const DecisionVector& h,
                               const DecisionVector& h2, const ExpectationPolicy& policy,
                               const PerceptionHooks& hooks = PerceptionHooks::defaults());
CheckResult check_neighborhood_expectation(const AttributedNetwork& net, NodeId v,
                                           const DecisionVector& h, const DecisionVector& h2,
                                           const ExpectationPolicy& policy,
                                           const PerceptionHooks& hooks = PerceptionHooks::defaults());
CheckResult check_homogeneity(const AttributedNetwork& net, NodeId u, NodeId v,
                              const DecisionVector& h, const ExpectationPolicy& policy,
                              const PerceptionHooks& hooks = PerceptionHooks::defaults());

enum class AxiomId {
    locality,
    monotonicity,
    neighborhood_expectation,
    homogeneity,
    expectation_invariance,    // neighborhood decisions fixed => expectation fixed
    expectation_monotonicity,  // raising neighborhood decisions never lowers it
    expectation_isomorphism,   // isomorphic egos => equal expectation
    tie_equality,              // expectation exactly equal to the decision => fair
};

const char* axiom_name(AxiomId id);

struct AxiomWitness {
    std::uint64_t trial_seed = 0;
    NodeId node = 0;
    std::string detail;
};

struct AxiomVerdict {
    AxiomId axiom = AxiomId::locality;
    std::size_t attempted = 0;
    std::size_t satisfied = 0;  // trials whose precondition held
    std::vector<AxiomWitness> violations;

    bool passed(std::size_t quota) const { return violations.empty() && satisfied >= quota; }
};

struct SuiteConfig {
    std::size_t min_nodes = 4;
    std::size_t max_nodes = 30;
    double edge_prob_min = 0.05;
    double edge_prob_max = 0.5;
    double outcome_rate = 0.5;
    int max_delta = 3;                    // per-trial radius drawn from 1..max_delta
    std::size_t max_attempt_factor = 20;  // attempts allowed per satisfied trial
};

struct SuiteReport {
    std::size_t trials_target = 0;
    std::vector<AxiomVerdict> verdicts;

    bool all_passed() const;
};

// Samples networks and decision pairs satisfying each property's
// precondition by construction and accumulates verdicts. Deterministic for
// a given (config, trials, seed).
SuiteReport run_axiom_suite(const SuiteConfig& config, std::size_t trials, std::uint64_t seed,
                            const PerceptionHooks& hooks = PerceptionHooks::defaults());

// axiom,attempted,satisfied,violations
void write_suite_csv(std::ostream& out, const SuiteReport& report,
                     const std::vector<std::string>& header_lines = {});

}  // namespace netfair

#endif
