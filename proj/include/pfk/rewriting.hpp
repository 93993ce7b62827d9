#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pfk/term.hpp"
#include "pfk/theory.hpp"

namespace pfk {

/// Maximum number of head reduction steps (beta or rule) per call.
struct ReductionBudget {
    static constexpr std::uint64_t kDefaultSteps = 100000;
    std::uint64_t max_steps = kDefaultSteps;
};

/// Syntactic first-order matching of `t` against the rule's lhs.
/// Returns the substitution of rule variables when lhs[theta] is alpha-equal to t.
std::optional<Substitution> match_rule(const RewriteRule& rule, const Term& t);

/// Rejects rules outside the supported fragment: constant head, left-linear,
/// first-order, every rule variable bound by the lhs, no sorts.
void check_rule_shape(const RewriteRule& rule);

/// Stateful reduction engine for a single call. Counts steps against the budget
/// and throws BudgetExhausted once it is spent.
class Reducer {
public:
    Reducer(const Theory& sig, ReductionBudget budget) : sig_(sig), budget_(budget) {}

    Term whnf(const Term& t);
    /// Full beta/rule normal form; loops until the budget runs out on non-terminating terms.
    Term normalize(const Term& t);
    bool convertible(const Term& t, const Term& u);

    std::uint64_t steps() const { return steps_; }
    const Theory& theory() const { return sig_; }

private:
    void tick();
    std::optional<Term> head_step(const Term& t);
    bool match(const Term& pattern, const Term& t, Substitution& out);
    bool conv(const Term& t, const Term& u);
    std::string fresh_internal();

    const Theory& sig_;
    ReductionBudget budget_;
    std::uint64_t steps_ = 0;
    std::uint64_t fresh_counter_ = 0;
};

Term whnf(const Theory& sig, const Term& t, ReductionBudget budget = {});
bool convertible(const Theory& sig, const Term& t, const Term& u, ReductionBudget budget = {});
Term normalize(const Theory& sig, const Term& t, ReductionBudget budget = {});

/// All terms reachable from `t` by exactly one beta or rule step at any position
/// (rules applied by syntactic matching).
std::vector<Term> one_step_reducts(const Theory& sig, const Term& t);

}  // namespace pfk
