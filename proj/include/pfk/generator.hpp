#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "pfk/interp.hpp"
#include "pfk/rewriting.hpp"
#include "pfk/term.hpp"
#include "pfk/theory.hpp"
#include "pfk/typing.hpp"

namespace pfk {

struct Typed {
    enum class Level {
        Object,  // the type has sort TYPE: data and proofs
        Type,    // the type is TYPE
        Other,   // type families, constants of kind type, TYPE itself
    };

    Term term;
    Term type;
    Level level = Level::Other;
};

struct GeneratorOptions {
    /// Random construction steps per grow() call.
    std::size_t steps = 120;
    /// Candidates larger than this are discarded.
    std::size_t max_size = 48;
    ReductionBudget budget{20000};
};

/// Type-directed random generator of well-typed terms in a fixed context.
///
/// Keeps a pool of typed terms seeded with the constants of the signature and
/// the context variables, and extends it by application, abstraction over a
/// context variable, product formation, and instantiation of rule left-hand
/// sides. Every candidate is admitted only after the kernel infers its type,
/// so the pool contains only derivable judgments.
class TermGenerator {
public:
    TermGenerator(const Theory& sig, Context ctx, std::uint64_t seed, GeneratorOptions opts = {});

    void grow(std::size_t steps);
    void grow() { grow(opts_.steps); }

    const std::vector<Typed>& pool() const { return pool_; }
    const Context& context() const { return ctx_; }
    std::mt19937_64& rng() { return rng_; }

    /// Uniform choice among pool entries satisfying `pred`.
    std::optional<Typed> pick(const std::function<bool(const Typed&)>& pred);
    /// Uniform index in [0, n).
    std::size_t below(std::size_t n);

private:
    bool try_add(const Term& t);
    bool fits(const Typed& e, const Term& want) const;
    void step_app();
    void step_lam();
    void step_pi();
    void step_rule();

    const Theory& sig_;
    Context ctx_;
    std::mt19937_64 rng_;
    GeneratorOptions opts_;
    std::vector<Typed> pool_;
    /// Weak head normal forms of the pool types, index-aligned with pool_.
    std::vector<Term> heads_;
    std::unordered_set<Term> seen_;
};

/// Outcome of one property suite.
struct PropertyResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    /// A few failing cases, printed.
    std::vector<std::string> examples;

    bool ok() const { return failures == 0 && cases > 0; }
    void fail(std::string what);
};

struct PropertySetup {
    const Theory& src;
    const Theory& tgt;
    const ParamMap& map;
    /// Context the generator works in.
    Context ctx;
    std::uint64_t seed = 1;
};

/// A context of source variables over the natural number theory, used as the
/// generator's starting point.
Context nat_generator_context();

/// (t[z <- w])* and (t[z <- w])+ are alpha-equal to the translations of t with
/// z* and z+ replaced by w* and w+.
PropertyResult check_substitution_commutes(const PropertySetup& s, std::size_t cases);
/// For a single-step reduct B of A, A* and B* are convertible in the target, and so are A+ and B+.
PropertyResult check_conversion_preserved(const PropertySetup& s, std::size_t cases);
/// Generated judgments transfer and re-check in the target (star and plus).
PropertyResult check_transfer_sound(const PropertySetup& s, std::size_t cases);
/// consistency_transform on a hypothesis of the translated inconsistency type.
PropertyResult check_consistency_witness(const Theory& tgt);

/// Printing then parsing a generated term gives it back up to alpha-equivalence.
PropertyResult check_print_round_trip(const Theory& sig, const Context& ctx, std::uint64_t seed, std::size_t cases);
/// Every corpus file parses, prints and re-parses to the same items.
PropertyResult check_corpus_round_trip();
/// whnf(whnf(t)) is alpha-equal to whnf(t).
PropertyResult check_whnf_idempotent(const Theory& sig, const Context& ctx, std::uint64_t seed, std::size_t cases);
/// Conversion is reflexive and symmetric, on random pairs and on redex/reduct pairs.
PropertyResult check_conversion_laws(const Theory& sig, const Context& ctx, std::uint64_t seed, std::size_t cases);
/// With the rule c --> c, whnf(c) raises BudgetExhausted.
PropertyResult check_budget_exhaustion();

/// Kernel sanity suites over the natural number signature.
std::vector<PropertyResult> run_kernel_suites(std::uint64_t seed, std::size_t cases = 1000);

/// The four suites on the natural number corpus with the given sizes.
std::vector<PropertyResult> run_property_suites(std::uint64_t seed, std::size_t subst_cases = 1000,
                                                std::size_t conv_cases = 500, std::size_t transfer_cases = 100);

}  // namespace pfk
