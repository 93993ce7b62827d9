#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfk/error.hpp"
#include "pfk/rewriting.hpp"
#include "pfk/surface.hpp"
#include "pfk/term.hpp"
#include "pfk/theory.hpp"
#include "pfk/typing.hpp"

namespace pfk {

/// Derived names for the two copies of a variable.
std::string star_name(const std::string& x);
std::string plus_name(const std::string& x);

enum class ParamSource {
    Given,        // from a parameter map file
    Prelude,      // built-in prelude parameters
    Derived,      // star/plus of a definition body
    Transferred,  // constants emitted by a transfer
};

struct Parameter {
    Term star;
    Term plus;
    ParamSource source = ParamSource::Given;
    SourcePos pos;
};

class ParamMap {
public:
    const Parameter* find(const std::string& name) const;
    void set(const std::string& name, Parameter p) { entries_[name] = std::move(p); }
    bool contains(const std::string& name) const { return find(name) != nullptr; }
    std::size_t size() const { return entries_.size(); }
    const std::map<std::string, Parameter>& entries() const { return entries_; }

private:
    std::map<std::string, Parameter> entries_;
};

/// Validates a raw map against the source theory and completes it:
/// prelude constants not mentioned in `raw` take `prelude_defaults` (when the
/// target includes the prelude), and definitions not mentioned get star/plus
/// of their bodies. Throws UnknownParameter for entries naming no source
/// constant and MissingParameter for half entries.
ParamMap resolve_param_map(const RawParamMap& raw, const Theory& src, const Theory& tgt,
                           const ParamMap* prelude_defaults = nullptr);

/// Plus translation result: a plain term, or a kind with one hole standing for
/// the translated subject.
class PlusResult {
public:
    static PlusResult plain(Term t) { return PlusResult(std::move(t), false); }
    static PlusResult with_hole(Term t) { return PlusResult(std::move(t), true); }

    bool has_hole() const { return hole_; }
    /// The plain term. Throws KindPlusUnsupported when a hole is present.
    const Term& term() const;
    /// Fills the hole (or, for a plain result, applies the term) with `subject`.
    Term apply(const Term& subject) const;
    /// The raw body including its hole; for tests and printing only.
    const Term& raw() const { return t_; }

private:
    PlusResult(Term t, bool hole) : t_(std::move(t)), hole_(hole) {}
    Term t_;
    bool hole_;
};

/// The star/plus translation over a source theory and a parameter map.
/// Performs no typing checks: inputs are assumed well typed in the source.
class Translator {
public:
    explicit Translator(const ParamMap& map) : map_(map) {}

    Term star(const Term& t) const;
    PlusResult plus(const Term& t) const;
    Context translate_context(const Context& ctx) const;

private:
    const Parameter& param(const std::string& c) const;
    Term plus_plain(const Term& t) const;

    const ParamMap& map_;
};

/// True for TYPE and for products ending in TYPE: the terms whose type is KIND.
bool is_kind(const Term& t);

// Checked entry points: verify ctx |- t : A in the source before translating.
Term star(const Theory& src, const ParamMap& map, const Context& ctx, const Term& t, ReductionBudget budget = {});
PlusResult plus(const Theory& src, const ParamMap& map, const Context& ctx, const Term& t,
                ReductionBudget budget = {});
Context translate_context(const Theory& src, const ParamMap& map, const Context& ctx, ReductionBudget budget = {});

enum class ObligationKind { StarTyping, PlusTyping, RuleStarConv, RulePlusConv };
std::string_view to_string(ObligationKind k);

struct Obligation {
    enum class Status { Pending, Pass, Fail };

    ObligationKind kind;
    /// Constant name, or `head#n` for the n-th source rule.
    std::string subject;
    std::optional<std::size_t> rule_index;
    std::optional<Judgment> judgment;
    std::optional<std::pair<Term, Term>> conversion;
    Status status = Status::Pending;
    std::optional<Error> cause;
    SourcePos pos;

    bool passed() const { return status == Status::Pass; }
};

/// Checks the interpretation conditions for every source constant and rule
/// whose parameters come from the user map (or from the prelude map when it
/// is itself being checked). Prelude parameters used as defaults and derived
/// parameters of definitions produce no obligations. Throws MissingParameter
/// when an axiom of the source has no parameters.
std::vector<Obligation> check_interpretation(const Theory& src, const Theory& tgt, const ParamMap& map,
                                             ReductionBudget budget = {});

bool all_passed(const std::vector<Obligation>& obligations);

struct TransferredJudgment {
    Judgment star;
    std::optional<Judgment> plus;
};

/// Translates a source judgment and re-checks it in the target. The source
/// judgment is checked first; a target-side failure is a TransferFailure.
TransferredJudgment transfer_judgment(const Theory& src, const Theory& tgt, const ParamMap& map, const Judgment& j,
                                      ReductionBudget budget = {}, bool with_plus = true);

/// Outcome of transferring one theorem-file item.
struct TransferRecord {
    std::string kind;  // def, decl, assert
    std::string name;
    SourcePos pos;
    std::optional<TransferredJudgment> result;
    std::optional<Error> error;

    bool ok() const { return !error; }
};

struct TransferOutput {
    std::vector<TransferRecord> records;
    /// Items of the emitted file, checkable over the target theory.
    SourceFile emitted;
    /// Target extended with the emitted items.
    Theory target;

    bool ok() const;
};

/// Transfers the items of `theorems` (elaborated over `src`). Definitions c
/// become `def c : A* := t*` and `def c'plus : A+ c := t+`; declarations h
/// become `h : A*` and `h'plus : A+ h`. The emitted file is finally re-parsed
/// and elaborated over `tgt` as a whole.
TransferOutput transfer_theorems(const Theory& src, const Theory& tgt, const ParamMap& map,
                                 const SourceFile& theorems, ReductionBudget budget = {});

struct ConsistencyWitness {
    Term term;
    Judgment judgment;
};

/// Given t : (P* : El o) -> (Prf P* -> Prf P*) -> Prf P* (a constant of tgt or a
/// variable of ctx), builds \ (P : El o). t P (\ (x : Prf P). x) and checks it
/// at (P : El o) -> Prf P.
ConsistencyWitness consistency_transform(const Theory& tgt, const std::string& t_name, const Context& ctx = {},
                                         ReductionBudget budget = {});

}  // namespace pfk
