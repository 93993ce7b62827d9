#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pfk/error.hpp"
#include "pfk/rewriting.hpp"
#include "pfk/surface.hpp"
#include "pfk/term.hpp"
#include "pfk/theory.hpp"

namespace pfk {

/// Gamma |- subject : type
struct Judgment {
    Context context;
    Term subject;
    Term type;
};

/// Bidirectional checker for a fixed signature. One instance shares a single
/// reduction budget across all calls made through it.
class TypeChecker {
public:
    explicit TypeChecker(const Theory& sig, ReductionBudget budget = {}) : sig_(sig), reducer_(sig, budget) {}

    Term infer(const Context& ctx, const Term& t);
    void check(const Context& ctx, const Term& t, const Term& expected);
    void check_context(const Context& ctx);

    /// Sort of a type: infers A's type and requires it to reduce to a sort.
    Sort sort_of(const Context& ctx, const Term& a);
    /// TYPE or KIND for a well-typed subject: the sort of its type, or KIND for TYPE itself.
    Sort classify(const Context& ctx, const Term& t);

    Term whnf(const Term& t) { return reducer_.whnf(t); }
    bool convertible(const Term& a, const Term& b) { return reducer_.convertible(a, b); }

    const Theory& theory() const { return sig_; }
    std::uint64_t steps() const { return reducer_.steps(); }

private:
    void check_domain(const Context& ctx, const Term& a);

    const Theory& sig_;
    Reducer reducer_;
};

void check_context(const Theory& sig, const Context& ctx, ReductionBudget budget = {});
Term infer_type(const Theory& sig, const Context& ctx, const Term& t, ReductionBudget budget = {});
void check_type(const Theory& sig, const Context& ctx, const Term& t, const Term& expected,
                ReductionBudget budget = {});
/// Checks the judgment, context included.
void check_judgment(const Theory& sig, const Judgment& j, ReductionBudget budget = {});

/// Outcome of elaborating one source item.
struct ItemResult {
    std::string kind;  // decl, rule, def, assert, require
    std::string name;
    SourcePos pos;
    std::optional<Error> error;
    /// Set when the item restated a prelude entry and was skipped.
    bool restated = false;

    bool ok() const { return !error; }
};

/// Checks items one at a time and extends the theory with those that pass.
/// A failing item is recorded and skipped; later items still run.
class Elaborator {
public:
    explicit Elaborator(Theory base, ReductionBudget budget = {}) : theory_(std::move(base)), budget_(budget) {}

    ItemResult add(const Item& item);

    const Theory& theory() const { return theory_; }
    Theory take() && { return std::move(theory_); }
    ReductionBudget budget() const { return budget_; }

private:
    void add_decl(const DeclItem& d, const SourcePos& pos, ItemResult& r);
    void add_rule(const RuleItem& d, const SourcePos& pos, ItemResult& r);
    void add_def(const DefItem& d, const SourcePos& pos, ItemResult& r);
    void check_assert_conv(const AssertConvItem& a);
    void check_assert_type(const AssertTypeItem& a);
    void check_constant_type(const std::string& name, const Term& type);

    Theory theory_;
    ReductionBudget budget_;
};

struct ElabResult {
    Theory theory;
    std::vector<ItemResult> items;

    bool ok() const;
    /// First failing item, if any.
    const ItemResult* first_failure() const;
};

/// Elaborates a parsed file over `base`. Require items are recorded but not
/// resolved; use Loader for files with requires.
ElabResult elaborate_theory(const SourceFile& file, Theory base, ReductionBudget budget = {});

struct LoadOptions {
    ReductionBudget budget;
    /// Extra directories searched for `require m.` after the requiring file's directory.
    std::vector<std::filesystem::path> search_path;
    /// Module texts resolved without touching the file system when no file is found.
    std::map<std::string, std::string> builtin_modules;
};

/// Directories listed in PFK_PATH (colon separated).
std::vector<std::filesystem::path> search_path_from_env();

/// Loads files with `require` resolution into one growing theory.
///
/// Each module is elaborated once; a require reached while the same module is
/// still loading is a RequireCycle. Parse, IO and cycle errors throw; item
/// failures are collected in results().
class Loader {
public:
    Loader(Theory base, LoadOptions opts);

    void load_file(const std::filesystem::path& path);
    void load_text(std::string_view text, const std::string& path);
    /// Resolves only the `require` items of an already parsed file, relative to `dir`.
    void load_requires(const SourceFile& file, const std::filesystem::path& dir);

    const Theory& theory() const { return elab_.theory(); }
    Theory take_theory() && { return std::move(elab_).take(); }
    const std::vector<ItemResult>& results() const { return results_; }
    bool ok() const;

    /// Paths of every module loaded so far, in load order.
    const std::vector<std::string>& loaded() const { return loaded_; }
    /// Marks a canonical path as already loaded, so requires of it are skipped.
    void mark_loaded(const std::string& canonical);
    static std::string canonical(const std::filesystem::path& p);

private:
    void run(const SourceFile& file, const std::filesystem::path& dir);
    void require(const RequireItem& req, const SourcePos& pos, const std::filesystem::path& dir);

    Elaborator elab_;
    LoadOptions opts_;
    std::vector<ItemResult> results_;
    std::vector<std::string> loaded_;
    std::set<std::string> done_;
    std::vector<std::string> stack_;
};

std::string read_file(const std::filesystem::path& path);

}  // namespace pfk
