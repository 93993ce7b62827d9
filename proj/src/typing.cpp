#include "pfk/typing.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "pfk/print.hpp"

namespace pfk {

namespace {

// Name for opening `binder` under `ctx`, avoiding the context and any stray
// free variables of the terms involved.
std::string open_name(const Context& ctx, const Term& binder, const Term* other = nullptr) {
    std::set<std::string> avoid = ctx.names();
    if (binder.has_free_vars()) avoid.merge(free_variables(binder));
    if (other && other->has_free_vars()) avoid.merge(free_variables(*other));
    std::string hint = binder.name().empty() || binder.name()[0] == '%' ? std::string("x") : binder.name();
    return fresh_name(hint, avoid);
}

[[noreturn]] void mismatch(const Term& expected, const Term& got, const std::string& what) {
    throw Error(ErrorKind::TypeMismatch,
                what + ": expected '" + print_term(expected) + "' but got '" + print_term(got) + "'");
}

}  // namespace

Term TypeChecker::infer(const Context& ctx, const Term& t) {
    switch (t.kind()) {
        case TermKind::Sort:
            if (t.is_sort(Sort::Type)) return Term::kind_sort();
            throw Error(ErrorKind::SortError, "KIND has no type");
        case TermKind::Hole:
            throw Error(ErrorKind::HoleInTerm, "cannot type a term containing a hole");
        case TermKind::BVar:
            throw Error(ErrorKind::UnboundVariable, "dangling bound variable #" + std::to_string(t.index()));
        case TermKind::Var: {
            const Term* ty = ctx.lookup(t.name());
            if (!ty) throw Error(ErrorKind::UnboundVariable, "unbound variable '" + t.name() + "'");
            return *ty;
        }
        case TermKind::Const: {
            const ConstDecl* d = sig_.find(t.name());
            if (!d) throw Error(ErrorKind::UnknownConstant, "unknown constant '" + t.name() + "'");
            return d->type;
        }
        case TermKind::App: {
            Term fty = infer(ctx, t.fn());
            Term w = whnf(fty);
            if (!w.is(TermKind::Pi))
                throw Error(ErrorKind::NotAFunction, "'" + print_term(t.fn()) + "' has type '" + print_term(w) +
                                                         "', which is not a product");
            check(ctx, t.arg(), w.ann());
            return instantiate(w.body(), t.arg());
        }
        case TermKind::Lam: {
            check_domain(ctx, t.ann());
            std::string x = open_name(ctx, t);
            Context inner = ctx.extend(x, t.ann());
            Term b = infer(inner, open_binder(t, x));
            if (b.is_sort(Sort::Kind))
                throw Error(ErrorKind::SortError, "abstraction body '" + print_term(open_binder(t, x)) + "' is TYPE");
            return Term::pi(x, t.ann(), b);
        }
        case TermKind::Pi: {
            check_domain(ctx, t.ann());
            std::string x = open_name(ctx, t);
            Context inner = ctx.extend(x, t.ann());
            Term s = whnf(infer(inner, open_binder(t, x)));
            if (!s.is(TermKind::Sort))
                throw Error(ErrorKind::SortError,
                            "codomain '" + print_term(open_binder(t, x)) + "' is not a type");
            return s;
        }
    }
    throw Error(ErrorKind::SortError, "unexpected term");
}

void TypeChecker::check_domain(const Context& ctx, const Term& a) {
    Term s = whnf(infer(ctx, a));
    if (!s.is_sort(Sort::Type))
        throw Error(ErrorKind::SortError, "domain '" + print_term(a) + "' has type '" + print_term(s) +
                                              "' instead of TYPE");
}

void TypeChecker::check(const Context& ctx, const Term& t, const Term& expected) {
    if (t.is(TermKind::Lam)) {
        Term e = whnf(expected);
        if (e.is(TermKind::Pi)) {
            check_domain(ctx, t.ann());
            if (!convertible(t.ann(), e.ann()))
                mismatch(e.ann(), t.ann(), "abstraction domain");
            std::string x = open_name(ctx, t, &e);
            check(ctx.extend(x, t.ann()), open_binder(t, x), open_binder(e, x));
            return;
        }
    }
    Term got = infer(ctx, t);
    if (!convertible(got, expected)) {
        Term we = expected.is_sort(Sort::Kind) ? expected : whnf(expected);
        mismatch(we, whnf(got), "type of '" + print_term(t) + "'");
    }
}

void TypeChecker::check_context(const Context& ctx) {
    Context prefix;
    for (const auto& e : ctx) {
        if (prefix.contains(e.name))
            throw Error(ErrorKind::IllFormedContext, "variable '" + e.name + "' is declared twice");
        try {
            check_domain(prefix, e.type);
        } catch (const Error& err) {
            if (err.kind() == ErrorKind::BudgetExhausted) throw;
            throw Error(ErrorKind::IllFormedContext, "entry '" + e.name + " : " + print_term(e.type) +
                                                         "': " + err.describe());
        }
        prefix.push(e.name, e.type);
    }
}

Sort TypeChecker::sort_of(const Context& ctx, const Term& a) {
    if (a.is_sort(Sort::Kind)) return Sort::Kind;
    Term s = whnf(infer(ctx, a));
    if (!s.is(TermKind::Sort))
        throw Error(ErrorKind::SortError, "'" + print_term(a) + "' is not a type");
    return s.sort_value();
}

Sort TypeChecker::classify(const Context& ctx, const Term& t) {
    if (t.is_sort(Sort::Type)) return Sort::Kind;
    return sort_of(ctx, infer(ctx, t));
}

void check_context(const Theory& sig, const Context& ctx, ReductionBudget budget) {
    TypeChecker(sig, budget).check_context(ctx);
}

Term infer_type(const Theory& sig, const Context& ctx, const Term& t, ReductionBudget budget) {
    return TypeChecker(sig, budget).infer(ctx, t);
}

void check_type(const Theory& sig, const Context& ctx, const Term& t, const Term& expected, ReductionBudget budget) {
    TypeChecker(sig, budget).check(ctx, t, expected);
}

void check_judgment(const Theory& sig, const Judgment& j, ReductionBudget budget) {
    TypeChecker tc(sig, budget);
    tc.check_context(j.context);
    if (!j.type.is_sort(Sort::Kind)) tc.sort_of(j.context, j.type);
    tc.check(j.context, j.subject, j.type);
}

// Elaboration

namespace {

bool same_rule(const RewriteRule& r, const RuleItem& item) {
    if (r.context.size() != item.context.size()) return false;
    for (std::size_t i = 0; i < r.context.size(); ++i) {
        const auto& a = r.context.entries()[i];
        const auto& b = item.context.entries()[i];
        if (a.name != b.name || !alpha_equal(a.type, b.type)) return false;
    }
    return alpha_equal(r.lhs, item.lhs) && alpha_equal(r.rhs, item.rhs);
}

std::string rule_label(const RuleItem& r) {
    Spine s = spine_of(r.lhs);
    return s.head.is(TermKind::Const) ? s.head.name() : print_term(r.lhs);
}

}  // namespace

void Elaborator::check_constant_type(const std::string& name, const Term& type) {
    TypeChecker tc(theory_, budget_);
    Sort s = tc.sort_of(Context{}, type);
    if (s == Sort::Kind && theory_.prelude_included())
        throw Error(ErrorKind::PreludeViolation,
                    "type of '" + name + "' is a kind; constants over the prelude must have types of sort TYPE");
}

void Elaborator::add_decl(const DeclItem& d, const SourcePos& pos, ItemResult& r) {
    if (const ConstDecl* prev = theory_.find(d.name)) {
        if (prev->origin == Origin::Prelude && alpha_equal(prev->type, d.type)) {
            r.restated = true;
            return;
        }
        throw Error(ErrorKind::DuplicateConstant, "constant '" + d.name + "' is already declared");
    }
    check_constant_type(d.name, d.type);
    theory_.add_constant(ConstDecl{d.name, d.type, Origin::User, std::nullopt, pos});
}

void Elaborator::add_rule(const RuleItem& d, const SourcePos& pos, ItemResult& r) {
    if (theory_.prelude_included()) {
        for (const auto& existing : theory_.rules())
            if (existing.origin == Origin::Prelude && same_rule(existing, d)) {
                r.restated = true;
                return;
            }
    }
    RewriteRule rule{d.context, d.lhs, d.rhs, Origin::User, std::nullopt, pos};
    check_rule_shape(rule);
    TypeChecker tc(theory_, budget_);
    tc.check_context(d.context);
    Term lt = tc.infer(d.context, d.lhs);
    Term rt = tc.infer(d.context, d.rhs);
    if (!tc.convertible(lt, rt))
        throw Error(ErrorKind::TypePreservationFailure, "left-hand side has type '" + print_term(lt) +
                                                            "' but right-hand side has type '" + print_term(rt) + "'");
    theory_.add_rule(std::move(rule));
}

void Elaborator::add_def(const DefItem& d, const SourcePos& pos, ItemResult&) {
    if (theory_.has_constant(d.name))
        throw Error(ErrorKind::DuplicateConstant, "constant '" + d.name + "' is already declared");
    check_constant_type(d.name, d.type);
    TypeChecker(theory_, budget_).check(Context{}, d.body, d.type);
    RewriteRule rule{Context{}, Term::cnst(d.name), d.body, Origin::User, d.name, pos};
    if (d.body.has_hole()) throw Error(ErrorKind::HoleInTerm, "hole in definition body");
    theory_.add_constant(ConstDecl{d.name, d.type, Origin::User, d.body, pos});
    theory_.add_rule(std::move(rule));
}

void Elaborator::check_assert_conv(const AssertConvItem& a) {
    TypeChecker tc(theory_, budget_);
    tc.infer(Context{}, a.lhs);
    tc.infer(Context{}, a.rhs);
    if (!tc.convertible(a.lhs, a.rhs))
        throw Error(ErrorKind::TypeMismatch,
                    "'" + print_term(a.lhs) + "' and '" + print_term(a.rhs) + "' are not convertible");
}

void Elaborator::check_assert_type(const AssertTypeItem& a) {
    TypeChecker tc(theory_, budget_);
    tc.sort_of(Context{}, a.type);
    tc.check(Context{}, a.term, a.type);
}

ItemResult Elaborator::add(const Item& item) {
    ItemResult r;
    r.pos = item.pos;
    try {
        if (auto d = item.as<DeclItem>()) {
            r.kind = "decl";
            r.name = d->name;
            add_decl(*d, item.pos, r);
        } else if (auto ru = item.as<RuleItem>()) {
            r.kind = "rule";
            r.name = rule_label(*ru);
            add_rule(*ru, item.pos, r);
        } else if (auto df = item.as<DefItem>()) {
            r.kind = "def";
            r.name = df->name;
            add_def(*df, item.pos, r);
        } else if (auto ac = item.as<AssertConvItem>()) {
            r.kind = "assert";
            r.name = print_term(ac->lhs) + " == " + print_term(ac->rhs);
            check_assert_conv(*ac);
        } else if (auto at = item.as<AssertTypeItem>()) {
            r.kind = "assert";
            r.name = print_term(at->term) + " : " + print_term(at->type);
            check_assert_type(*at);
        } else if (auto rq = item.as<RequireItem>()) {
            r.kind = "require";
            r.name = rq->module;
        }
    } catch (Error& e) {
        if (!e.pos().known()) e.set_pos(item.pos);
        r.error = e;
    }
    return r;
}

bool ElabResult::ok() const { return first_failure() == nullptr; }

const ItemResult* ElabResult::first_failure() const {
    for (const auto& it : items)
        if (!it.ok()) return &it;
    return nullptr;
}

ElabResult elaborate_theory(const SourceFile& file, Theory base, ReductionBudget budget) {
    Elaborator elab(std::move(base), budget);
    ElabResult out;
    for (const auto& item : file.items) out.items.push_back(elab.add(item));
    out.theory = std::move(elab).take();
    return out;
}

// Loading

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::filesystem::path> search_path_from_env() {
    std::vector<std::filesystem::path> out;
    const char* env = std::getenv("PFK_PATH");
    if (!env) return out;
    std::string s(env);
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t end = s.find(':', start);
        if (end == std::string::npos) end = s.size();
        if (end > start) out.emplace_back(s.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

Loader::Loader(Theory base, LoadOptions opts) : elab_(std::move(base), opts.budget), opts_(std::move(opts)) {}

std::string Loader::canonical(const std::filesystem::path& p) {
    std::error_code ec;
    auto c = std::filesystem::weakly_canonical(p, ec);
    return ec ? p.lexically_normal().string() : c.string();
}

void Loader::mark_loaded(const std::string& canonical) { done_.insert(canonical); }

bool Loader::ok() const {
    for (const auto& r : results_)
        if (!r.ok()) return false;
    return true;
}

void Loader::load_file(const std::filesystem::path& path) {
    std::string key = canonical(path);
    if (done_.count(key)) return;
    std::string text = read_file(path);
    stack_.push_back(key);
    run(parse_file(text, path.string()), path.parent_path());
    stack_.pop_back();
    done_.insert(key);
    loaded_.push_back(path.string());
}

void Loader::load_text(std::string_view text, const std::string& path) {
    run(parse_file(text, path), std::filesystem::path(path).parent_path());
    loaded_.push_back(path);
}

void Loader::load_requires(const SourceFile& file, const std::filesystem::path& dir) {
    for (const auto& item : file.items)
        if (auto rq = item.as<RequireItem>()) require(*rq, item.pos, dir);
}

void Loader::run(const SourceFile& file, const std::filesystem::path& dir) {
    for (const auto& item : file.items) {
        if (auto rq = item.as<RequireItem>()) {
            require(*rq, item.pos, dir);
            continue;
        }
        results_.push_back(elab_.add(item));
    }
}

void Loader::require(const RequireItem& req, const SourcePos& pos, const std::filesystem::path& dir) {
    if (req.module == "prelude" && elab_.theory().prelude_included()) return;
    std::vector<std::filesystem::path> dirs{dir.empty() ? std::filesystem::path(".") : dir};
    dirs.insert(dirs.end(), opts_.search_path.begin(), opts_.search_path.end());
    for (const auto& d : dirs) {
        std::filesystem::path candidate = d / (req.module + ".pfk");
        if (!std::filesystem::is_regular_file(candidate)) continue;
        std::string key = canonical(candidate);
        if (std::find(stack_.begin(), stack_.end(), key) != stack_.end())
            throw Error(ErrorKind::RequireCycle, "module '" + req.module + "' requires itself", pos);
        load_file(candidate);
        return;
    }
    auto builtin = opts_.builtin_modules.find(req.module);
    if (builtin != opts_.builtin_modules.end()) {
        std::string key = "<builtin>/" + req.module;
        if (done_.count(key)) return;
        if (std::find(stack_.begin(), stack_.end(), key) != stack_.end())
            throw Error(ErrorKind::RequireCycle, "module '" + req.module + "' requires itself", pos);
        stack_.push_back(key);
        run(parse_file(builtin->second, req.module + ".pfk"), {});
        stack_.pop_back();
        done_.insert(key);
        loaded_.push_back(key);
        return;
    }
    throw Error(ErrorKind::IoError, "cannot find module '" + req.module + "'", pos);
}

}  // namespace pfk
