#include "pfk/rewriting.hpp"

#include <set>

#include "pfk/error.hpp"
#include "pfk/print.hpp"

namespace pfk {

namespace {

bool is_rule_var(const Term& pattern) { return pattern.is(TermKind::Var); }

bool match_syntactic(const Term& pattern, const Term& t, Substitution& out) {
    if (is_rule_var(pattern)) {
        out[pattern.name()] = t;
        return true;
    }
    if (pattern.kind() != t.kind()) return false;
    switch (pattern.kind()) {
        case TermKind::Const:
            return pattern.name() == t.name();
        case TermKind::App:
            return match_syntactic(pattern.fn(), t.fn(), out) && match_syntactic(pattern.arg(), t.arg(), out);
        default:
            return false;
    }
}

void collect_pattern_vars(const Term& p, std::vector<std::string>& vars) {
    switch (p.kind()) {
        case TermKind::Var:
            vars.push_back(p.name());
            return;
        case TermKind::Const:
            return;
        case TermKind::App: {
            Spine s = spine_of(p);
            if (!s.head.is(TermKind::Const))
                throw Error(ErrorKind::UnsupportedPattern,
                            "pattern '" + print_term(p) + "' is not headed by a constant");
            for (const auto& a : s.args) collect_pattern_vars(a, vars);
            return;
        }
        case TermKind::Sort:
            throw Error(ErrorKind::InvalidRule, "sorts may not occur in a rule");
        case TermKind::Hole:
            throw Error(ErrorKind::HoleInTerm, "hole in rule pattern");
        default:
            throw Error(ErrorKind::UnsupportedPattern,
                        "binders are not allowed in patterns: '" + print_term(p) + "'");
    }
}

bool contains_sort(const Term& t) {
    switch (t.kind()) {
        case TermKind::Sort:
            return true;
        case TermKind::App:
        case TermKind::Lam:
        case TermKind::Pi:
            return contains_sort(t.fn()) || contains_sort(t.arg());
        default:
            return false;
    }
}

}  // namespace

std::optional<Substitution> match_rule(const RewriteRule& rule, const Term& t) {
    Substitution theta;
    if (!match_syntactic(rule.lhs, t, theta)) return std::nullopt;
    return theta;
}

void check_rule_shape(const RewriteRule& rule) {
    Spine s = spine_of(rule.lhs);
    if (!s.head.is(TermKind::Const))
        throw Error(ErrorKind::HeadNotConstant,
                    "head of left-hand side '" + print_term(rule.lhs) + "' is not a constant", rule.pos);
    std::vector<std::string> vars;
    for (const auto& a : s.args) collect_pattern_vars(a, vars);
    std::set<std::string> seen;
    for (const auto& v : vars) {
        if (!rule.context.contains(v))
            throw Error(ErrorKind::InvalidRule, "variable '" + v + "' is not declared in the rule context", rule.pos);
        if (!seen.insert(v).second)
            throw Error(ErrorKind::NonLinearPattern, "rule variable '" + v + "' occurs more than once in the left-hand side",
                        rule.pos);
    }
    for (const auto& e : rule.context)
        if (!seen.count(e.name))
            throw Error(ErrorKind::InvalidRule, "rule variable '" + e.name + "' does not occur in the left-hand side",
                        rule.pos);
    if (rule.rhs.has_hole()) throw Error(ErrorKind::HoleInTerm, "hole in rule right-hand side", rule.pos);
    if (contains_sort(rule.rhs)) throw Error(ErrorKind::InvalidRule, "sorts may not occur in a rule", rule.pos);
    for (const auto& v : free_variables(rule.rhs))
        if (!seen.count(v))
            throw Error(ErrorKind::InvalidRule, "right-hand side mentions unbound variable '" + v + "'", rule.pos);
}

void Reducer::tick() {
    if (++steps_ > budget_.max_steps)
        throw Error(ErrorKind::BudgetExhausted,
                    "reduction budget of " + std::to_string(budget_.max_steps) + " steps exhausted");
}

Term Reducer::normalize(const Term& t) {
    Term h = whnf(t);
    switch (h.kind()) {
        case TermKind::App: {
            Spine sp = spine_of(h);
            std::vector<Term> args;
            for (const auto& a : sp.args) args.push_back(normalize(a));
            return Term::app(sp.head, args);
        }
        case TermKind::Lam:
        case TermKind::Pi: {
            std::string v = fresh_internal();
            Term ann = normalize(h.ann());
            Term body = abstract(normalize(open_binder(h, v)), v);
            return h.is(TermKind::Lam) ? Term::lam_raw(h.name(), ann, body) : Term::pi_raw(h.name(), ann, body);
        }
        default: return h;
    }
}

std::string Reducer::fresh_internal() { return "%" + std::to_string(++fresh_counter_); }

bool Reducer::match(const Term& pattern, const Term& t, Substitution& out) {
    if (is_rule_var(pattern)) {
        out[pattern.name()] = t;
        return true;
    }
    Spine ps = spine_of(pattern);
    Term target = t;
    Spine ts = spine_of(target);
    bool rigid_match = ts.head.is(TermKind::Const) && ts.head.name() == ps.head.name() &&
                       ts.args.size() == ps.args.size();
    if (!rigid_match) {
        target = whnf(t);
        ts = spine_of(target);
        if (!ts.head.is(TermKind::Const) || ts.head.name() != ps.head.name() || ts.args.size() != ps.args.size())
            return false;
    }
    for (std::size_t i = 0; i < ps.args.size(); ++i)
        if (!match(ps.args[i], ts.args[i], out)) return false;
    return true;
}

std::optional<Term> Reducer::head_step(const Term& t) {
    Spine s = spine_of(t);
    if (s.args.empty()) {
        if (!s.head.is(TermKind::Const)) return std::nullopt;
    }
    if (s.head.is(TermKind::Lam)) {
        Term result = instantiate(s.head.body(), s.args.front());
        for (std::size_t i = 1; i < s.args.size(); ++i) result = Term::app(result, s.args[i]);
        return result;
    }
    if (!s.head.is(TermKind::Const)) return std::nullopt;
    for (const RewriteRule* rule : sig_.rules_for(s.head.name())) {
        Spine ls = spine_of(rule->lhs);
        if (ls.args.size() > s.args.size()) continue;
        Substitution theta;
        bool ok = true;
        for (std::size_t i = 0; i < ls.args.size() && ok; ++i) ok = match(ls.args[i], s.args[i], theta);
        if (!ok) continue;
        Term result = substitute(rule->rhs, theta);
        for (std::size_t i = ls.args.size(); i < s.args.size(); ++i) result = Term::app(result, s.args[i]);
        return result;
    }
    return std::nullopt;
}

Term Reducer::whnf(const Term& t) {
    Term cur = t;
    while (auto next = head_step(cur)) {
        tick();
        cur = *next;
    }
    return cur;
}

bool Reducer::convertible(const Term& t, const Term& u) {
    if (t.has_hole() || u.has_hole()) throw Error(ErrorKind::HoleInTerm, "conversion check on a term with a hole");
    return conv(t, u);
}

bool Reducer::conv(const Term& t, const Term& u) {
    if (alpha_equal(t, u)) return true;
    Term a = whnf(t);
    Term b = whnf(u);
    if (alpha_equal(a, b)) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case TermKind::Lam:
        case TermKind::Pi: {
            if (!conv(a.ann(), b.ann())) return false;
            std::string v = fresh_internal();
            return conv(open_binder(a, v), open_binder(b, v));
        }
        case TermKind::App: {
            Spine sa = spine_of(a);
            Spine sb = spine_of(b);
            if (sa.args.size() != sb.args.size() || !alpha_equal(sa.head, sb.head)) return false;
            for (std::size_t i = 0; i < sa.args.size(); ++i)
                if (!conv(sa.args[i], sb.args[i])) return false;
            return true;
        }
        default:
            return false;
    }
}

Term whnf(const Theory& sig, const Term& t, ReductionBudget budget) {
    if (t.has_hole()) throw Error(ErrorKind::HoleInTerm, "whnf of a term with a hole");
    Reducer r(sig, budget);
    return r.whnf(t);
}

bool convertible(const Theory& sig, const Term& t, const Term& u, ReductionBudget budget) {
    Reducer r(sig, budget);
    return r.convertible(t, u);
}

namespace {

void reducts_into(const Theory& sig, const Term& t, std::vector<Term>& out, std::uint64_t& counter) {
    // Root steps.
    if (t.is(TermKind::App) && t.fn().is(TermKind::Lam)) out.push_back(instantiate(t.fn().body(), t.arg()));
    Spine s = spine_of(t);
    if (s.head.is(TermKind::Const)) {
        for (const RewriteRule* rule : sig.rules_for(s.head.name())) {
            if (rule->arity() != s.args.size()) continue;
            if (auto theta = match_rule(*rule, t)) out.push_back(substitute(rule->rhs, *theta));
        }
    }
    switch (t.kind()) {
        case TermKind::App: {
            std::vector<Term> sub;
            reducts_into(sig, t.fn(), sub, counter);
            for (auto& f : sub) out.push_back(Term::app(f, t.arg()));
            sub.clear();
            reducts_into(sig, t.arg(), sub, counter);
            for (auto& a : sub) out.push_back(Term::app(t.fn(), a));
            return;
        }
        case TermKind::Lam:
        case TermKind::Pi: {
            auto rebuild = [&](const Term& ann, const Term& body) {
                return t.is(TermKind::Lam) ? Term::lam_raw(t.name(), ann, body) : Term::pi_raw(t.name(), ann, body);
            };
            std::vector<Term> sub;
            reducts_into(sig, t.ann(), sub, counter);
            for (auto& a : sub) out.push_back(rebuild(a, t.body()));
            sub.clear();
            std::string v = "%r" + std::to_string(++counter);
            reducts_into(sig, open_binder(t, v), sub, counter);
            for (auto& b : sub) out.push_back(rebuild(t.ann(), abstract(b, v)));
            return;
        }
        default:
            return;
    }
}

}  // namespace

Term normalize(const Theory& sig, const Term& t, ReductionBudget budget) { return Reducer(sig, budget).normalize(t); }

std::vector<Term> one_step_reducts(const Theory& sig, const Term& t) {
    std::vector<Term> out;
    std::uint64_t counter = 0;
    reducts_into(sig, t, out, counter);
    return out;
}

}  // namespace pfk
