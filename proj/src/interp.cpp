#include "pfk/interp.hpp"

#include "pfk/print.hpp"

namespace pfk {

std::string star_name(const std::string& x) { return x + "'star"; }
std::string plus_name(const std::string& x) { return x + "'plus"; }

const Parameter* ParamMap::find(const std::string& name) const {
    auto it = entries_.find(name);
    return it == entries_.end() ? nullptr : &it->second;
}

const Term& PlusResult::term() const {
    if (hole_) throw Error(ErrorKind::KindPlusUnsupported, "plus translation of a kind has no plain form");
    return t_;
}

Term PlusResult::apply(const Term& subject) const {
    return hole_ ? fill_hole(t_, subject) : Term::app(t_, subject);
}

bool is_kind(const Term& t) {
    if (t.is_sort(Sort::Type)) return true;
    return t.is(TermKind::Pi) && is_kind(t.body());
}

namespace {

std::string binder_var(const Term& binder) {
    const std::string& hint = binder.name();
    std::string base = is_identifier(hint) ? hint : std::string("x");
    if (!binder.has_free_vars()) return base;
    return fresh_name(base, free_variables(binder));
}

// (x* : A*) (x+ : A+ x*). body, as nested Lam or Pi.
Term double_binder(bool lam, const std::string& n, const Term& a_star, const Term& a_plus, const Term& body) {
    std::string xs = star_name(n), xp = plus_name(n);
    Term plus_ann = Term::app(a_plus, Term::var(xs));
    if (lam) return Term::lam(xs, a_star, Term::lam(xp, plus_ann, body));
    return Term::pi(xs, a_star, Term::pi(xp, plus_ann, body));
}

}  // namespace

const Parameter& Translator::param(const std::string& c) const {
    const Parameter* p = map_.find(c);
    if (!p) throw Error(ErrorKind::MissingParameter, "no parameters for constant '" + c + "'");
    return *p;
}

Term Translator::plus_plain(const Term& t) const {
    PlusResult r = plus(t);
    if (r.has_hole())
        throw Error(ErrorKind::SortError, "kind '" + print_term(t) + "' used where an object or type is expected");
    return r.raw();
}

Term Translator::star(const Term& t) const {
    switch (t.kind()) {
        case TermKind::Sort:
            return t;
        case TermKind::Var:
            return Term::var(star_name(t.name()));
        case TermKind::Const:
            return param(t.name()).star;
        case TermKind::App:
            return Term::app(Term::app(star(t.fn()), star(t.arg())), plus_plain(t.arg()));
        case TermKind::Lam:
        case TermKind::Pi: {
            std::string n = binder_var(t);
            Term body = star(open_binder(t, n));
            return double_binder(t.is(TermKind::Lam), n, star(t.ann()), plus_plain(t.ann()), body);
        }
        case TermKind::Hole:
            throw Error(ErrorKind::HoleInTerm, "cannot translate a term containing a hole");
        case TermKind::BVar:
            break;
    }
    throw Error(ErrorKind::UnboundVariable, "dangling bound variable in translation");
}

PlusResult Translator::plus(const Term& t) const {
    switch (t.kind()) {
        case TermKind::Sort:
            if (t.is_sort(Sort::Kind)) throw Error(ErrorKind::KindPlusUnsupported, "no plus translation for KIND");
            return PlusResult::with_hole(Term::arrow(Term::hole(), Term::type()));
        case TermKind::Var:
            return PlusResult::plain(Term::var(plus_name(t.name())));
        case TermKind::Const:
            return PlusResult::plain(param(t.name()).plus);
        case TermKind::App:
            return PlusResult::plain(
                Term::app(Term::app(plus_plain(t.fn()), star(t.arg())), plus_plain(t.arg())));
        case TermKind::Lam: {
            std::string n = binder_var(t);
            Term body = plus_plain(open_binder(t, n));
            return PlusResult::plain(double_binder(true, n, star(t.ann()), plus_plain(t.ann()), body));
        }
        case TermKind::Pi: {
            std::string n = binder_var(t);
            Term opened = open_binder(t, n);
            Term a_star = star(t.ann());
            Term a_plus = plus_plain(t.ann());
            Term xs = Term::var(star_name(n));
            Term xp = Term::var(plus_name(n));
            if (is_kind(t.body())) {
                PlusResult b = plus(opened);
                Term filled = fill_hole(b.raw(), Term::app(Term::app(Term::hole(), xs), xp));
                return PlusResult::with_hole(double_binder(false, n, a_star, a_plus, filled));
            }
            Term whole = star(t);
            Term b_plus = plus_plain(opened);
            std::set<std::string> avoid = free_variables(whole);
            avoid.merge(free_variables(b_plus));
            avoid.insert(xs.name());
            avoid.insert(xp.name());
            std::string f = fresh_name("f", avoid);
            Term body = Term::app(b_plus, Term::app(Term::app(Term::var(f), xs), xp));
            return PlusResult::plain(Term::lam(f, whole, double_binder(false, n, a_star, a_plus, body)));
        }
        case TermKind::Hole:
            throw Error(ErrorKind::HoleInTerm, "cannot translate a term containing a hole");
        case TermKind::BVar:
            break;
    }
    throw Error(ErrorKind::UnboundVariable, "dangling bound variable in translation");
}

Context Translator::translate_context(const Context& ctx) const {
    Context out;
    for (const auto& e : ctx) {
        std::string xs = star_name(e.name);
        out.push(xs, star(e.type));
        out.push(plus_name(e.name), plus(e.type).apply(Term::var(xs)));
    }
    return out;
}

namespace {

void check_source(const Theory& src, const Context& ctx, const Term& t, ReductionBudget budget) {
    TypeChecker tc(src, budget);
    tc.check_context(ctx);
    if (!t.is(TermKind::Sort)) tc.infer(ctx, t);
}

}  // namespace

Term star(const Theory& src, const ParamMap& map, const Context& ctx, const Term& t, ReductionBudget budget) {
    check_source(src, ctx, t, budget);
    return Translator(map).star(t);
}

PlusResult plus(const Theory& src, const ParamMap& map, const Context& ctx, const Term& t, ReductionBudget budget) {
    check_source(src, ctx, t, budget);
    return Translator(map).plus(t);
}

Context translate_context(const Theory& src, const ParamMap& map, const Context& ctx, ReductionBudget budget) {
    check_context(src, ctx, budget);
    return Translator(map).translate_context(ctx);
}

ParamMap resolve_param_map(const RawParamMap& raw, const Theory& src, const Theory& tgt,
                           const ParamMap* prelude_defaults) {
    ParamMap out;
    for (const auto& name : raw.order) {
        const RawParameter& p = raw.entries.at(name);
        if (!src.has_constant(name))
            throw Error(ErrorKind::UnknownParameter, "'" + name + "' is not a constant of the source theory", p.pos);
        if (!p.star || !p.plus)
            throw Error(ErrorKind::MissingParameter,
                        "constant '" + name + "' has no '" + (p.star ? "plus" : "star") + "' parameter", p.pos);
        if (p.star->has_free_vars() || p.plus->has_free_vars())
            throw Error(ErrorKind::UnboundVariable, "parameters of '" + name + "' must be closed", p.pos);
        out.set(name, Parameter{*p.star, *p.plus, ParamSource::Given, p.pos});
    }
    bool use_defaults = prelude_defaults && src.prelude_included() && tgt.prelude_included();
    Translator tr(out);
    for (const auto& c : src.constants()) {
        if (out.contains(c.name)) continue;
        if (c.origin == Origin::Prelude && use_defaults) {
            if (const Parameter* d = prelude_defaults->find(c.name)) {
                Parameter copy = *d;
                copy.source = ParamSource::Prelude;
                out.set(c.name, copy);
            }
            continue;
        }
        if (c.definition) out.set(c.name, Parameter{tr.star(*c.definition), tr.plus(*c.definition).term(),
                                                    ParamSource::Derived, c.pos});
    }
    return out;
}

std::string_view to_string(ObligationKind k) {
    switch (k) {
        case ObligationKind::StarTyping: return "StarTyping";
        case ObligationKind::PlusTyping: return "PlusTyping";
        case ObligationKind::RuleStarConv: return "RuleStarConv";
        case ObligationKind::RulePlusConv: return "RulePlusConv";
    }
    return "?";
}

namespace {

void run_typing(const Theory& tgt, Obligation& ob, ReductionBudget budget) {
    try {
        TypeChecker tc(tgt, budget);
        const Judgment& j = *ob.judgment;
        if (!j.type.is_sort(Sort::Kind)) tc.sort_of(j.context, j.type);
        tc.check(j.context, j.subject, j.type);
        ob.status = Obligation::Status::Pass;
    } catch (const Error& e) {
        ob.status = Obligation::Status::Fail;
        ob.cause = e;
    }
}

Obligation make_obligation(ObligationKind kind, std::string subject, const SourcePos& pos,
                           std::optional<std::size_t> rule = std::nullopt) {
    Obligation ob;
    ob.kind = kind;
    ob.subject = std::move(subject);
    ob.rule_index = rule;
    ob.pos = pos;
    return ob;
}

void fail(Obligation& ob, const Error& e) {
    ob.status = Obligation::Status::Fail;
    ob.cause = e;
}

}  // namespace

std::vector<Obligation> check_interpretation(const Theory& src, const Theory& tgt, const ParamMap& map,
                                             ReductionBudget budget) {
    for (const auto& c : src.constants())
        if (!map.contains(c.name))
            throw Error(ErrorKind::MissingParameter, "no parameters for constant '" + c.name + "'", c.pos);

    bool prelude_given = false;
    for (const auto& c : src.constants())
        if (c.origin == Origin::Prelude && map.find(c.name)->source == ParamSource::Given) prelude_given = true;

    Translator tr(map);
    std::vector<Obligation> out;
    std::size_t rule_no = 0;
    for (const auto& entry : src.entries()) {
        if (entry.kind == Theory::Entry::Kind::Constant) {
            const ConstDecl& c = src.constants()[entry.index];
            const Parameter& p = *map.find(c.name);
            if (p.source != ParamSource::Given) continue;
            Obligation st = make_obligation(ObligationKind::StarTyping, c.name, c.pos);
            Obligation pl = make_obligation(ObligationKind::PlusTyping, c.name, c.pos);
            try {
                st.judgment = Judgment{{}, p.star, tr.star(c.type)};
                run_typing(tgt, st, budget);
            } catch (const Error& e) {
                fail(st, e);
            }
            try {
                pl.judgment = Judgment{{}, p.plus, tr.plus(c.type).apply(p.star)};
                run_typing(tgt, pl, budget);
            } catch (const Error& e) {
                fail(pl, e);
            }
            out.push_back(std::move(st));
            out.push_back(std::move(pl));
            continue;
        }
        const RewriteRule& r = src.rules()[entry.index];
        ++rule_no;
        bool wanted = r.origin == Origin::Prelude ? prelude_given
                      : r.defines                 ? map.find(*r.defines)->source == ParamSource::Given
                                                  : true;
        if (!wanted) continue;
        std::string subject = r.head() + "#" + std::to_string(rule_no);
        Obligation so = make_obligation(ObligationKind::RuleStarConv, subject, r.pos, rule_no);
        Obligation po = make_obligation(ObligationKind::RulePlusConv, subject, r.pos, rule_no);
        try {
            // Close the translated rule over scratch constants for the doubled rule variables.
            Theory scratch = tgt;
            Substitution close;
            Context doubled = tr.translate_context(r.context);
            for (const auto& e : doubled) {
                std::string name = fresh_name_if(e.name, [&](const std::string& n) { return scratch.has_constant(n); });
                Term type = substitute(e.type, close);
                TypeChecker(scratch, budget).sort_of(Context{}, type);
                scratch.add_constant(ConstDecl{name, type, Origin::Scratch, std::nullopt, r.pos});
                close[e.name] = Term::cnst(name);
            }
            so.conversion = {substitute(tr.star(r.lhs), close), substitute(tr.star(r.rhs), close)};
            po.conversion = {substitute(tr.plus(r.lhs).term(), close), substitute(tr.plus(r.rhs).term(), close)};
            for (Obligation* ob : {&so, &po}) {
                try {
                    Reducer red(scratch, budget);
                    if (red.convertible(ob->conversion->first, ob->conversion->second)) {
                        ob->status = Obligation::Status::Pass;
                    } else {
                        fail(*ob, Error(ErrorKind::TypeMismatch,
                                        "'" + print_term(red.whnf(ob->conversion->first)) + "' is not convertible with '" +
                                            print_term(red.whnf(ob->conversion->second)) + "'"));
                    }
                } catch (const Error& e) {
                    fail(*ob, e);
                }
            }
        } catch (const Error& e) {
            if (so.status == Obligation::Status::Pending) fail(so, e);
            if (po.status == Obligation::Status::Pending) fail(po, e);
        }
        out.push_back(std::move(so));
        out.push_back(std::move(po));
    }
    return out;
}

bool all_passed(const std::vector<Obligation>& obligations) {
    for (const auto& o : obligations)
        if (!o.passed()) return false;
    return true;
}

TransferredJudgment transfer_judgment(const Theory& src, const Theory& tgt, const ParamMap& map, const Judgment& j,
                                      ReductionBudget budget, bool with_plus) {
    TypeChecker source(src, budget);
    source.check_context(j.context);
    if (!j.type.is_sort(Sort::Kind)) source.sort_of(j.context, j.type);
    if (j.subject.is_sort(Sort::Type)) {
        if (!j.type.is_sort(Sort::Kind))
            throw Error(ErrorKind::TypeMismatch, "TYPE has type KIND, not '" + print_term(j.type) + "'");
    } else {
        source.check(j.context, j.subject, j.type);
    }

    Translator tr(map);
    TransferredJudgment out;
    Context ctx = tr.translate_context(j.context);
    Term subject = tr.star(j.subject);
    out.star = Judgment{ctx, subject, tr.star(j.type)};
    if (with_plus && !j.type.is_sort(Sort::Kind)) {
        PlusResult a_plus = tr.plus(j.type);
        out.plus = Judgment{ctx, tr.plus(j.subject).term(), a_plus.apply(subject)};
    }
    auto recheck = [&](const Judgment& tj, const char* which) {
        try {
            check_judgment(tgt, tj, budget);
        } catch (const Error& e) {
            throw Error(ErrorKind::TransferFailure, std::string(which) + " judgment does not check in the target: " +
                                                        e.describe());
        }
    };
    recheck(out.star, "star");
    if (out.plus) recheck(*out.plus, "plus");
    return out;
}

bool TransferOutput::ok() const {
    for (const auto& r : records)
        if (!r.ok()) return false;
    return true;
}

namespace {

Error as_transfer_failure(const Error& e) {
    if (e.kind() == ErrorKind::TransferFailure) return e;
    return Error(ErrorKind::TransferFailure, "target check failed: " + e.describe(), e.pos());
}

}  // namespace

TransferOutput transfer_theorems(const Theory& src, const Theory& tgt, const ParamMap& map,
                                 const SourceFile& theorems, ReductionBudget budget) {
    TransferOutput out;
    out.emitted.path = theorems.path;
    Elaborator source(src, budget);
    Elaborator target(tgt, budget);
    ParamMap params = map;
    Translator tr(params);

    // Statements are emitted in normal form so they read as target statements.
    // Definitions are not unfolded, since plus types mention the defined constant.
    Theory statements;
    for (const auto& e : tgt.entries())
        if (e.kind == Theory::Entry::Kind::Rule && !tgt.rules()[e.index].defines)
            statements.add_rule(tgt.rules()[e.index]);
    auto tidy = [&](const Term& type) {
        try {
            return normalize(statements, type, budget);
        } catch (const Error&) {
            return type;
        }
    };
    auto emit = [&](Item item) {
        ItemResult r = target.add(item);
        if (!r.ok()) throw *r.error;
        out.emitted.items.push_back(std::move(item));
    };
    auto require_fresh = [&](const std::string& name) {
        if (target.theory().has_constant(name))
            throw Error(ErrorKind::TransferFailure, "name '" + name + "' is already used in the target theory");
    };

    for (const auto& item : theorems.items) {
        if (item.as<RequireItem>()) continue;
        TransferRecord rec;
        rec.pos = item.pos;
        if (item.as<RuleItem>()) {
            rec.kind = "rule";
            rec.name = spine_of(item.as<RuleItem>()->lhs).head.is(TermKind::Const)
                           ? spine_of(item.as<RuleItem>()->lhs).head.name()
                           : std::string("rule");
            rec.error = Error(ErrorKind::TransferFailure, "rewrite rules cannot be transferred; state them in the source theory",
                              item.pos);
            out.records.push_back(std::move(rec));
            continue;
        }
        ItemResult checked = source.add(item);
        rec.kind = checked.kind;
        rec.name = checked.name;
        if (!checked.ok()) {
            rec.error = checked.error;
            out.records.push_back(std::move(rec));
            continue;
        }
        try {
            if (auto d = item.as<DeclItem>()) {
                std::string hp = plus_name(d->name);
                require_fresh(d->name);
                require_fresh(hp);
                Term a_star = tidy(tr.star(d->type));
                Term a_plus = tidy(tr.plus(d->type).apply(Term::cnst(d->name)));
                TransferredJudgment tj;
                tj.star = Judgment{{}, Term::cnst(d->name), a_star};
                tj.plus = Judgment{{}, Term::cnst(hp), a_plus};
                try {
                    emit(Item{DeclItem{d->name, a_star}, item.pos});
                    emit(Item{DeclItem{hp, a_plus}, item.pos});
                } catch (const Error& e) {
                    throw as_transfer_failure(e);
                }
                params.set(d->name, Parameter{Term::cnst(d->name), Term::cnst(hp), ParamSource::Transferred, item.pos});
                rec.result = std::move(tj);
            } else if (auto df = item.as<DefItem>()) {
                std::string cp = plus_name(df->name);
                require_fresh(df->name);
                require_fresh(cp);
                Term a_star = tidy(tr.star(df->type));
                Term t_star = tr.star(df->body);
                Term t_plus = tr.plus(df->body).term();
                TransferredJudgment tj;
                tj.star = Judgment{{}, t_star, a_star};
                tj.plus = Judgment{{}, t_plus, tidy(tr.plus(df->type).apply(t_star))};
                try {
                    emit(Item{DefItem{df->name, a_star, t_star}, item.pos});
                    emit(Item{DefItem{cp, tidy(tr.plus(df->type).apply(Term::cnst(df->name))), t_plus}, item.pos});
                } catch (const Error& e) {
                    throw as_transfer_failure(e);
                }
                params.set(df->name,
                           Parameter{Term::cnst(df->name), Term::cnst(cp), ParamSource::Transferred, item.pos});
                rec.result = std::move(tj);
            } else if (auto at = item.as<AssertTypeItem>()) {
                Term t_star = tr.star(at->term);
                TransferredJudgment tj;
                tj.star = Judgment{{}, t_star, tr.star(at->type)};
                if (!at->term.is_sort(Sort::Type))
                    tj.plus = Judgment{{}, tr.plus(at->term).term(), tr.plus(at->type).apply(t_star)};
                try {
                    emit(Item{AssertTypeItem{tj.star.subject, tj.star.type}, item.pos});
                    if (tj.plus) emit(Item{AssertTypeItem{tj.plus->subject, tj.plus->type}, item.pos});
                } catch (const Error& e) {
                    throw as_transfer_failure(e);
                }
                rec.result = std::move(tj);
            } else if (auto ac = item.as<AssertConvItem>()) {
                try {
                    emit(Item{AssertConvItem{tr.star(ac->lhs), tr.star(ac->rhs)}, item.pos});
                    PlusResult lp = tr.plus(ac->lhs), rp = tr.plus(ac->rhs);
                    if (!lp.has_hole() && !rp.has_hole())
                        emit(Item{AssertConvItem{lp.raw(), rp.raw()}, item.pos});
                } catch (const Error& e) {
                    throw as_transfer_failure(e);
                }
            }
        } catch (const Error& e) {
            rec.error = e;
            if (!rec.error->pos().known()) rec.error->set_pos(item.pos);
        }
        out.records.push_back(std::move(rec));
    }

    // The emitted file must stand on its own over the target.
    TransferRecord whole;
    whole.kind = "recheck";
    whole.name = "emitted";
    try {
        SourceFile reparsed = parse_file(print_file(out.emitted), "<emitted>");
        ElabResult res = elaborate_theory(reparsed, tgt, budget);
        if (const ItemResult* bad = res.first_failure())
            whole.error = Error(ErrorKind::TransferFailure,
                                "emitted item '" + bad->name + "' fails: " + bad->error->describe());
        out.target = std::move(res.theory);
    } catch (const Error& e) {
        whole.error = as_transfer_failure(e);
        out.target = target.theory();
    }
    out.records.push_back(std::move(whole));
    return out;
}

ConsistencyWitness consistency_transform(const Theory& tgt, const std::string& t_name, const Context& ctx,
                                         ReductionBudget budget) {
    TypeChecker tc(tgt, budget);
    tc.check_context(ctx);
    Term h = ctx.contains(t_name) ? Term::var(t_name) : Term::cnst(t_name);
    Term el_o = Term::app(Term::cnst("El"), Term::cnst("o"));
    auto prf = [](const Term& p) { return Term::app(Term::cnst("Prf"), p); };
    std::string p = ctx.fresh("P");
    Term pv = Term::var(p);
    Term expected = Term::pi(p, el_o, Term::arrow(Term::arrow(prf(pv), prf(pv)), prf(pv)));
    Term actual = tc.infer(ctx, h);
    if (!tc.convertible(actual, expected))
        throw Error(ErrorKind::TypeMismatch, "'" + t_name + "' has type '" + print_term(actual) +
                                                 "', expected '" + print_term(expected) + "'");
    std::string x = fresh_name("x", {p});
    Term id = Term::lam(x, prf(pv), Term::var(x));
    Term witness = Term::lam(p, el_o, Term::app(Term::app(h, pv), id));
    Judgment j{ctx, witness, Term::pi(p, el_o, prf(pv))};
    tc.check(j.context, j.subject, j.type);
    return {witness, j};
}

}  // namespace pfk
