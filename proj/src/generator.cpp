#include "pfk/generator.hpp"


#include "pfk/corpus.hpp"
#include "pfk/prelude.hpp"
#include "pfk/print.hpp"
#include "pfk/surface.hpp"

namespace pfk {

namespace {

constexpr std::size_t kMaxExamples = 5;

bool mentions(const Term& t, const std::string& x) { return occurs_free(x, t); }

}  // namespace

TermGenerator::TermGenerator(const Theory& sig, Context ctx, std::uint64_t seed, GeneratorOptions opts)
    : sig_(sig), ctx_(std::move(ctx)), rng_(seed), opts_(opts) {
    try_add(Term::type());
    for (const auto& c : sig_.constants())
        if (c.origin != Origin::Scratch) try_add(Term::cnst(c.name));
    for (const auto& e : ctx_.entries()) try_add(Term::var(e.name));
}

std::size_t TermGenerator::below(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
}

std::optional<Typed> TermGenerator::pick(const std::function<bool(const Typed&)>& pred) {
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < pool_.size(); ++i)
        if (pred(pool_[i])) hits.push_back(i);
    if (hits.empty()) return std::nullopt;
    return pool_[hits[below(hits.size())]];
}

bool TermGenerator::try_add(const Term& t) {
    if (term_size(t) > opts_.max_size || seen_.count(t)) return false;
    try {
        TypeChecker tc(sig_, opts_.budget);
        Typed e;
        e.term = t;
        if (t.is_sort(Sort::Type)) {
            e.type = Term::kind_sort();
        } else {
            e.type = tc.infer(ctx_, t);
        }
        Term head = e.type.is_sort(Sort::Kind) ? e.type : tc.whnf(e.type);
        if (head.is_sort(Sort::Type))
            e.level = Typed::Level::Type;
        else if (!e.type.is_sort(Sort::Kind) && tc.sort_of(ctx_, e.type) == Sort::Type)
            e.level = Typed::Level::Object;
        seen_.insert(t);
        pool_.push_back(std::move(e));
        heads_.push_back(std::move(head));
        return true;
    } catch (const Error&) {
        return false;
    }
}

void TermGenerator::grow(std::size_t steps) {
    for (std::size_t i = 0; i < steps; ++i) {
        switch (below(8)) {
            case 0:
            case 1:
            case 2:
            case 3: step_app(); break;
            case 4:
            case 5: step_lam(); break;
            case 6: step_pi(); break;
            default: step_rule(); break;
        }
    }
}

bool TermGenerator::fits(const Typed& e, const Term& want) const {
    if (e.type.is_sort(Sort::Kind)) return false;
    if (alpha_equal(e.type, want)) return true;
    try {
        return convertible(sig_, e.type, want, opts_.budget);
    } catch (const Error&) {
        return false;
    }
}

void TermGenerator::step_app() {
    std::vector<std::size_t> fns;
    for (std::size_t i = 0; i < pool_.size(); ++i)
        if (heads_[i].is(TermKind::Pi)) fns.push_back(i);
    if (fns.empty()) return;
    std::size_t fi = fns[below(fns.size())];
    Term fn = pool_[fi].term;
    Term dom = heads_[fi].ann();

    std::vector<std::size_t> args;
    for (std::size_t i = 0; i < pool_.size(); ++i)
        if (fits(pool_[i], dom)) args.push_back(i);
    if (args.empty()) return;
    try_add(Term::app(fn, pool_[args[below(args.size())]].term));
}

void TermGenerator::step_lam() {
    const auto& entries = ctx_.entries();
    if (entries.empty()) return;
    std::size_t vi = below(entries.size());
    const auto& x = entries[vi];
    for (std::size_t j = vi + 1; j < entries.size(); ++j)
        if (mentions(entries[j].type, x.name)) return;

    // Prefer bodies that use the variable, so the binder is not vacuous.
    bool want_use = below(4) != 0;
    auto body = pick([&](const Typed& e) {
        if (e.type.is_sort(Sort::Kind)) return false;
        return !want_use || mentions(e.term, x.name);
    });
    if (!body) return;
    try_add(Term::lam(x.name, x.type, body->term));
}

void TermGenerator::step_pi() {
    auto cod = pick([](const Typed& e) { return e.level == Typed::Level::Type || e.term.is_sort(Sort::Type); });
    if (!cod) return;
    if (below(2) == 0 && !ctx_.empty()) {
        const auto& entries = ctx_.entries();
        const auto& x = entries[below(entries.size())];
        try_add(Term::pi(x.name, x.type, cod->term));
        return;
    }
    auto dom = pick([](const Typed& e) { return e.level == Typed::Level::Type; });
    if (!dom) return;
    try_add(Term::arrow(dom->term, cod->term));
}

void TermGenerator::step_rule() {
    std::vector<const RewriteRule*> rules;
    for (const auto& r : sig_.rules())
        if (!r.defines) rules.push_back(&r);
    if (rules.empty()) return;
    const RewriteRule& rule = *rules[below(rules.size())];

    Substitution theta;
    for (const auto& e : rule.context.entries()) {
        Term want = substitute(e.type, theta);
        std::vector<std::size_t> hits;
        for (std::size_t i = 0; i < pool_.size(); ++i)
            if (fits(pool_[i], want)) hits.push_back(i);
        if (hits.empty()) return;
        theta[e.name] = pool_[hits[below(hits.size())]].term;
    }
    try_add(substitute(rule.lhs, theta));
}

void PropertyResult::fail(std::string what) {
    ++failures;
    if (examples.size() < kMaxExamples) examples.push_back(std::move(what));
}

Context nat_generator_context() {
    Context ctx;
    ctx.push("n", Term::app(Term::cnst("El"), Term::cnst("nat")));
    ctx.push("m", Term::app(Term::cnst("El"), Term::cnst("nat")));
    ctx.push("p", Term::app(Term::cnst("El"), Term::cnst("o")));
    ctx.push("h", Term::app(Term::cnst("Prf"), Term::var("p")));
    ctx.push("f", Term::arrow(Term::app(Term::cnst("El"), Term::cnst("nat")),
                              Term::app(Term::cnst("El"), Term::cnst("nat"))));
    ctx.push("P", Term::arrow(Term::app(Term::cnst("El"), Term::cnst("nat")),
                              Term::app(Term::cnst("El"), Term::cnst("o"))));
    ctx.push("a", Term::cnst("Set"));
    ctx.push("u", Term::app(Term::cnst("El"), Term::var("a")));
    ctx.push("k", Term::app(Term::cnst("Prf"),
                            Term::app(Term::cnst("geq_n"), {Term::var("n"), Term::var("m")})));
    return ctx;
}

namespace {

constexpr std::size_t kBatch = 25;

std::string show(const Term& t) { return print_term(t); }

// Plus translations of kinds carry a hole; fill it with a shared rigid variable
// so both sides can be compared by conversion.
Term closed_plus(const PlusResult& p) {
    return p.has_hole() ? fill_hole(p.raw(), Term::var("subject'")) : p.raw();
}

}  // namespace

PropertyResult check_substitution_commutes(const PropertySetup& s, std::size_t cases) {
    PropertyResult r;
    r.name = "substitution commutes with translation";
    Translator tr(s.map);
    for (std::uint64_t batch = 0; r.cases < cases && batch < cases; ++batch) {
        TermGenerator outer(s.src, s.ctx, s.seed * 7919 + batch);
        outer.grow();
        auto w = outer.pick([](const Typed& e) { return e.level == Typed::Level::Object; });
        if (!w) continue;

        std::string z = s.ctx.fresh("z");
        TermGenerator inner(s.src, s.ctx.extend(z, w->type), s.seed * 104729 + batch);
        inner.grow();
        for (std::size_t i = 0; i < kBatch && r.cases < cases; ++i) {
            auto t = inner.pick([&](const Typed& e) { return occurs_free(z, e.term); });
            if (!t) t = inner.pick([](const Typed&) { return true; });
            ++r.cases;
            try {
                Term direct = substitute(t->term, {{z, w->term}});
                Substitution both{{star_name(z), tr.star(w->term)}, {plus_name(z), tr.plus(w->term).raw()}};
                Term star_l = tr.star(direct);
                Term star_r = substitute(tr.star(t->term), both);
                if (!alpha_equal(star_l, star_r)) {
                    r.fail("star: t = " + show(t->term) + ", w = " + show(w->term));
                    continue;
                }
                PlusResult plus_l = tr.plus(direct);
                PlusResult plus_t = tr.plus(t->term);
                if (plus_l.has_hole() != plus_t.has_hole() ||
                    !alpha_equal(plus_l.raw(), substitute(plus_t.raw(), both)))
                    r.fail("plus: t = " + show(t->term) + ", w = " + show(w->term));
            } catch (const Error& e) {
                r.fail(e.describe());
            }
        }
    }
    return r;
}

PropertyResult check_conversion_preserved(const PropertySetup& s, std::size_t cases) {
    PropertyResult r;
    r.name = "conversion is preserved by translation";
    Translator tr(s.map);
    for (std::uint64_t batch = 0; r.cases < cases && batch < cases * 4; ++batch) {
        TermGenerator gen(s.src, s.ctx, s.seed * 15485863 + batch);
        gen.grow();
        std::vector<std::pair<Term, std::vector<Term>>> redexes;
        for (const auto& e : gen.pool()) {
            auto reducts = one_step_reducts(s.src, e.term);
            if (!reducts.empty()) redexes.emplace_back(e.term, std::move(reducts));
        }
        for (std::size_t i = 0; i < kBatch && !redexes.empty() && r.cases < cases; ++i) {
            const auto& [a, reducts] = redexes[gen.below(redexes.size())];
            const Term& b = reducts[gen.below(reducts.size())];
            ++r.cases;
            try {
                if (!convertible(s.tgt, tr.star(a), tr.star(b))) {
                    r.fail("star: " + show(a) + " --> " + show(b));
                    continue;
                }
                if (!convertible(s.tgt, closed_plus(tr.plus(a)), closed_plus(tr.plus(b))))
                    r.fail("plus: " + show(a) + " --> " + show(b));
            } catch (const Error& e) {
                r.fail(show(a) + ": " + e.describe());
            }
        }
    }
    return r;
}

PropertyResult check_transfer_sound(const PropertySetup& s, std::size_t cases) {
    PropertyResult r;
    r.name = "judgments transfer to the target";
    for (std::uint64_t batch = 0; r.cases < cases && batch < cases; ++batch) {
        TermGenerator gen(s.src, s.ctx, s.seed * 32452843 + batch);
        gen.grow();
        for (std::size_t i = 0; i < kBatch / 2 && r.cases < cases; ++i) {
            // Favour compound terms over bare constants and variables.
            auto t = gen.pick([](const Typed& e) { return term_size(e.term) > 2; });
            if (!t) break;
            ++r.cases;
            try {
                transfer_judgment(s.src, s.tgt, s.map, Judgment{s.ctx, t->term, t->type});
            } catch (const Error& e) {
                r.fail(show(t->term) + " : " + show(t->type) + ": " + e.describe());
            }
        }
    }
    return r;
}

PropertyResult check_consistency_witness(const Theory& tgt) {
    PropertyResult r;
    r.name = "inconsistency witnesses transform";
    // h : (P : El o) -> (Prf P -> Prf P) -> Prf P, the translated type of a proof of falsity.
    Term prf_p = Term::app(Term::cnst("Prf"), Term::var("P"));
    Term hyp = Term::pi("P", Term::app(Term::cnst("El"), Term::cnst("o")),
                        Term::arrow(Term::arrow(prf_p, prf_p), prf_p));
    Context ctx;
    ctx.push("h", hyp);
    ++r.cases;
    try {
        consistency_transform(tgt, "h", ctx);
    } catch (const Error& e) {
        r.fail(e.describe());
    }
    return r;
}

PropertyResult check_print_round_trip(const Theory& sig, const Context& ctx, std::uint64_t seed, std::size_t cases) {
    PropertyResult r;
    r.name = "printed terms parse back";
    std::vector<std::string> names;
    for (const auto& e : ctx.entries()) names.push_back(e.name);
    for (std::uint64_t batch = 0; r.cases < cases && batch < cases; ++batch) {
        TermGenerator gen(sig, ctx, seed * 49979687 + batch);
        gen.grow();
        for (std::size_t i = 0; i < kBatch && r.cases < cases; ++i) {
            auto t = gen.pick([](const Typed&) { return true; });
            ++r.cases;
            std::string text = print_term(t->term);
            try {
                if (!alpha_equal(parse_term(text, names), t->term)) r.fail(text);
            } catch (const Error& e) {
                r.fail(text + ": " + e.describe());
            }
        }
    }
    return r;
}

PropertyResult check_corpus_round_trip() {
    PropertyResult r;
    r.name = "corpus files round-trip";
    auto same_term = [](const std::optional<Term>& a, const std::optional<Term>& b) {
        return a.has_value() == b.has_value() && (!a || alpha_equal(*a, *b));
    };
    for (const auto& name : corpus::file_names()) {
        ++r.cases;
        try {
            if (name.ends_with(".pfm")) {
                RawParamMap first = parse_param_map(corpus::file_text(name), name);
                RawParamMap second = parse_param_map(print_param_map(first), name);
                bool same = first.order == second.order;
                for (std::size_t i = 0; same && i < first.order.size(); ++i) {
                    const auto& a = first.entries.at(first.order[i]);
                    const auto& b = second.entries.at(first.order[i]);
                    same = same_term(a.star, b.star) && same_term(a.plus, b.plus);
                }
                if (!same) r.fail(name);
                continue;
            }
            SourceFile first = parse_file(corpus::file_text(name), name);
            SourceFile second = parse_file(print_file(first), name);
            bool same = first.items.size() == second.items.size();
            for (std::size_t i = 0; same && i < first.items.size(); ++i)
                same = alpha_equal(first.items[i], second.items[i]);
            if (!same) r.fail(name);
        } catch (const Error& e) {
            r.fail(name + ": " + e.describe());
        }
    }
    return r;
}

PropertyResult check_whnf_idempotent(const Theory& sig, const Context& ctx, std::uint64_t seed, std::size_t cases) {
    PropertyResult r;
    r.name = "whnf is idempotent";
    for (std::uint64_t batch = 0; r.cases < cases && batch < cases; ++batch) {
        TermGenerator gen(sig, ctx, seed * 67867967 + batch);
        gen.grow();
        for (std::size_t i = 0; i < kBatch && r.cases < cases; ++i) {
            auto t = gen.pick([](const Typed&) { return true; });
            ++r.cases;
            try {
                Term once = whnf(sig, t->term);
                if (!alpha_equal(whnf(sig, once), once)) r.fail(show(t->term));
            } catch (const Error& e) {
                r.fail(show(t->term) + ": " + e.describe());
            }
        }
    }
    return r;
}

PropertyResult check_conversion_laws(const Theory& sig, const Context& ctx, std::uint64_t seed, std::size_t cases) {
    PropertyResult r;
    r.name = "conversion is reflexive and symmetric";
    for (std::uint64_t batch = 0; r.cases < cases && batch < cases; ++batch) {
        TermGenerator gen(sig, ctx, seed * 86028121 + batch);
        gen.grow();
        for (std::size_t i = 0; i < kBatch && r.cases < cases; ++i) {
            auto a = gen.pick([](const Typed&) { return true; });
            Term b = gen.pick([](const Typed&) { return true; })->term;
            // Every other case pairs a term with one of its reducts, so both answers occur.
            if (i % 2 == 0) {
                auto reducts = one_step_reducts(sig, a->term);
                if (!reducts.empty()) b = reducts[gen.below(reducts.size())];
            }
            ++r.cases;
            try {
                if (!convertible(sig, a->term, a->term)) {
                    r.fail("not reflexive: " + show(a->term));
                    continue;
                }
                if (convertible(sig, a->term, b) != convertible(sig, b, a->term))
                    r.fail("not symmetric: " + show(a->term) + " / " + show(b));
            } catch (const Error& e) {
                r.fail(show(a->term) + ": " + e.describe());
            }
        }
    }
    return r;
}

PropertyResult check_budget_exhaustion() {
    PropertyResult r;
    r.name = "looping rule exhausts the budget";
    ++r.cases;
    try {
        ElabResult loop = elaborate_theory(parse_file("c : El o.\nrule [] c --> c.\n", "loop.pfk"), base_theory(true));
        if (!loop.ok()) {
            r.fail("looping signature rejected: " + loop.first_failure()->error->describe());
            return r;
        }
        try {
            whnf(loop.theory, Term::cnst("c"), ReductionBudget{1000});
            r.fail("whnf of c returned");
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::BudgetExhausted) r.fail(e.describe());
        }
    } catch (const Error& e) {
        r.fail(e.describe());
    }
    return r;
}

std::vector<PropertyResult> run_kernel_suites(std::uint64_t seed, std::size_t cases) {
    Theory sig = corpus::nat_theory();
    Context ctx = nat_generator_context();
    return {
        check_corpus_round_trip(),
        check_print_round_trip(sig, ctx, seed, cases),
        check_whnf_idempotent(sig, ctx, seed, cases),
        check_conversion_laws(sig, ctx, seed, cases),
        check_budget_exhaustion(),
    };
}

std::vector<PropertyResult> run_property_suites(std::uint64_t seed, std::size_t subst_cases, std::size_t conv_cases,
                                                std::size_t transfer_cases) {
    Theory src = corpus::nat_theory();
    Theory tgt = corpus::int_theory();
    ParamMap map = corpus::nat_to_int_params();
    PropertySetup setup{src, tgt, map, nat_generator_context(), seed};
    return {
        check_substitution_commutes(setup, subst_cases),
        check_conversion_preserved(setup, conv_cases),
        check_transfer_sound(setup, transfer_cases),
        check_consistency_witness(tgt),
    };
}

}  // namespace pfk
