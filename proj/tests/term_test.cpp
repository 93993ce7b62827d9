#include <gtest/gtest.h>

#include <memory>
#include <random>
#include <set>

#include "pfk/print.hpp"
#include "support.hpp"

namespace pfk {
namespace {

using test::parse;

TEST(Term, BinderNamesDoNotMatter) {
    EXPECT_TRUE(alpha_equal(parse("\\ (x : Set). x"), parse("\\ (y : Set). y")));
    EXPECT_FALSE(alpha_equal(parse("\\ (x : Set). \\ (y : Set). x"), parse("\\ (x : Set). \\ (y : Set). y")));
    EXPECT_TRUE(alpha_equal(parse("(x : Set) -> El x"), parse("(a : Set) -> El a")));
}

TEST(Term, ArrowIsNonDependentProduct) {
    Term t = parse("El o -> El o");
    ASSERT_TRUE(t.is(TermKind::Pi));
    EXPECT_FALSE(binder_uses_var(t));
    EXPECT_TRUE(binder_uses_var(parse("(x : Set) -> El x")));
}

TEST(Term, FreeVariablesAndConstants) {
    Term t = parse("\\ (y : El a). f x y", {"a", "f", "x"});
    EXPECT_EQ(free_variables(t), (std::set<std::string>{"a", "f", "x"}));
    EXPECT_TRUE(occurs_free("x", t));
    EXPECT_FALSE(occurs_free("y", t));
    EXPECT_EQ(constants_of(parse("El (arrd a b)")), (std::set<std::string>{"El", "arrd", "a", "b"}));
}

TEST(Term, InstantiateOpensBinder) {
    Term lam = parse("\\ (x : Set). El x");
    Term opened = instantiate(lam.body(), Term::cnst("o"));
    EXPECT_EQ(opened, parse("El o"));
    EXPECT_EQ(abstract(open_binder(lam, "v"), "v"), lam.body());
}

TEST(Term, SubstitutionDoesNotCapture) {
    // (\ (y : Set). x)[x <- y] keeps y free.
    Term t = parse("\\ (y : Set). x", {"x"});
    Term r = substitute(t, {{"x", Term::var("y")}});
    ASSERT_TRUE(r.is(TermKind::Lam));
    EXPECT_EQ(r.body(), Term::var("y"));
    EXPECT_EQ(print_term(r), "\\ (y' : Set). y");
}

TEST(Term, SpineAndSize) {
    Term t = parse("f a b c");
    Spine s = spine_of(t);
    EXPECT_EQ(s.head, Term::cnst("f"));
    ASSERT_EQ(s.args.size(), 3u);
    EXPECT_EQ(s.args[2], Term::cnst("c"));
    EXPECT_EQ(term_size(t), 7u);
}

TEST(Term, FillHole) {
    Term t = Term::arrow(Term::hole(), Term::type());
    EXPECT_TRUE(t.has_hole());
    Term filled = fill_hole(t, Term::cnst("A"));
    EXPECT_FALSE(filled.has_hole());
    EXPECT_EQ(filled, parse("A -> TYPE"));
}

TEST(Term, FreshNames) {
    EXPECT_EQ(fresh_name("x", {"y"}), "x");
    EXPECT_EQ(fresh_name("x", {"x"}), "x'");
    EXPECT_EQ(fresh_name("x", {"x", "x'"}), "x''");
}

TEST(Context, LookupPrefersLatestBinding) {
    Context ctx;
    ctx.push("x", Term::cnst("A"));
    ctx.push("x", Term::cnst("B"));
    ASSERT_NE(ctx.lookup("x"), nullptr);
    EXPECT_EQ(*ctx.lookup("x"), Term::cnst("B"));
    EXPECT_EQ(ctx.lookup("y"), nullptr);
    EXPECT_FALSE(ctx.contains(ctx.fresh("x")));
}

// Named terms with textbook capture-avoiding substitution, as an independent
// reference for the locally nameless operations.
struct Named;
using NamedPtr = std::shared_ptr<const Named>;

struct Named {
    enum class K { Var, Const, App, Lam, Pi } k;
    std::string name;
    NamedPtr a, b;
};

NamedPtr nvar(std::string n) { return std::make_shared<Named>(Named{Named::K::Var, std::move(n), nullptr, nullptr}); }
NamedPtr ncon(std::string n) { return std::make_shared<Named>(Named{Named::K::Const, std::move(n), nullptr, nullptr}); }
NamedPtr napp(NamedPtr f, NamedPtr x) { return std::make_shared<Named>(Named{Named::K::App, "", f, x}); }
NamedPtr nbind(Named::K k, std::string x, NamedPtr ann, NamedPtr body) {
    return std::make_shared<Named>(Named{k, std::move(x), ann, body});
}

std::set<std::string> nfree(const NamedPtr& t) {
    switch (t->k) {
        case Named::K::Var: return {t->name};
        case Named::K::Const: return {};
        case Named::K::App: {
            auto s = nfree(t->a);
            auto r = nfree(t->b);
            s.insert(r.begin(), r.end());
            return s;
        }
        default: {
            auto s = nfree(t->a);
            auto r = nfree(t->b);
            r.erase(t->name);
            s.insert(r.begin(), r.end());
            return s;
        }
    }
}

NamedPtr nsubst(const NamedPtr& t, const std::string& x, const NamedPtr& u) {
    switch (t->k) {
        case Named::K::Var: return t->name == x ? u : t;
        case Named::K::Const: return t;
        case Named::K::App: return napp(nsubst(t->a, x, u), nsubst(t->b, x, u));
        default: {
            NamedPtr ann = nsubst(t->a, x, u);
            if (t->name == x) return nbind(t->k, t->name, ann, t->b);
            auto fu = nfree(u);
            if (fu.count(t->name) && nfree(t->b).count(x)) {
                auto avoid = fu;
                auto fb = nfree(t->b);
                avoid.insert(fb.begin(), fb.end());
                avoid.insert(x);
                std::string y = t->name;
                while (avoid.count(y)) y += "_";
                NamedPtr body = nsubst(t->b, t->name, nvar(y));
                return nbind(t->k, y, ann, nsubst(body, x, u));
            }
            return nbind(t->k, t->name, ann, nsubst(t->b, x, u));
        }
    }
}

Term to_term(const NamedPtr& t) {
    switch (t->k) {
        case Named::K::Var: return Term::var(t->name);
        case Named::K::Const: return Term::cnst(t->name);
        case Named::K::App: return Term::app(to_term(t->a), to_term(t->b));
        case Named::K::Lam: return Term::lam(t->name, to_term(t->a), to_term(t->b));
        case Named::K::Pi: return Term::pi(t->name, to_term(t->a), to_term(t->b));
    }
    return Term::type();
}

NamedPtr random_named(std::mt19937_64& rng, int depth) {
    static const char* vars[] = {"x", "y", "z", "w"};
    static const char* consts[] = {"c", "d"};
    auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
    if (depth == 0 || pick(4) == 0) return pick(3) == 0 ? ncon(consts[pick(2)]) : nvar(vars[pick(4)]);
    switch (pick(3)) {
        case 0: return napp(random_named(rng, depth - 1), random_named(rng, depth - 1));
        case 1: return nbind(Named::K::Lam, vars[pick(4)], random_named(rng, depth - 1), random_named(rng, depth - 1));
        default: return nbind(Named::K::Pi, vars[pick(4)], random_named(rng, depth - 1), random_named(rng, depth - 1));
    }
}

TEST(NamedOracle, SubstitutionAgreesWithBruteForce) {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 3000; ++i) {
        NamedPtr t = random_named(rng, 5);
        NamedPtr u = random_named(rng, 3);
        std::string x = (i % 2) ? "x" : "y";
        Term expected = to_term(nsubst(t, x, u));
        Term actual = substitute(to_term(t), {{x, to_term(u)}});
        ASSERT_TRUE(alpha_equal(expected, actual)) << print_term(to_term(t)) << " with " << x << " := "
                                                   << print_term(to_term(u));
    }
}

TEST(NamedOracle, FreeVariablesAgree) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        NamedPtr t = random_named(rng, 5);
        ASSERT_EQ(free_variables(to_term(t)), nfree(t));
    }
}

TEST(NamedOracle, InstantiationIsSubstitutionOfTheBinder) {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 2000; ++i) {
        NamedPtr body = random_named(rng, 4);
        NamedPtr u = random_named(rng, 3);
        Term lam = Term::lam("x", Term::cnst("c"), to_term(body));
        ASSERT_TRUE(alpha_equal(instantiate(lam.body(), to_term(u)), to_term(nsubst(body, "x", u))));
    }
}

}  // namespace
}  // namespace pfk
