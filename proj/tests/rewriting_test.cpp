#include <gtest/gtest.h>

#include "pfk/rewriting.hpp"
#include "support.hpp"

namespace pfk {
namespace {

using test::error_of;
using test::parse;
using test::theory_of;

const char* kSmall = R"(
A : Set.
a : El A.
b : El A.
f : El A -> El A.
g : El A -> El A -> El A.
rule [x : El A] f x --> x.
rule [] g a b --> a.
rule [x : El A, y : El A] g x y --> y.
)";

TEST(Rewriting, BetaStep) {
    Theory sig = theory_of(kSmall);
    EXPECT_EQ(whnf(sig, parse("(\\ (x : El A). f x) a")), parse("a"));
}

TEST(Rewriting, PreludeRulesUnfoldEncodings) {
    const Theory& sig = prelude_signature();
    Term t = parse("El (arrd a b)", {"a", "b"});
    EXPECT_EQ(whnf(sig, t), parse("(z : El a) -> El (b z)", {"a", "b"}));
    Term p = parse("Prf (forall_ a q)", {"a", "q"});
    EXPECT_EQ(whnf(sig, p), parse("(z : El a) -> Prf (q z)", {"a", "q"}));
}

TEST(Rewriting, RulesAreTriedInDeclarationOrder) {
    Theory sig = theory_of(kSmall);
    EXPECT_EQ(whnf(sig, parse("g a b")), parse("a"));
    EXPECT_EQ(whnf(sig, parse("g b a")), parse("a"));
    EXPECT_EQ(whnf(sig, parse("g b b")), parse("b"));
}

TEST(Rewriting, MatchRuleBindsPatternVariables) {
    Theory sig = theory_of(kSmall);
    const RewriteRule& id = *sig.rules_for("f").front();
    auto theta = match_rule(id, parse("f (f a)"));
    ASSERT_TRUE(theta);
    EXPECT_EQ(theta->at("x"), parse("f a"));
    EXPECT_FALSE(match_rule(id, parse("g a a")));
}

TEST(Rewriting, MatchingIsSyntactic) {
    // The argument f a is not reduced before matching the constant a.
    Theory sig = theory_of(kSmall);
    const RewriteRule& first = *sig.rules_for("g").front();
    EXPECT_FALSE(match_rule(first, parse("g (f a) b")));
}

TEST(Rewriting, ConversionUnderBinders) {
    Theory sig = theory_of(kSmall);
    EXPECT_TRUE(convertible(sig, parse("\\ (z : El A). f z"), parse("\\ (w : El A). w")));
    EXPECT_TRUE(convertible(sig, parse("(z : El A) -> El A"), parse("El A -> El A")));
    EXPECT_FALSE(convertible(sig, parse("a"), parse("b")));
    EXPECT_FALSE(convertible(sig, Term::type(), parse("El A")));
}

TEST(Rewriting, NoEtaConversion) {
    Theory sig = theory_of(kSmall);
    EXPECT_FALSE(convertible(sig, parse("\\ (z : El A). g a z"), parse("g a")));
}

TEST(Rewriting, BudgetCountsSteps) {
    Theory sig = theory_of(kSmall);
    Term two_steps = parse("(\\ (x : El A). x) ((\\ (y : El A). y) a)");
    EXPECT_EQ(whnf(sig, two_steps, ReductionBudget{2}), parse("a"));
    EXPECT_EQ(error_of([&] { whnf(sig, two_steps, ReductionBudget{1}); }), ErrorKind::BudgetExhausted);
}

TEST(Rewriting, LoopingRuleExhaustsBudget) {
    Theory sig = theory_of("c : El o.\nrule [] c --> c.\n");
    EXPECT_EQ(error_of([&] { whnf(sig, parse("c")); }), ErrorKind::BudgetExhausted);
    EXPECT_EQ(error_of([&] { convertible(sig, parse("c"), parse("o")); }), ErrorKind::BudgetExhausted);
}

TEST(Rewriting, OneStepReductsAtEveryPosition) {
    Theory sig = theory_of(kSmall);
    auto reducts = one_step_reducts(sig, parse("g (f a) (f b)"));
    ASSERT_EQ(reducts.size(), 3u);
    EXPECT_EQ(reducts[0], parse("f b"));
    EXPECT_EQ(reducts[1], parse("g a (f b)"));
    EXPECT_EQ(reducts[2], parse("g (f a) b"));
    EXPECT_TRUE(one_step_reducts(sig, parse("a")).empty());
}

TEST(Rewriting, NormalizeReducesEverywhere) {
    Theory sig = theory_of(kSmall);
    EXPECT_EQ(normalize(sig, parse("\\ (z : El A). g z (f (f z))")), parse("\\ (z : El A). z"));
    EXPECT_EQ(normalize(prelude_signature(), parse("El (arrd a (\\ (x : El a). a))", {"a"})),
              parse("El a -> El a", {"a"}));
}

TEST(RuleShape, RejectsUnsupportedLeftHandSides) {
    EXPECT_EQ(test::first_error("A : Set. f : El A -> El A -> El A.\nrule [x : El A] f x x --> x."),
              ErrorKind::NonLinearPattern);
    EXPECT_EQ(test::first_error("A : Set.\nrule [h : El A -> El A, x : El A] h x --> x."),
              ErrorKind::HeadNotConstant);
    EXPECT_EQ(test::first_error("A : Set. f : (El A -> El A) -> El A. a : El A.\n"
                              "rule [] f (\\ (x : El A). x) --> a."),
              ErrorKind::UnsupportedPattern);
}

TEST(RuleShape, RhsMustKeepTheType) {
    EXPECT_EQ(test::first_error("A : Set. a : El A. c : El o.\nrule [] c --> a."),
              ErrorKind::TypePreservationFailure);
}

}  // namespace
}  // namespace pfk
