#include <gtest/gtest.h>

#include "pfk/corpus.hpp"
#include "support.hpp"

namespace pfk {
namespace {

using test::parse;

TEST(Prelude, ConstantsAndRulesInOrder) {
    const Theory& sig = prelude_signature();
    std::vector<std::string> names;
    for (const auto& c : sig.constants()) names.push_back(c.name);
    EXPECT_EQ(names, (std::vector<std::string>{"Set", "o", "El", "Prf", "arrd", "impd", "pi_", "forall_"}));
    ASSERT_EQ(sig.rules().size(), 4u);
    EXPECT_EQ(sig.rules()[0].head(), "El");
    EXPECT_EQ(sig.rules()[1].head(), "Prf");
    EXPECT_EQ(sig.rules()[2].head(), "El");
    EXPECT_EQ(sig.rules()[3].head(), "Prf");
}

TEST(Prelude, TypesOfTheEncodings) {
    const Theory& sig = prelude_signature();
    EXPECT_EQ(sig.find("impd")->type, parse("(x : El o) -> (Prf x -> El o) -> El o"));
    EXPECT_EQ(sig.find("pi_")->type, parse("(x : El o) -> (Prf x -> Set) -> Set"));
    EXPECT_EQ(sig.find("forall_")->type, parse("(x : Set) -> (El x -> El o) -> El o"));
    EXPECT_EQ(sig.rules()[1].rhs, parse("(z : Prf x) -> Prf (y z)", {"x", "y"}));
}

TEST(Prelude, TextMatchesTheBuiltSignature) {
    Theory raw = test::theory_of(prelude_text(), false);
    ASSERT_EQ(raw.constants().size(), prelude_signature().constants().size());
    for (const auto& c : prelude_signature().constants())
        EXPECT_EQ(raw.find(c.name)->type, c.type) << c.name;
    EXPECT_EQ(corpus::file_text("prelude.pfk"), prelude_text());
}

TEST(Prelude, ParameterMapCoversEveryConstant) {
    const ParamMap& m = prelude_param_map();
    EXPECT_EQ(m.size(), 8u);
    for (const auto& c : prelude_signature().constants()) {
        const Parameter* p = m.find(c.name);
        ASSERT_NE(p, nullptr) << c.name;
        // The built-in map is the one under check; copied into a user map it becomes a default.
        EXPECT_EQ(p->source, ParamSource::Given);
        EXPECT_EQ(corpus::nat_to_int_params().find(c.name)->source, ParamSource::Prelude);
    }
}

TEST(Prelude, SelfInterpretationPasses) {
    auto obs = verify_prelude();
    EXPECT_EQ(obs.size(), 24u);
    for (const auto& ob : obs) EXPECT_TRUE(ob.passed()) << to_string(ob.kind) << " " << ob.subject;
}

TEST(Prelude, TinyBudgetIsReportedPerObligation) {
    auto obs = verify_prelude(ReductionBudget{1});
    ASSERT_EQ(obs.size(), 24u);
    std::size_t exhausted = 0;
    for (const auto& ob : obs)
        if (!ob.passed() && ob.cause && ob.cause->kind() == ErrorKind::BudgetExhausted) ++exhausted;
    EXPECT_GT(exhausted, 0u);
}

}  // namespace
}  // namespace pfk
