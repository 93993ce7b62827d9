#include <gtest/gtest.h>

#include "pfk/corpus.hpp"
#include "pfk/generator.hpp"
#include "pfk/print.hpp"
#include "support.hpp"

namespace pfk {
namespace {

const Theory& nat() {
    static const Theory t = corpus::nat_theory();
    return t;
}

TEST(Generator, SameSeedSamePool) {
    TermGenerator a(nat(), nat_generator_context(), 7);
    TermGenerator b(nat(), nat_generator_context(), 7);
    a.grow(200);
    b.grow(200);
    ASSERT_EQ(a.pool().size(), b.pool().size());
    for (std::size_t i = 0; i < a.pool().size(); ++i) EXPECT_EQ(a.pool()[i].term, b.pool()[i].term);
}

TEST(Generator, PoolHoldsDerivableJudgments) {
    TermGenerator gen(nat(), nat_generator_context(), 3);
    gen.grow(300);
    EXPECT_GT(gen.pool().size(), 60u);
    std::size_t compound = 0;
    for (const auto& e : gen.pool()) {
        EXPECT_NO_THROW(check_judgment(nat(), Judgment{gen.context(), e.term, e.type})) << print_term(e.term);
        if (term_size(e.term) > 3) ++compound;
    }
    EXPECT_GT(compound, 20u);
}

TEST(Generator, ReachesEveryShape) {
    TermGenerator gen(nat(), nat_generator_context(), 11);
    gen.grow(600);
    bool lam = false, pi = false, app = false;
    for (const auto& e : gen.pool()) {
        lam = lam || e.term.is(TermKind::Lam);
        pi = pi || e.term.is(TermKind::Pi);
        app = app || e.term.is(TermKind::App);
    }
    EXPECT_TRUE(lam);
    EXPECT_TRUE(pi);
    EXPECT_TRUE(app);
}

TEST(Properties, KernelSuites) {
    for (const auto& r : run_kernel_suites(5, 200)) EXPECT_TRUE(r.ok()) << r.name << ": " << r.failures;
}

TEST(Properties, TransferSuites) {
    for (const auto& r : run_property_suites(5, 200, 100, 30)) EXPECT_TRUE(r.ok()) << r.name << ": " << r.failures;
}

TEST(Properties, FailuresAreCounted) {
    PropertyResult r{"x"};
    EXPECT_FALSE(r.ok());
    r.cases = 3;
    EXPECT_TRUE(r.ok());
    r.fail("a");
    EXPECT_FALSE(r.ok());
    EXPECT_EQ(r.examples.size(), 1u);
}

}  // namespace
}  // namespace pfk
