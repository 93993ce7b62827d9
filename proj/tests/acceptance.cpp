// Runs each acceptance criterion and prints one PASS/FAIL line for it.

#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pfk/cli.hpp"
#include "pfk/corpus.hpp"
#include "pfk/generator.hpp"
#include "pfk/interp.hpp"
#include "pfk/prelude.hpp"
#include "pfk/print.hpp"
#include "pfk/surface.hpp"
#include "pfk/typing.hpp"

using namespace pfk;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

std::optional<ErrorKind> first_error(std::string_view text) {
    ElabResult r = elaborate_theory(parse_file(text, "acceptance.pfk"), base_theory(true));
    if (const ItemResult* bad = r.first_failure()) return bad->error->kind();
    return std::nullopt;
}

Outcome prelude_self_check() {
    Outcome o;
    auto obs = verify_prelude();
    std::size_t typing = 0, conv = 0;
    for (const auto& ob : obs) {
        o.require(ob.passed(), std::string(to_string(ob.kind)) + " " + ob.subject + " failed");
        bool is_typing = ob.kind == ObligationKind::StarTyping || ob.kind == ObligationKind::PlusTyping;
        (is_typing ? typing : conv)++;
    }
    o.require(obs.size() == 24, "expected 24 obligations, got " + std::to_string(obs.size()));
    o.require(typing == 16 && conv == 8, "expected 16 typing and 8 conversion obligations");

    cli::RunConfig cfg;
    cfg.command = "selftest";
    cli::Report report = cli::cmd_selftest(cfg);
    o.require(report.exit_code() == 0 && report.records.size() == 24, "selftest report is not 24 passing records");
    o.detail = o.ok ? "24 obligations (16 typing, 8 conversion) pass" : o.detail;
    return o;
}

Outcome prelude_mode() {
    Outcome o;
    o.require(first_error("nat : TYPE.") == ErrorKind::PreludeViolation, "nat : TYPE. was not a PreludeViolation");
    o.require(!first_error("nat : Set."), "nat : Set. was rejected");
    if (o.ok) o.detail = "nat : TYPE. rejected, nat : Set. accepted";
    return o;
}

Outcome nat_to_int() {
    Outcome o;
    const Theory src = corpus::nat_theory();
    const Theory tgt = corpus::int_theory();
    auto obs = check_interpretation(src, tgt, corpus::nat_to_int_params());
    o.require(obs.size() == 16 && all_passed(obs), "nat to int obligations do not all pass");
    RawParamMap full = corpus::nat_to_int_raw();
    auto fails = [&](const RawParamMap& raw) {
        try {
            ParamMap m = resolve_param_map(raw, src, tgt, &prelude_param_map());
            return !all_passed(check_interpretation(src, tgt, m));
        } catch (const Error&) {
            return true;
        }
    };
    std::size_t tried = 0, flipped = 0;
    for (const auto& name : full.order) {
        for (int which = 0; which < 2; ++which) {
            RawParamMap without = full;
            (which == 0 ? without.entries[name].star : without.entries[name].plus).reset();
            ++tried;
            if (fails(without)) ++flipped;
            else o.require(false, name + (which == 0 ? ".star" : ".plus") + " can be removed");
        }
    }
    o.require(tried == 16, "expected 16 parameter terms in the map");

    cli::RunConfig cfg;
    cfg.command = "interp";
    cfg.source = PFK_CORPUS_DIR "/nat.pfk";
    cfg.target = PFK_CORPUS_DIR "/int.pfk";
    cfg.param_map = PFK_CORPUS_DIR "/nat_to_int.pfm";
    cli::Report report = cli::cmd_interp(cfg);
    o.require(report.exit_code() == 0 && report.count(cli::Record::Status::Pass) == 16,
              "interp on the corpus files did not pass 16 obligations");
    if (o.ok) o.detail = "16 obligations pass; removing any of the " + std::to_string(flipped) + " parameter terms fails";
    return o;
}

struct Transferred {
    TransferOutput out;
    Term thm2;
};

const Transferred& transferred() {
    static const Transferred t = [] {
        Transferred r{transfer_theorems(corpus::nat_theory(), corpus::int_theory(), corpus::nat_to_int_params(),
                                        corpus::nat_theorems()),
                      Term::type()};
        for (const auto& item : r.out.emitted.items)
            if (auto d = item.as<DefItem>(); d && d->name == "thm2") r.thm2 = d->type;
        return r;
    }();
    return t;
}

Outcome transfer() {
    Outcome o;
    const Transferred& t = transferred();
    o.require(t.out.ok(), "a corpus theorem failed to transfer");
    const Theory tgt = corpus::int_theory();
    ElabResult again = elaborate_theory(parse_file(print_file(t.out.emitted), "out.pfk"), tgt);
    o.require(again.ok(), "emitted file does not re-check over int");
    Term expected = parse_term("(x : El int) -> Prf (geq_i x zero_i) -> Prf (geq_i (succ_i x) zero_i)");
    o.require(convertible(tgt, t.thm2, expected), "thm2 type differs: " + print_term(t.thm2));
    if (o.ok) o.detail = "thm1, thm2 re-check; thm2 : " + print_term(t.thm2);
    return o;
}

Outcome negative_control() {
    Outcome o;
    const Theory tgt = corpus::int_theory();
    Term naive = parse_term("(x : El int) -> Prf (geq_i (succ_i x) zero_i)");
    o.require(!convertible(tgt, transferred().thm2, naive), "transfer produced the naive statement");
    o.require(transferred().thm2.is(TermKind::Pi) && transferred().thm2.body().is(TermKind::Pi),
              "transferred statement lacks the extra hypothesis");
    if (o.ok) o.detail = "transferred thm2 carries the Prf (x >= 0) hypothesis";
    return o;
}

Outcome properties() {
    Outcome o;
    std::vector<std::size_t> expected = {1000, 500, 100, 1};
    auto results = run_property_suites(1, 1000, 500, 100);
    std::string summary;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        o.require(r.ok(), r.name + ": " + std::to_string(r.failures) + " failures");
        o.require(i < expected.size() && r.cases >= expected[i], r.name + ": too few cases");
        summary += (i ? ", " : "") + r.name + " " + std::to_string(r.cases);
    }
    o.require(results.size() == 4, "expected four suites");
    if (o.ok) o.detail = summary;
    return o;
}

Outcome kernel() {
    Outcome o;
    std::string summary;
    for (const auto& r : run_kernel_suites(1, 1000)) {
        o.require(r.ok(), r.name + ": " + std::to_string(r.failures) + " failures");
        summary += (summary.empty() ? "" : ", ") + r.name + " " + std::to_string(r.cases);
    }
    if (o.ok) o.detail = summary;
    return o;
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"prelude self-verification", prelude_self_check},
        {"prelude mode", prelude_mode},
        {"nat to int interpretation", nat_to_int},
        {"proof transfer", transfer},
        {"negative control", negative_control},
        {"property suites", properties},
        {"kernel sanity", kernel},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = Outcome{false, std::string("exception: ") + e.what()};
        }
        if (!o.ok) ++failed;
        std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
                  << o.detail << ")\n";
    }
    return failed == 0 ? 0 : 1;
}
