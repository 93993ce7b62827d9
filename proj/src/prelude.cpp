#include "pfk/prelude.hpp"

#include "pfk/corpus.hpp"
#include "pfk/surface.hpp"
#include "pfk/typing.hpp"

namespace pfk {

std::string_view prelude_text() { return corpus::file_text("prelude.pfk"); }

std::string_view prelude_params_text() { return corpus::file_text("prelude.pfm"); }

namespace {

Theory build_prelude() {
    ElabResult raw = elaborate_theory(parse_file(prelude_text(), "prelude.pfk"), Theory(false));
    if (const ItemResult* bad = raw.first_failure()) throw *bad->error;
    Theory out(true);
    for (const auto& e : raw.theory.entries()) {
        if (e.kind == Theory::Entry::Kind::Constant) {
            ConstDecl d = raw.theory.constants()[e.index];
            d.origin = Origin::Prelude;
            out.add_constant(std::move(d));
        } else {
            RewriteRule r = raw.theory.rules()[e.index];
            r.origin = Origin::Prelude;
            out.add_rule(std::move(r));
        }
    }
    return out;
}

}  // namespace

const Theory& prelude_signature() {
    static const Theory sig = build_prelude();
    return sig;
}

Theory base_theory(bool with_prelude) { return with_prelude ? prelude_signature() : Theory(false); }

const ParamMap& prelude_param_map() {
    static const ParamMap map = [] {
        RawParamMap raw = parse_param_map(prelude_params_text(), "prelude.pfm");
        return resolve_param_map(raw, prelude_signature(), prelude_signature());
    }();
    return map;
}

std::vector<Obligation> verify_prelude(ReductionBudget budget, const ParamMap* params) {
    const ParamMap& map = params ? *params : prelude_param_map();
    return check_interpretation(prelude_signature(), prelude_signature(), map, budget);
}

}  // namespace pfk
