#include "pfk/corpus.hpp"

#include "pfk/prelude.hpp"

namespace pfk::corpus {

namespace detail {
extern const std::pair<std::string_view, std::string_view> kFiles[];
extern const std::size_t kFileCount;
}  // namespace detail

std::vector<std::string> file_names() {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < detail::kFileCount; ++i) out.emplace_back(detail::kFiles[i].first);
    return out;
}

std::string_view file_text(std::string_view name) {
    for (std::size_t i = 0; i < detail::kFileCount; ++i)
        if (detail::kFiles[i].first == name) return detail::kFiles[i].second;
    throw Error(ErrorKind::IoError, "no embedded corpus file '" + std::string(name) + "'");
}

LoadOptions load_options(ReductionBudget budget) {
    LoadOptions opts;
    opts.budget = budget;
    for (const auto& name : file_names())
        if (name.size() > 4 && name.substr(name.size() - 4) == ".pfk")
            opts.builtin_modules.emplace(name.substr(0, name.size() - 4), std::string(file_text(name)));
    return opts;
}

namespace {

Theory load(std::string_view file) {
    Loader loader(base_theory(true), load_options());
    loader.load_text(file_text(file), std::string(file));
    for (const auto& r : loader.results())
        if (!r.ok()) throw *r.error;
    return std::move(loader).take_theory();
}

}  // namespace

Theory nat_theory() { return load("nat.pfk"); }

Theory int_theory() { return load("int.pfk"); }

RawParamMap nat_to_int_raw() { return parse_param_map(file_text("nat_to_int.pfm"), "nat_to_int.pfm"); }

ParamMap nat_to_int_params() {
    return resolve_param_map(nat_to_int_raw(), nat_theory(), int_theory(), &prelude_param_map());
}

SourceFile nat_theorems() { return parse_file(file_text("thm_nat.pfk"), "thm_nat.pfk"); }

}  // namespace pfk::corpus
