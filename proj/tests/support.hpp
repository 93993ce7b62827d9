#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pfk/error.hpp"
#include "pfk/prelude.hpp"
#include "pfk/surface.hpp"
#include "pfk/term.hpp"
#include "pfk/typing.hpp"

namespace pfk::test {

inline Term parse(std::string_view text, const std::vector<std::string>& vars = {}) {
    return parse_term(text, vars);
}

/// Elaborates `text` over the prelude (or the empty signature) and requires every item to pass.
inline Theory theory_of(std::string_view text, bool prelude = true) {
    ElabResult r = elaborate_theory(parse_file(text, "test.pfk"), base_theory(prelude));
    if (const ItemResult* bad = r.first_failure())
        throw std::runtime_error("item '" + bad->name + "' failed: " + bad->error->describe());
    return std::move(r.theory);
}

/// Elaborates `text` and returns the per-item results.
inline ElabResult elaborate(std::string_view text, bool prelude = true) {
    return elaborate_theory(parse_file(text, "test.pfk"), base_theory(prelude));
}

/// Error kind of the first failing item, or nullopt when every item passes.
inline std::optional<ErrorKind> first_error(std::string_view text, bool prelude = true) {
    ElabResult r = elaborate(text, prelude);
    if (const ItemResult* bad = r.first_failure()) return bad->error->kind();
    return std::nullopt;
}

/// Kind of the error thrown by `f`, or nullopt when it returns normally.
template <typename F>
std::optional<ErrorKind> error_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

}  // namespace pfk::test
