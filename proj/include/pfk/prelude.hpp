#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "pfk/interp.hpp"
#include "pfk/rewriting.hpp"
#include "pfk/theory.hpp"

namespace pfk {

/// Reference texts of the prelude signature and of its self-interpretation.
std::string_view prelude_text();
std::string_view prelude_params_text();

/// The 8 constants and 4 rules of the prelude, in the standard order, marked as
/// prelude entries. Built once.
const Theory& prelude_signature();

/// Starting point for elaborating user files: the prelude, or an empty raw theory.
Theory base_theory(bool with_prelude);

/// The 16 parameter terms interpreting the prelude in itself.
const ParamMap& prelude_param_map();

/// Checks the prelude interpretation of the prelude: 16 typing and 8
/// conversion obligations. `params` replaces the built-in map when given.
std::vector<Obligation> verify_prelude(ReductionBudget budget = {}, const ParamMap* params = nullptr);

}  // namespace pfk
