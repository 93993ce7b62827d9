#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pfk/interp.hpp"
#include "pfk/surface.hpp"
#include "pfk/theory.hpp"
#include "pfk/typing.hpp"

namespace pfk::corpus {

/// Names of the embedded corpus files (prelude.pfk, nat.pfk, ...).
std::vector<std::string> file_names();
/// Text of an embedded file; throws IoError for unknown names.
std::string_view file_text(std::string_view name);

/// Load options resolving `require m.` to embedded `m.pfk` files.
LoadOptions load_options(ReductionBudget budget = {});

/// Prelude plus the natural number signature.
Theory nat_theory();
/// Prelude plus the integer signature and proof irrelevance.
Theory int_theory();
/// The natural numbers interpreted as non-negative integers.
ParamMap nat_to_int_params();
/// The raw map file, for tests that remove entries.
RawParamMap nat_to_int_raw();
/// Definitions proving x >= 0 and succ x >= 0 for natural numbers.
SourceFile nat_theorems();

}  // namespace pfk::corpus
