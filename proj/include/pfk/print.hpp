#pragma once

#include <string>

#include "pfk/term.hpp"

namespace pfk {

/// Renders a term in the surface syntax with minimal parentheses.
///
/// Bound variables keep their hint unless it would capture a free name or an
/// enclosing binder used in the body; then the smallest primed variant is used.
/// Holes print as `?` and KIND as `KIND`; neither is accepted by the parser.
std::string print_term(const Term& t);

}  // namespace pfk
