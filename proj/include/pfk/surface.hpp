#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pfk/error.hpp"
#include "pfk/term.hpp"

namespace pfk {

// Items of a `.pfk` file.

struct DeclItem {
    std::string name;
    Term type;
};

struct RuleItem {
    Context context;
    Term lhs;
    Term rhs;
};

struct DefItem {
    std::string name;
    Term type;
    Term body;
};

struct AssertConvItem {
    Term lhs;
    Term rhs;
};

struct AssertTypeItem {
    Term term;
    Term type;
};

struct RequireItem {
    std::string module;
};

struct Item {
    std::variant<DeclItem, RuleItem, DefItem, AssertConvItem, AssertTypeItem, RequireItem> node;
    SourcePos pos;

    template <typename T>
    const T* as() const {
        return std::get_if<T>(&node);
    }
};

struct SourceFile {
    std::string path;
    std::vector<Item> items;
};

/// Identifier syntax: letters, digits and underscores, plus the reserved
/// marker `'` in non-initial position. Keywords are excluded.
bool is_identifier(std::string_view s);
bool is_keyword(std::string_view s);

/// Parses a theory/assertion file. Throws Error(ParseError) with position and
/// the set of expected tokens.
SourceFile parse_file(std::string_view text, const std::string& path = {});

/// Parses a single term. Identifiers listed in `free_vars` become variables,
/// all others constants.
Term parse_term(std::string_view text, const std::vector<std::string>& free_vars = {});

std::string print_item(const Item& item);
std::string print_file(const SourceFile& file);

bool alpha_equal(const Item& a, const Item& b);

// Parameter maps (`.pfm`): lines `c.star := term.` and `c.plus := term.`

struct RawParameter {
    std::optional<Term> star;
    std::optional<Term> plus;
    SourcePos pos;
};

struct RawParamMap {
    std::string path;
    /// In first-appearance order.
    std::vector<std::string> order;
    std::map<std::string, RawParameter> entries;
};

/// Throws ParseError, or DuplicateParameter when a key is given twice.
RawParamMap parse_param_map(std::string_view text, const std::string& path = {});
std::string print_param_map(const RawParamMap& map);

}  // namespace pfk
