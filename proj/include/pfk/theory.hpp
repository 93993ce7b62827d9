#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pfk/error.hpp"
#include "pfk/term.hpp"

namespace pfk {

enum class Origin {
    Prelude,  // built-in prelude signature
    User,     // elaborated from source files
    Scratch,  // temporary constants introduced while checking obligations
};

struct ConstDecl {
    std::string name;
    Term type;
    Origin origin = Origin::User;
    /// Body of a `def`; the defining rule `name --> body` is stored alongside.
    std::optional<Term> definition;
    SourcePos pos;
};

/// lhs --> rhs, with the rule variables typed by `context` and occurring
/// free (as Var) in lhs and rhs.
struct RewriteRule {
    Context context;
    Term lhs;
    Term rhs;
    Origin origin = Origin::User;
    /// Set when the rule unfolds a definition.
    std::optional<std::string> defines;
    SourcePos pos;

    /// Head constant of lhs.
    const std::string& head() const;
    /// Number of arguments the head is applied to in lhs.
    std::size_t arity() const;
};

/// A signature: ordered constant declarations and rewrite rules.
///
/// A Theory is a value: copying it is how scratch extensions are made, and
/// nothing mutates a Theory once it is handed to a checker.
class Theory {
public:
    struct Entry {
        enum class Kind { Constant, Rule } kind;
        std::size_t index;
    };

    Theory() = default;
    explicit Theory(bool prelude_included) : prelude_included_(prelude_included) {}

    bool prelude_included() const { return prelude_included_; }

    const ConstDecl* find(std::string_view name) const;
    bool has_constant(std::string_view name) const { return find(name) != nullptr; }

    /// Rules headed by `name`, in declaration order.
    std::vector<const RewriteRule*> rules_for(std::string_view name) const;

    /// Appends without checking; see typing.hpp for the checked path.
    void add_constant(ConstDecl decl);
    void add_rule(RewriteRule rule);

    const std::vector<ConstDecl>& constants() const { return constants_; }
    const std::vector<RewriteRule>& rules() const { return rules_; }
    const std::vector<Entry>& entries() const { return entries_; }

private:
    bool prelude_included_ = false;
    std::vector<ConstDecl> constants_;
    std::vector<RewriteRule> rules_;
    std::vector<Entry> entries_;
    std::unordered_map<std::string, std::size_t> const_index_;
    std::unordered_map<std::string, std::vector<std::size_t>> rules_by_head_;
};

}  // namespace pfk
