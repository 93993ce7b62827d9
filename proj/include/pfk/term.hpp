#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pfk {

enum class Sort : std::uint8_t { Type, Kind };

enum class TermKind : std::uint8_t {
    Sort,
    BVar,   // bound variable (de Bruijn index), never visible at API boundaries
    Var,    // free variable, referenced by name
    Const,
    App,
    Lam,
    Pi,
    Hole,   // translator-internal metavariable
};

class Term;

namespace detail {
struct TermNode;
}

/// Immutable, shared term of the lambda-Pi calculus modulo theory.
///
/// Binders use a locally nameless representation: bound occurrences are de
/// Bruijn indices, free occurrences are names. Binder names are kept only as
/// printing hints, so structural equality is alpha-equivalence.
class Term {
public:
    Term();  // TYPE

    static Term sort(Sort s);
    static Term type() { return sort(Sort::Type); }
    static Term kind_sort() { return sort(Sort::Kind); }
    static Term var(std::string name);
    static Term cnst(std::string name);
    static Term app(Term fn, Term arg);
    static Term app(Term fn, const std::vector<Term>& args);
    static Term hole();
    static Term bvar(std::uint32_t index);

    /// Builds a binder over the free variable `name` occurring in `body`.
    static Term lam(const std::string& name, Term ann, const Term& body);
    static Term pi(const std::string& name, Term dom, const Term& cod);
    /// A -> B: non-dependent product.
    static Term arrow(Term dom, Term cod);

    /// Raw binder constructors: `body` already refers to the binder as BVar 0.
    static Term lam_raw(std::string hint, Term ann, Term body);
    static Term pi_raw(std::string hint, Term dom, Term body);

    TermKind kind() const;
    bool is(TermKind k) const { return kind() == k; }
    bool is_sort(Sort s) const;
    bool is_binder() const { return is(TermKind::Lam) || is(TermKind::Pi); }

    Sort sort_value() const;
    std::uint32_t index() const;
    /// Variable/constant name, or binder hint.
    const std::string& name() const;
    /// App: function. Lam/Pi: annotation / domain.
    Term fn() const;
    Term arg() const;
    Term ann() const { return fn(); }
    /// Lam/Pi body with the bound variable as BVar 0.
    Term body() const { return arg(); }

    std::size_t hash() const;
    /// One past the largest loose de Bruijn index (0 means locally closed).
    std::uint32_t loose_bvar_range() const;
    bool has_free_vars() const;
    bool has_hole() const;

    bool same_node(const Term& other) const { return node_ == other.node_; }

private:
    friend struct TermBuilder;
    explicit Term(std::shared_ptr<const detail::TermNode> node) : node_(std::move(node)) {}
    std::shared_ptr<const detail::TermNode> node_;
};


/// Alpha-equivalence: structural equality ignoring binder hints.
bool alpha_equal(const Term& t, const Term& u);

inline bool operator==(const Term& t, const Term& u) { return alpha_equal(t, u); }

/// Replaces the loose BVar 0 of a binder body with `value`.
Term instantiate(const Term& body, const Term& value);

/// Turns free occurrences of `name` into the loose BVar 0 (inverse of instantiate).
Term abstract(const Term& t, const std::string& name);

/// Opens a binder body with a free variable.
inline Term open_binder(const Term& binder, const std::string& name) {
    return instantiate(binder.body(), Term::var(name));
}

/// Simultaneous substitution of free variables.
using Substitution = std::map<std::string, Term>;
Term substitute(const Term& t, const Substitution& s);

std::set<std::string> free_variables(const Term& t);
bool occurs_free(const std::string& name, const Term& t);
std::set<std::string> constants_of(const Term& t);

/// True iff the binder's body refers to its bound variable.
bool binder_uses_var(const Term& binder);

/// Replaces every Hole with `value`.
Term fill_hole(const Term& t, const Term& value);

/// Application spine: head and arguments in order.
struct Spine {
    Term head;
    std::vector<Term> args;
};
Spine spine_of(const Term& t);

std::size_t term_size(const Term& t);

/// Smallest prime-suffixed variant of `base` (including `base` itself) not in `avoid`.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

template <typename Pred>
std::string fresh_name_if(const std::string& base, Pred&& taken) {
    std::string candidate = base;
    while (taken(candidate)) candidate += '\'';
    return candidate;
}

/// Ordered list of typed free variables.
class Context {
public:
    struct Entry {
        std::string name;
        Term type;
    };

    Context() = default;
    explicit Context(std::vector<Entry> entries) : entries_(std::move(entries)) {}

    Context extend(std::string name, Term type) const;
    void push(std::string name, Term type) { entries_.push_back({std::move(name), std::move(type)}); }

    const Term* lookup(std::string_view name) const;
    bool contains(std::string_view name) const { return lookup(name) != nullptr; }
    std::set<std::string> names() const;
    std::string fresh(const std::string& hint) const;

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::vector<Entry>& entries() const { return entries_; }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

private:
    std::vector<Entry> entries_;
};

}  // namespace pfk

template <>
struct std::hash<pfk::Term> {
    std::size_t operator()(const pfk::Term& t) const noexcept { return t.hash(); }
};
