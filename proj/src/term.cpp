#include "pfk/term.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <stdexcept>

namespace pfk {

namespace detail {
struct TermNode {
    TermKind kind = TermKind::Sort;
    Sort sort = Sort::Type;
    std::uint32_t index = 0;
    std::string name;
    std::shared_ptr<const TermNode> a;
    std::shared_ptr<const TermNode> b;
    std::size_t hash = 0;
    std::uint32_t loose_range = 0;
    bool has_fvar = false;
    bool has_hole = false;
};
}  // namespace detail

using detail::TermNode;

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

struct TermBuilder {
    static Term make(TermNode node) {
        std::size_t h = static_cast<std::size_t>(node.kind) * 31 + 7;
        switch (node.kind) {
            case TermKind::Sort:
                h = mix(h, static_cast<std::size_t>(node.sort));
                break;
            case TermKind::BVar:
                h = mix(h, node.index);
                node.loose_range = node.index + 1;
                break;
            case TermKind::Var:
                h = mix(h, std::hash<std::string>{}(node.name));
                node.has_fvar = true;
                break;
            case TermKind::Const:
                h = mix(h, std::hash<std::string>{}(node.name) * 3);
                break;
            case TermKind::Hole:
                node.has_hole = true;
                break;
            case TermKind::App:
            case TermKind::Lam:
            case TermKind::Pi: {
                const TermNode& a = *node.a;
                const TermNode& b = *node.b;
                h = mix(mix(h, a.hash), b.hash);
                std::uint32_t body_range = b.loose_range;
                if (node.kind != TermKind::App) body_range = body_range > 0 ? body_range - 1 : 0;
                node.loose_range = std::max(a.loose_range, body_range);
                node.has_fvar = a.has_fvar || b.has_fvar;
                node.has_hole = a.has_hole || b.has_hole;
                break;
            }
        }
        node.hash = h;
        return Term(std::make_shared<const TermNode>(std::move(node)));
    }

    static const TermNode& node(const Term& t) { return *t.node_; }
    static Term wrap(const std::shared_ptr<const TermNode>& n) { return Term(n); }
    static const std::shared_ptr<const TermNode>& ptr(const Term& t) { return t.node_; }
};

namespace {

const TermNode& N(const Term& t) { return TermBuilder::node(t); }

Term binary(TermKind kind, std::string name, const Term& a, const Term& b) {
    TermNode n;
    n.kind = kind;
    n.name = std::move(name);
    n.a = TermBuilder::ptr(a);
    n.b = TermBuilder::ptr(b);
    return TermBuilder::make(std::move(n));
}

const Term& type_singleton() {
    static const Term t = [] {
        TermNode n;
        n.kind = TermKind::Sort;
        n.sort = Sort::Type;
        return TermBuilder::make(std::move(n));
    }();
    return t;
}

const Term& kind_singleton() {
    static const Term t = [] {
        TermNode n;
        n.kind = TermKind::Sort;
        n.sort = Sort::Kind;
        return TermBuilder::make(std::move(n));
    }();
    return t;
}

// Rebuilds a compound term only when a child changed.
Term rebuild(const Term& t, const Term& a, const Term& b) {
    if (a.same_node(t.fn()) && b.same_node(t.arg())) return t;
    return binary(t.kind(), t.name(), a, b);
}

}  // namespace

Term::Term() : node_(TermBuilder::ptr(type_singleton())) {}

Term Term::sort(Sort s) { return s == Sort::Type ? type_singleton() : kind_singleton(); }

Term Term::var(std::string name) {
    TermNode n;
    n.kind = TermKind::Var;
    n.name = std::move(name);
    return TermBuilder::make(std::move(n));
}

Term Term::cnst(std::string name) {
    TermNode n;
    n.kind = TermKind::Const;
    n.name = std::move(name);
    return TermBuilder::make(std::move(n));
}

Term Term::bvar(std::uint32_t index) {
    TermNode n;
    n.kind = TermKind::BVar;
    n.index = index;
    return TermBuilder::make(std::move(n));
}

Term Term::hole() {
    static const Term h = [] {
        TermNode n;
        n.kind = TermKind::Hole;
        return TermBuilder::make(std::move(n));
    }();
    return h;
}

Term Term::app(Term fn, Term arg) { return binary(TermKind::App, {}, fn, arg); }

Term Term::app(Term fn, const std::vector<Term>& args) {
    for (const auto& a : args) fn = app(fn, a);
    return fn;
}

Term Term::lam_raw(std::string hint, Term ann, Term body) {
    return binary(TermKind::Lam, std::move(hint), ann, body);
}

Term Term::pi_raw(std::string hint, Term dom, Term body) {
    return binary(TermKind::Pi, std::move(hint), dom, body);
}

Term Term::lam(const std::string& name, Term ann, const Term& body) {
    return lam_raw(name, std::move(ann), abstract(body, name));
}

Term Term::pi(const std::string& name, Term dom, const Term& cod) {
    return pi_raw(name, std::move(dom), abstract(cod, name));
}

Term Term::arrow(Term dom, Term cod) {
    // cod is locally closed, so it cannot mention the new binder.
    return pi_raw("x", std::move(dom), std::move(cod));
}

TermKind Term::kind() const { return node_->kind; }
bool Term::is_sort(Sort s) const { return node_->kind == TermKind::Sort && node_->sort == s; }
Sort Term::sort_value() const { return node_->sort; }
std::uint32_t Term::index() const { return node_->index; }
const std::string& Term::name() const { return node_->name; }
Term Term::fn() const { return TermBuilder::wrap(node_->a); }
Term Term::arg() const { return TermBuilder::wrap(node_->b); }
std::size_t Term::hash() const { return node_->hash; }
std::uint32_t Term::loose_bvar_range() const { return node_->loose_range; }
bool Term::has_free_vars() const { return node_->has_fvar; }
bool Term::has_hole() const { return node_->has_hole; }

bool alpha_equal(const Term& t, const Term& u) {
    const TermNode* x = &N(t);
    const TermNode* y = &N(u);
    if (x == y) return true;
    if (x->hash != y->hash || x->kind != y->kind) return false;
    switch (x->kind) {
        case TermKind::Sort:
            return x->sort == y->sort;
        case TermKind::BVar:
            return x->index == y->index;
        case TermKind::Var:
        case TermKind::Const:
            return x->name == y->name;
        case TermKind::Hole:
            return true;
        case TermKind::App:
        case TermKind::Lam:
        case TermKind::Pi:
            return alpha_equal(t.fn(), u.fn()) && alpha_equal(t.arg(), u.arg());
    }
    return false;
}

namespace {

Term instantiate_at(const Term& t, const Term& value, std::uint32_t depth) {
    if (t.loose_bvar_range() <= depth) return t;
    switch (t.kind()) {
        case TermKind::BVar:
            if (t.index() == depth) return value;
            return Term::bvar(t.index() - 1);
        case TermKind::App:
            return rebuild(t, instantiate_at(t.fn(), value, depth), instantiate_at(t.arg(), value, depth));
        case TermKind::Lam:
        case TermKind::Pi:
            return rebuild(t, instantiate_at(t.fn(), value, depth),
                           instantiate_at(t.arg(), value, depth + 1));
        default:
            return t;
    }
}

Term abstract_at(const Term& t, const std::string& name, std::uint32_t depth) {
    if (!t.has_free_vars()) return t;
    switch (t.kind()) {
        case TermKind::Var:
            return t.name() == name ? Term::bvar(depth) : t;
        case TermKind::App:
            return rebuild(t, abstract_at(t.fn(), name, depth), abstract_at(t.arg(), name, depth));
        case TermKind::Lam:
        case TermKind::Pi:
            return rebuild(t, abstract_at(t.fn(), name, depth), abstract_at(t.arg(), name, depth + 1));
        default:
            return t;
    }
}

}  // namespace

Term instantiate(const Term& body, const Term& value) {
    assert(value.loose_bvar_range() == 0);
    return instantiate_at(body, value, 0);
}

Term abstract(const Term& t, const std::string& name) { return abstract_at(t, name, 0); }

Term substitute(const Term& t, const Substitution& s) {
    if (!t.has_free_vars() || s.empty()) return t;
    switch (t.kind()) {
        case TermKind::Var: {
            auto it = s.find(t.name());
            return it == s.end() ? t : it->second;
        }
        case TermKind::App:
        case TermKind::Lam:
        case TermKind::Pi:
            return rebuild(t, substitute(t.fn(), s), substitute(t.arg(), s));
        default:
            return t;
    }
}

Term fill_hole(const Term& t, const Term& value) {
    if (!t.has_hole()) return t;
    switch (t.kind()) {
        case TermKind::Hole:
            return value;
        case TermKind::App:
        case TermKind::Lam:
        case TermKind::Pi:
            return rebuild(t, fill_hole(t.fn(), value), fill_hole(t.arg(), value));
        default:
            return t;
    }
}

namespace {

void collect_free(const Term& t, std::set<std::string>& out) {
    if (!t.has_free_vars()) return;
    switch (t.kind()) {
        case TermKind::Var:
            out.insert(t.name());
            return;
        case TermKind::App:
        case TermKind::Lam:
        case TermKind::Pi:
            collect_free(t.fn(), out);
            collect_free(t.arg(), out);
            return;
        default:
            return;
    }
}

void collect_consts(const Term& t, std::set<std::string>& out) {
    switch (t.kind()) {
        case TermKind::Const:
            out.insert(t.name());
            return;
        case TermKind::App:
        case TermKind::Lam:
        case TermKind::Pi:
            collect_consts(t.fn(), out);
            collect_consts(t.arg(), out);
            return;
        default:
            return;
    }
}

bool has_bvar(const Term& t, std::uint32_t depth) {
    if (t.loose_bvar_range() <= depth) return false;
    switch (t.kind()) {
        case TermKind::BVar:
            return t.index() == depth;
        case TermKind::App:
            return has_bvar(t.fn(), depth) || has_bvar(t.arg(), depth);
        case TermKind::Lam:
        case TermKind::Pi:
            return has_bvar(t.fn(), depth) || has_bvar(t.arg(), depth + 1);
        default:
            return false;
    }
}

}  // namespace

std::set<std::string> free_variables(const Term& t) {
    std::set<std::string> out;
    collect_free(t, out);
    return out;
}

bool occurs_free(const std::string& name, const Term& t) {
    if (!t.has_free_vars()) return false;
    switch (t.kind()) {
        case TermKind::Var:
            return t.name() == name;
        case TermKind::App:
        case TermKind::Lam:
        case TermKind::Pi:
            return occurs_free(name, t.fn()) || occurs_free(name, t.arg());
        default:
            return false;
    }
}

std::set<std::string> constants_of(const Term& t) {
    std::set<std::string> out;
    collect_consts(t, out);
    return out;
}

bool binder_uses_var(const Term& binder) { return has_bvar(binder.body(), 0); }

Spine spine_of(const Term& t) {
    Spine s;
    Term cur = t;
    while (cur.is(TermKind::App)) {
        s.args.push_back(cur.arg());
        cur = cur.fn();
    }
    std::reverse(s.args.begin(), s.args.end());
    s.head = cur;
    return s;
}

std::size_t term_size(const Term& t) {
    switch (t.kind()) {
        case TermKind::App:
        case TermKind::Lam:
        case TermKind::Pi:
            return 1 + term_size(t.fn()) + term_size(t.arg());
        default:
            return 1;
    }
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
    return fresh_name_if(base, [&](const std::string& n) { return avoid.count(n) > 0; });
}

Context Context::extend(std::string name, Term type) const {
    Context c = *this;
    c.push(std::move(name), std::move(type));
    return c;
}

const Term* Context::lookup(std::string_view name) const {
    for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
        if (it->name == name) return &it->type;
    return nullptr;
}

std::set<std::string> Context::names() const {
    std::set<std::string> out;
    for (const auto& e : entries_) out.insert(e.name);
    return out;
}

std::string Context::fresh(const std::string& hint) const {
    return fresh_name_if(hint.empty() ? std::string("x") : hint,
                         [&](const std::string& n) { return contains(n); });
}

}  // namespace pfk
