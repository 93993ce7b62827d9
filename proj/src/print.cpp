#include "pfk/print.hpp"

#include <cctype>
#include <set>
#include <vector>

#include "pfk/surface.hpp"

namespace pfk {

namespace {

enum class Prec { Top, ArrowLeft, AppHead, Arg };

void collect_names(const Term& t, std::uint32_t depth, const std::vector<std::string>& scope,
                   std::set<std::string>& out) {
    switch (t.kind()) {
        case TermKind::Var:
        case TermKind::Const:
            out.insert(t.name());
            return;
        case TermKind::BVar:
            if (t.index() >= depth) {
                std::uint32_t k = t.index() - depth;
                if (k < scope.size()) out.insert(scope[scope.size() - 1 - k]);
            }
            return;
        case TermKind::App:
            collect_names(t.fn(), depth, scope, out);
            collect_names(t.arg(), depth, scope, out);
            return;
        case TermKind::Lam:
        case TermKind::Pi:
            collect_names(t.fn(), depth, scope, out);
            collect_names(t.arg(), depth + 1, scope, out);
            return;
        default:
            return;
    }
}

std::string sanitize_hint(const std::string& hint) {
    if (!is_identifier(hint)) return "x";
    return hint;
}

class Printer {
public:
    std::string run(const Term& t) {
        print(t, Prec::Top);
        return std::move(out_);
    }

private:
    std::string binder_name(const Term& binder) {
        // The body sees the binder as index 0 and the current scope shifted by one.
        std::set<std::string> avoid;
        collect_names(binder.body(), 1, scope_, avoid);
        return fresh_name(sanitize_hint(binder.name()), avoid);
    }

    void print(const Term& t, Prec prec) {
        switch (t.kind()) {
            case TermKind::Sort:
                out_ += t.is_sort(Sort::Type) ? "TYPE" : "KIND";
                return;
            case TermKind::Var:
            case TermKind::Const:
                out_ += t.name();
                return;
            case TermKind::BVar:
                if (t.index() < scope_.size())
                    out_ += scope_[scope_.size() - 1 - t.index()];
                else
                    out_ += "#" + std::to_string(t.index());
                return;
            case TermKind::Hole:
                out_ += "?";
                return;
            case TermKind::App: {
                bool paren = prec == Prec::Arg;
                if (paren) out_ += "(";
                Spine s = spine_of(t);
                print(s.head, Prec::AppHead);
                for (const auto& a : s.args) {
                    out_ += " ";
                    print(a, Prec::Arg);
                }
                if (paren) out_ += ")";
                return;
            }
            case TermKind::Lam: {
                bool paren = prec != Prec::Top;
                if (paren) out_ += "(";
                std::string name = binder_name(t);
                out_ += "\\ (" + name + " : ";
                print(t.ann(), Prec::Top);
                out_ += "). ";
                scope_.push_back(name);
                print(t.body(), Prec::Top);
                scope_.pop_back();
                if (paren) out_ += ")";
                return;
            }
            case TermKind::Pi: {
                bool paren = prec != Prec::Top;
                if (paren) out_ += "(";
                if (binder_uses_var(t)) {
                    std::string name = binder_name(t);
                    out_ += "(" + name + " : ";
                    print(t.ann(), Prec::Top);
                    out_ += ") -> ";
                    scope_.push_back(name);
                } else {
                    print(t.ann(), Prec::ArrowLeft);
                    out_ += " -> ";
                    scope_.push_back("_");
                }
                print(t.body(), Prec::Top);
                scope_.pop_back();
                if (paren) out_ += ")";
                return;
            }
        }
    }

    std::string out_;
    std::vector<std::string> scope_;
};

}  // namespace

std::string print_term(const Term& t) { return Printer{}.run(t); }

}  // namespace pfk
