#include "pfk/surface.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>

#include "pfk/print.hpp"

namespace pfk {

namespace {

enum class Tok {
    Ident,
    KwType,
    KwRule,
    KwDef,
    KwAssert,
    KwRequire,
    Colon,
    ColonEq,
    Dot,
    Comma,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Arrow,
    LongArrow,
    EqEq,
    Backslash,
    End,
};

std::string_view describe(Tok t) {
    switch (t) {
        case Tok::Ident: return "identifier";
        case Tok::KwType: return "'TYPE'";
        case Tok::KwRule: return "'rule'";
        case Tok::KwDef: return "'def'";
        case Tok::KwAssert: return "'assert'";
        case Tok::KwRequire: return "'require'";
        case Tok::Colon: return "':'";
        case Tok::ColonEq: return "':='";
        case Tok::Dot: return "'.'";
        case Tok::Comma: return "','";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBrack: return "'['";
        case Tok::RBrack: return "']'";
        case Tok::Arrow: return "'->'";
        case Tok::LongArrow: return "'-->'";
        case Tok::EqEq: return "'=='";
        case Tok::Backslash: return "'\\'";
        case Tok::End: return "end of input";
    }
    return "?";
}

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int column = 1;
};

constexpr std::array<std::string_view, 6> kKeywords = {"TYPE", "KIND", "rule", "def", "assert", "require"};

bool ident_start(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return ident_start(c) || c == '\''; }

class Lexer {
public:
    Lexer(std::string_view text, std::string path) : text_(text), path_(std::move(path)) {
        if (text_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
    }

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Token t;
            t.line = line_;
            t.column = col_;
            if (pos_ >= text_.size()) {
                t.kind = Tok::End;
                out.push_back(t);
                return out;
            }
            char c = text_[pos_];
            if (ident_start(c)) {
                std::size_t start = pos_;
                while (pos_ < text_.size() && ident_char(text_[pos_])) advance();
                t.text = std::string(text_.substr(start, pos_ - start));
                t.kind = keyword_kind(t.text, t);
            } else if (starts("-->")) {
                t.kind = Tok::LongArrow, advance(3);
            } else if (starts("->")) {
                t.kind = Tok::Arrow, advance(2);
            } else if (starts(":=")) {
                t.kind = Tok::ColonEq, advance(2);
            } else if (starts("==")) {
                t.kind = Tok::EqEq, advance(2);
            } else {
                switch (c) {
                    case ':': t.kind = Tok::Colon; break;
                    case '.': t.kind = Tok::Dot; break;
                    case ',': t.kind = Tok::Comma; break;
                    case '(': t.kind = Tok::LParen; break;
                    case ')': t.kind = Tok::RParen; break;
                    case '[': t.kind = Tok::LBrack; break;
                    case ']': t.kind = Tok::RBrack; break;
                    case '\\': t.kind = Tok::Backslash; break;
                    default: {
                        std::string shown = (static_cast<unsigned char>(c) < 0x20 || static_cast<unsigned char>(c) > 0x7e)
                                                ? "byte 0x" + hex(static_cast<unsigned char>(c))
                                                : std::string("'") + c + "'";
                        throw Error(ErrorKind::ParseError, "unexpected character " + shown,
                                    SourcePos{path_, line_, col_});
                    }
                }
                advance();
            }
            out.push_back(std::move(t));
        }
    }

private:
    static std::string hex(unsigned v) {
        const char* digits = "0123456789abcdef";
        return {digits[v >> 4], digits[v & 15]};
    }

    Tok keyword_kind(const std::string& s, const Token& t) {
        if (s == "TYPE") return Tok::KwType;
        if (s == "rule") return Tok::KwRule;
        if (s == "def") return Tok::KwDef;
        if (s == "assert") return Tok::KwAssert;
        if (s == "require") return Tok::KwRequire;
        if (s == "KIND")
            throw Error(ErrorKind::ParseError, "'KIND' is reserved and cannot be written",
                        SourcePos{path_, t.line, t.column});
        return Tok::Ident;
    }

    bool starts(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

    void advance(std::size_t n = 1) {
        for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
            if (text_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    void skip_space() {
        for (;;) {
            while (pos_ < text_.size() &&
                   (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r'))
                advance();
            if (starts("(;")) {
                int l = line_, c = col_;
                advance(2);
                while (pos_ < text_.size() && !starts(";)")) advance();
                if (pos_ >= text_.size())
                    throw Error(ErrorKind::ParseError, "unterminated comment", SourcePos{path_, l, c});
                advance(2);
                continue;
            }
            return;
        }
    }

    std::string_view text_;
    std::string path_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    Parser(std::string_view text, std::string path) : path_(std::move(path)) {
        tokens_ = Lexer(text, path_).run();
    }

    SourceFile file() {
        SourceFile f;
        f.path = path_;
        while (!at(Tok::End)) f.items.push_back(item());
        return f;
    }

    RawParamMap param_map() {
        RawParamMap m;
        m.path = path_;
        while (!at(Tok::End)) {
            SourcePos pos = here();
            std::string name = expect(Tok::Ident).text;
            expect(Tok::Dot);
            const Token& which = peek();
            if (which.kind != Tok::Ident || (which.text != "star" && which.text != "plus"))
                fail({"'star'", "'plus'"});
            bool is_star = which.text == "star";
            ++idx_;
            expect(Tok::ColonEq);
            Term t = term();
            expect(Tok::Dot);
            auto [it, inserted] = m.entries.try_emplace(name);
            if (inserted) {
                m.order.push_back(name);
                it->second.pos = pos;
            }
            auto& slot = is_star ? it->second.star : it->second.plus;
            if (slot)
                throw Error(ErrorKind::DuplicateParameter,
                            "parameter '" + name + "." + (is_star ? "star" : "plus") + "' is given twice", pos);
            slot = std::move(t);
        }
        return m;
    }

    Parser& with_scope(std::vector<std::string> names) {
        scope_ = std::move(names);
        return *this;
    }

    Term single_term() {
        Term t = term();
        expect(Tok::End);
        return t;
    }

private:
    const Token& peek(std::size_t k = 0) const {
        std::size_t i = std::min(idx_ + k, tokens_.size() - 1);
        return tokens_[i];
    }
    bool at(Tok k) const { return peek().kind == k; }
    SourcePos here() const { return SourcePos{path_, peek().line, peek().column}; }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        std::sort(expected.begin(), expected.end());
        expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
        std::string msg = "expected ";
        if (expected.size() > 1) msg += "one of ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) msg += ", ";
            msg += expected[i];
        }
        const Token& t = peek();
        msg += " but found ";
        msg += t.kind == Tok::Ident ? "identifier '" + t.text + "'" : std::string(describe(t.kind));
        throw Error(ErrorKind::ParseError, msg, here());
    }

    const Token& expect(Tok k) {
        if (!at(k)) fail({std::string(describe(k))});
        return tokens_[idx_++];
    }

    bool accept(Tok k) {
        if (!at(k)) return false;
        ++idx_;
        return true;
    }

    bool bound(const std::string& name) const {
        return std::find(scope_.begin(), scope_.end(), name) != scope_.end();
    }

    Item item() {
        Item it;
        it.pos = here();
        switch (peek().kind) {
            case Tok::Ident: {
                std::string name = tokens_[idx_++].text;
                expect(Tok::Colon);
                Term ty = term();
                expect(Tok::Dot);
                it.node = DeclItem{std::move(name), std::move(ty)};
                return it;
            }
            case Tok::KwRule: {
                ++idx_;
                expect(Tok::LBrack);
                Context ctx;
                if (!at(Tok::RBrack)) {
                    for (;;) {
                        std::string v = expect(Tok::Ident).text;
                        expect(Tok::Colon);
                        Term ty = term();
                        ctx.push(v, std::move(ty));
                        scope_.push_back(v);
                        if (!accept(Tok::Comma)) break;
                    }
                }
                if (!at(Tok::RBrack)) fail({"','", "']'"});
                ++idx_;
                Term lhs = term();
                expect(Tok::LongArrow);
                Term rhs = term();
                expect(Tok::Dot);
                scope_.clear();
                it.node = RuleItem{std::move(ctx), std::move(lhs), std::move(rhs)};
                return it;
            }
            case Tok::KwDef: {
                ++idx_;
                std::string name = expect(Tok::Ident).text;
                expect(Tok::Colon);
                Term ty = term();
                expect(Tok::ColonEq);
                Term body = term();
                expect(Tok::Dot);
                it.node = DefItem{std::move(name), std::move(ty), std::move(body)};
                return it;
            }
            case Tok::KwAssert: {
                ++idx_;
                Term t = term();
                if (accept(Tok::EqEq)) {
                    Term u = term();
                    expect(Tok::Dot);
                    it.node = AssertConvItem{std::move(t), std::move(u)};
                } else if (accept(Tok::Colon)) {
                    Term a = term();
                    expect(Tok::Dot);
                    it.node = AssertTypeItem{std::move(t), std::move(a)};
                } else {
                    fail({"'=='", "':'", "'->'"});
                }
                return it;
            }
            case Tok::KwRequire: {
                ++idx_;
                std::string m = expect(Tok::Ident).text;
                expect(Tok::Dot);
                it.node = RequireItem{std::move(m)};
                return it;
            }
            default:
                fail({"identifier", "'rule'", "'def'", "'assert'", "'require'"});
        }
    }

    Term term() {
        if (at(Tok::Backslash)) return lambda();
        if (at(Tok::LParen) && peek(1).kind == Tok::Ident && peek(2).kind == Tok::Colon) {
            ++idx_;
            std::string x = tokens_[idx_++].text;
            ++idx_;
            Term dom = term();
            expect(Tok::RParen);
            expect(Tok::Arrow);
            scope_.push_back(x);
            Term cod = term();
            scope_.pop_back();
            return Term::pi(x, std::move(dom), cod);
        }
        Term lhs = application();
        if (accept(Tok::Arrow)) {
            Term cod = term();
            return Term::arrow(std::move(lhs), std::move(cod));
        }
        return lhs;
    }

    Term lambda() {
        expect(Tok::Backslash);
        expect(Tok::LParen);
        std::string x = expect(Tok::Ident).text;
        expect(Tok::Colon);
        Term ann = term();
        expect(Tok::RParen);
        expect(Tok::Dot);
        scope_.push_back(x);
        Term body = term();
        scope_.pop_back();
        return Term::lam(x, std::move(ann), body);
    }

    bool atom_start() const {
        return at(Tok::Ident) || at(Tok::KwType) || at(Tok::LParen);
    }

    Term atom() {
        if (at(Tok::KwType)) {
            ++idx_;
            return Term::type();
        }
        if (at(Tok::Ident)) {
            std::string name = tokens_[idx_++].text;
            return bound(name) ? Term::var(std::move(name)) : Term::cnst(std::move(name));
        }
        if (accept(Tok::LParen)) {
            Term t = term();
            if (!at(Tok::RParen)) fail({"')'", "'->'", "identifier", "'('", "'TYPE'"});
            ++idx_;
            return t;
        }
        fail({"identifier", "'TYPE'", "'('", "'\\'"});
    }

    Term application() {
        Term head = atom();
        for (;;) {
            if (at(Tok::Backslash)) return Term::app(head, lambda());
            if (!atom_start()) return head;
            head = Term::app(head, atom());
        }
    }

    std::string path_;
    std::vector<Token> tokens_;
    std::size_t idx_ = 0;
    std::vector<std::string> scope_;
};

std::string print_context(const Context& ctx) {
    std::string out = "[";
    bool first = true;
    for (const auto& e : ctx) {
        if (!first) out += ", ";
        first = false;
        out += e.name + " : " + print_term(e.type);
    }
    return out + "]";
}

}  // namespace

bool is_keyword(std::string_view s) {
    return std::find(kKeywords.begin(), kKeywords.end(), s) != kKeywords.end();
}

bool is_identifier(std::string_view s) {
    if (s.empty() || !ident_start(s.front())) return false;
    if (!std::all_of(s.begin(), s.end(), ident_char)) return false;
    return !is_keyword(s);
}

SourceFile parse_file(std::string_view text, const std::string& path) { return Parser(text, path).file(); }

Term parse_term(std::string_view text, const std::vector<std::string>& free_vars) {
    return Parser(text, {}).with_scope(free_vars).single_term();
}

RawParamMap parse_param_map(std::string_view text, const std::string& path) {
    return Parser(text, path).param_map();
}

std::string print_param_map(const RawParamMap& map) {
    std::string out;
    for (const auto& name : map.order) {
        const RawParameter& p = map.entries.at(name);
        if (p.star) out += name + ".star := " + print_term(*p.star) + ".\n";
        if (p.plus) out += name + ".plus := " + print_term(*p.plus) + ".\n";
    }
    return out;
}

std::string print_item(const Item& item) {
    struct Visitor {
        std::string operator()(const DeclItem& d) const { return d.name + " : " + print_term(d.type) + "."; }
        std::string operator()(const RuleItem& r) const {
            return "rule " + print_context(r.context) + " " + print_term(r.lhs) + " --> " + print_term(r.rhs) + ".";
        }
        std::string operator()(const DefItem& d) const {
            return "def " + d.name + " : " + print_term(d.type) + " := " + print_term(d.body) + ".";
        }
        std::string operator()(const AssertConvItem& a) const {
            return "assert " + print_term(a.lhs) + " == " + print_term(a.rhs) + ".";
        }
        std::string operator()(const AssertTypeItem& a) const {
            return "assert " + print_term(a.term) + " : " + print_term(a.type) + ".";
        }
        std::string operator()(const RequireItem& r) const { return "require " + r.module + "."; }
    };
    return std::visit(Visitor{}, item.node);
}

std::string print_file(const SourceFile& file) {
    std::string out;
    for (const auto& it : file.items) out += print_item(it) + "\n";
    return out;
}

bool alpha_equal(const Item& a, const Item& b) {
    if (a.node.index() != b.node.index()) return false;
    if (auto x = a.as<DeclItem>()) {
        auto y = b.as<DeclItem>();
        return x->name == y->name && alpha_equal(x->type, y->type);
    }
    if (auto x = a.as<RuleItem>()) {
        auto y = b.as<RuleItem>();
        if (x->context.size() != y->context.size()) return false;
        for (std::size_t i = 0; i < x->context.size(); ++i) {
            const auto& ex = x->context.entries()[i];
            const auto& ey = y->context.entries()[i];
            if (ex.name != ey.name || !alpha_equal(ex.type, ey.type)) return false;
        }
        return alpha_equal(x->lhs, y->lhs) && alpha_equal(x->rhs, y->rhs);
    }
    if (auto x = a.as<DefItem>()) {
        auto y = b.as<DefItem>();
        return x->name == y->name && alpha_equal(x->type, y->type) && alpha_equal(x->body, y->body);
    }
    if (auto x = a.as<AssertConvItem>()) {
        auto y = b.as<AssertConvItem>();
        return alpha_equal(x->lhs, y->lhs) && alpha_equal(x->rhs, y->rhs);
    }
    if (auto x = a.as<AssertTypeItem>()) {
        auto y = b.as<AssertTypeItem>();
        return alpha_equal(x->term, y->term) && alpha_equal(x->type, y->type);
    }
    return a.as<RequireItem>()->module == b.as<RequireItem>()->module;
}

}  // namespace pfk
