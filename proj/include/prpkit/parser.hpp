// Concrete ASCII syntax: parsing and printing.
//
//   formula  := iff
//   iff      := imp [ "<->" iff ]
//   imp      := or [ "->" imp ]
//   or       := and { ("v|" | "|") and }
//   and      := unary { "&" unary }
//   unary    := "~" unary | "#" unary | "?" unary
//             | "E" var "." unary | "A" var "." unary
//             | "(" formula ")" | atom
//   atom     := Pred [ "(" term {"," term} ")" ] | term "=" term
//   term     := var | "[" formula "]" [ "_" ( var | "{" var* "}" ) ]
//
// With arithmetic enabled the terms 0 and S(t) and the formulas NN(t), I(t)
// and Cong(t,s) are accepted and expanded on the spot.
#pragma once

#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <string_view>

#include "arith_macros.hpp"
#include "syntax.hpp"

namespace prpkit {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t offset)
        : std::runtime_error(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Predicate names and arities. The identity predicate is always present.
class Signature {
public:
    Signature() { preds_["="] = 2; }

    /// Returns false when `name` is already declared with another arity.
    bool declare(const std::string& name, int arity) {
        auto [it, inserted] = preds_.emplace(name, arity);
        return inserted || it->second == arity;
    }
    std::optional<int> arity(const std::string& name) const {
        auto it = preds_.find(name);
        if (it == preds_.end()) return std::nullopt;
        return it->second;
    }
    const std::map<std::string, int>& predicates() const { return preds_; }

private:
    std::map<std::string, int> preds_;
};

struct ParseOptions {
    /// Undeclared predicates are declared on first use.
    bool infer_predicates = true;
    /// Accept the arithmetic macros (declares Delta/2).
    bool arith = false;
};

namespace detail {

enum class Tok {
    Ident, Number, LParen, RParen, LBrack, RBrack, LBrace, RBrace, Underscore,
    Amp, Tilde, Dot, Comma, Eq, Arrow, Iff, Or, Hash, Query, End
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t offset;
};

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
inline bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '\'';
}

inline std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto push = [&](Tok k, std::size_t len) {
        out.push_back({k, std::string(s.substr(i, len)), i});
        i += len;
    };
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == 'v' && i + 1 < s.size() && s[i + 1] == '|') {
            push(Tok::Or, 2);
            continue;
        }
        if (ident_start(c)) {
            std::size_t j = i + 1;
            while (j < s.size() && ident_char(s[j])) ++j;
            push(Tok::Ident, j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i + 1;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            push(Tok::Number, j - i);
            continue;
        }
        if (s.substr(i, 3) == "<->") {
            push(Tok::Iff, 3);
            continue;
        }
        if (s.substr(i, 2) == "->") {
            push(Tok::Arrow, 2);
            continue;
        }
        switch (c) {
            case '(': push(Tok::LParen, 1); break;
            case ')': push(Tok::RParen, 1); break;
            case '[': push(Tok::LBrack, 1); break;
            case ']': push(Tok::RBrack, 1); break;
            case '{': push(Tok::LBrace, 1); break;
            case '}': push(Tok::RBrace, 1); break;
            case '_': push(Tok::Underscore, 1); break;
            case '&': push(Tok::Amp, 1); break;
            case '~': push(Tok::Tilde, 1); break;
            case '.': push(Tok::Dot, 1); break;
            case ',': push(Tok::Comma, 1); break;
            case '=': push(Tok::Eq, 1); break;
            case '|': push(Tok::Or, 1); break;
            case '#': push(Tok::Hash, 1); break;
            case '?': push(Tok::Query, 1); break;
            default: throw ParseError(std::string("unexpected character '") + c + "'", i);
        }
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

inline bool valid_var_name(std::string_view n) {
    if (n.empty() || !ident_start(n[0])) return false;
    for (char c : n)
        if (!ident_char(c)) return false;
    return true;
}

class Parser {
public:
    Parser(std::string_view text, Signature& sig, ParseOptions opts)
        : toks_(lex(text)), sig_(sig), opts_(opts) {
        if (opts_.arith) sig_.declare("Delta", 2);
    }

    Formula formula_all() {
        Formula f = formula();
        expect(Tok::End, "end of input");
        return f;
    }
    Term term_all() {
        Term t = term();
        expect(Tok::End, "end of input");
        return t;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    Signature& sig_;
    ParseOptions opts_;

    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool at(Tok k) const { return peek().kind == k; }
    Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    Token expect(Tok k, const char* what) {
        if (!at(k)) throw ParseError(std::string("expected ") + what, peek().offset);
        return take();
    }

    Formula formula() { return iff_level(); }

    Formula iff_level() {
        Formula l = imp_level();
        if (at(Tok::Iff)) {
            take();
            Formula r = iff_level();
            return iff(l, r);
        }
        return l;
    }

    Formula imp_level() {
        Formula l = or_level();
        if (at(Tok::Arrow)) {
            take();
            Formula r = imp_level();
            return implies(l, r);
        }
        return l;
    }

    Formula or_level() {
        Formula l = and_level();
        while (at(Tok::Or)) {
            take();
            l = disj(l, and_level());
        }
        return l;
    }

    Formula and_level() {
        Formula l = unary();
        while (at(Tok::Amp)) {
            take();
            l = Formula::conj(l, unary());
        }
        return l;
    }

    // "Ex." / "E x." style quantifier prefix; returns the quantifier letter.
    std::optional<std::pair<char, Variable>> quantifier() {
        const Token& t = peek();
        if (t.kind != Tok::Ident) return std::nullopt;
        char q = t.text[0];
        if (q != 'E' && q != 'A') return std::nullopt;
        if (t.text.size() > 1 && peek(1).kind == Tok::Dot && valid_var_name(t.text.substr(1))) {
            Variable v(t.text.substr(1));
            take();
            take();
            return std::make_pair(q, v);
        }
        if (t.text.size() == 1 && peek(1).kind == Tok::Ident && peek(2).kind == Tok::Dot) {
            take();
            Variable v(take().text);
            take();
            return std::make_pair(q, v);
        }
        return std::nullopt;
    }

    Formula unary() {
        switch (peek().kind) {
            case Tok::Tilde: take(); return Formula::neg(unary());
            case Tok::Hash: take(); return box(unary());
            case Tok::Query: take(); return diamond(unary());
            case Tok::LParen: {
                take();
                Formula f = formula();
                expect(Tok::RParen, "')'");
                return f;
            }
            default: break;
        }
        if (auto q = quantifier()) {
            Formula body = unary();
            return q->first == 'E' ? Formula::exists(q->second, body) : forall(q->second, body);
        }
        return atomic();
    }

    std::vector<Term> arg_list() {
        std::vector<Term> args;
        expect(Tok::LParen, "'('");
        if (!at(Tok::RParen)) {
            args.push_back(term());
            while (at(Tok::Comma)) {
                take();
                args.push_back(term());
            }
        }
        expect(Tok::RParen, "')'");
        return args;
    }

    bool is_arith_formula_macro(const std::string& n) const {
        return opts_.arith && (n == "NN" || n == "I" || n == "Cong") && !sig_.arity(n);
    }

    Formula atomic() {
        const Token& t = peek();
        if (t.kind == Tok::Ident && peek(1).kind == Tok::LParen && is_arith_formula_macro(t.text)) {
            Token name = take();
            auto args = arg_list();
            std::size_t want = name.text == "Cong" ? 2 : 1;
            if (args.size() != want)
                throw ParseError(name.text + " expects " + std::to_string(want) + " argument(s)", name.offset);
            if (name.text == "NN") return arith::natural(args[0]);
            if (name.text == "I") return arith::inductive(args[0]);
            return arith::cong(args[0], args[1]);
        }
        if (t.kind == Tok::Ident && !(opts_.arith && t.text == "S" && !sig_.arity("S"))) {
            auto ar = sig_.arity(t.text);
            bool call = peek(1).kind == Tok::LParen;
            bool infer0 = !call && peek(1).kind != Tok::Eq && opts_.infer_predicates && !ar;
            if (ar || (call && opts_.infer_predicates) || infer0) {
                Token name = take();
                std::vector<Term> args;
                if (call) args = arg_list();
                if (!ar) {
                    sig_.declare(name.text, static_cast<int>(args.size()));
                    ar = static_cast<int>(args.size());
                }
                if (static_cast<int>(args.size()) != *ar)
                    throw ParseError("arity mismatch: " + name.text + " expects " + std::to_string(*ar) +
                                         " argument(s), got " + std::to_string(args.size()),
                                     name.offset);
                return Formula::atom(Predicate{name.text, *ar}, std::move(args));
            }
            if (call) throw ParseError("undeclared predicate '" + t.text + "'", t.offset);
        }
        Term l = term();
        expect(Tok::Eq, "'=' or a predicate");
        Term r = term();
        return Formula::identity(l, r);
    }

    Term term() {
        const Token& t = peek();
        if (t.kind == Tok::Number) {
            if (opts_.arith && t.text == "0") {
                take();
                return arith::zero();
            }
            throw ParseError("unexpected number", t.offset);
        }
        if (t.kind == Tok::Ident) {
            if (opts_.arith && t.text == "S" && peek(1).kind == Tok::LParen && !sig_.arity("S")) {
                Token name = take();
                auto args = arg_list();
                if (args.size() != 1) throw ParseError("S expects 1 argument", name.offset);
                return arith::succ(args[0]);
            }
            if (sig_.arity(t.text) && peek(1).kind == Tok::LParen)
                throw ParseError("predicate '" + t.text + "' used as a term", t.offset);
            return Term::var(take().text);
        }
        if (t.kind == Tok::LBrack) {
            take();
            Formula body = formula();
            expect(Tok::RBrack, "']'");
            VarList bound;
            std::size_t where = peek().offset;
            if (at(Tok::Underscore)) {
                take();
                where = peek().offset;
                if (at(Tok::LBrace)) {
                    take();
                    while (at(Tok::Ident)) {
                        const Token& id = take();
                        if (std::find(bound.begin(), bound.end(), Variable(id.text)) != bound.end())
                            throw ParseError("duplicate abstraction variable '" + id.text + "'", id.offset);
                        bound.emplace_back(id.text);
                    }
                    expect(Tok::RBrace, "'}'");
                } else {
                    bound.emplace_back(expect(Tok::Ident, "abstraction variable").text);
                }
            }
            try {
                return Term::abstract(body, bound);
            } catch (const std::invalid_argument& e) {
                throw ParseError(e.what(), where);
            }
        }
        throw ParseError("expected a term", t.offset);
    }
};

}  // namespace detail

inline Formula parse_formula(std::string_view text, Signature& sig, ParseOptions opts = {}) {
    detail::Parser p(text, sig, opts);
    return p.formula_all();
}

inline Formula parse_formula(std::string_view text) {
    Signature sig;
    return parse_formula(text, sig);
}

inline Term parse_term(std::string_view text, Signature& sig, ParseOptions opts = {}) {
    detail::Parser p(text, sig, opts);
    return p.term_all();
}

inline Term parse_term(std::string_view text) {
    Signature sig;
    return parse_term(text, sig);
}

// ---------------------------------------------------------------------------
// Printing

namespace detail {

inline std::string join_vars(const VarList& vs) {
    std::string s;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) s += ' ';
        s += vs[i].name;
    }
    return s;
}

class Printer {
public:
    explicit Printer(bool pretty) : pretty_(pretty) {}

    std::string term(const Term& t) const {
        if (t.is_var()) return t.variable().name;
        std::string s = "[" + formula(t.body(), 0) + "]";
        if (!t.bound().empty()) s += "_{" + join_vars(t.bound()) + "}";
        return s;
    }

    // Levels: 0 iff, 1 implication, 2 disjunction, 3 conjunction, 4 unary.
    std::string formula(const Formula& f, int level) const {
        if (pretty_) {
            if (auto s = sugar(f, level)) return *s;
        }
        switch (f.kind()) {
            case Formula::Kind::Atomic: return atom(f);
            case Formula::Kind::Conj:
                return wrap(formula(f.left(), 3) + " & " + formula(f.right(), 4), level > 3);
            case Formula::Kind::Neg: return "~" + formula(f.inner(), 4);
            case Formula::Kind::Exists: return "E" + f.bound_var().name + ". " + formula(f.body(), 4);
        }
        return {};
    }

private:
    bool pretty_;

    static std::string wrap(std::string s, bool paren) { return paren ? "(" + s + ")" : s; }

    std::string atom(const Formula& f) const {
        if (f.predicate().is_identity()) return term(f.args()[0]) + " = " + term(f.args()[1]);
        std::string s = f.predicate().name;
        if (f.args().empty()) return s;
        s += '(';
        for (std::size_t i = 0; i < f.args().size(); ++i) {
            if (i) s += ',';
            s += term(f.args()[i]);
        }
        return s + ')';
    }

    static std::optional<Formula> boxed(const Formula& f) {
        if (!f.is_identity()) return std::nullopt;
        const Term& l = f.args()[0];
        const Term& r = f.args()[1];
        if (!l.is_abstract() || !l.bound().empty() || !r.is_abstract() || !r.bound().empty()) return std::nullopt;
        if (box(l.body()) == f) return l.body();
        return std::nullopt;
    }

    static std::optional<std::pair<Formula, Formula>> implication(const Formula& f) {
        if (f.is_neg() && f.inner().is_conj() && f.inner().right().is_neg())
            return std::make_pair(f.inner().left(), f.inner().right().inner());
        return std::nullopt;
    }

    std::optional<std::string> sugar(const Formula& f, int level) const {
        if (auto a = boxed(f)) return "#" + formula(*a, 4);
        if (f.is_conj()) {
            auto l = implication(f.left());
            auto r = implication(f.right());
            if (l && r && l->first == r->second && l->second == r->first)
                return wrap(formula(l->first, 1) + " <-> " + formula(l->second, 0), level > 0);
            return std::nullopt;
        }
        if (!f.is_neg()) return std::nullopt;
        const Formula& in = f.inner();
        if (auto a = boxed(in); a && a->is_neg()) return "?" + formula(a->inner(), 4);
        if (in.is_exists()) {
            const Formula& x = in.body();
            const std::string q = "A" + in.bound_var().name + ". ";
            if (x.is_neg() && !x.inner().is_neg()) return q + formula(x.inner(), 4);
            if (!x.is_neg()) return q + "~" + formula(x, 4);
            return std::nullopt;
        }
        if (auto imp = implication(f)) return wrap(formula(imp->first, 2) + " -> " + formula(imp->second, 1), level > 1);
        return std::nullopt;
    }
};

}  // namespace detail

/// Primitive-syntax rendering (&, ~, E only).
inline std::string to_string(const Formula& f) { return detail::Printer(false).formula(f, 0); }
inline std::string to_string(const Term& t) { return detail::Printer(false).term(t); }

/// Rendering with ->, <->, A, #, ? recovered where the primitive shape allows.
inline std::string to_pretty(const Formula& f) { return detail::Printer(true).formula(f, 0); }
inline std::string to_pretty(const Term& t) { return detail::Printer(true).term(t); }

inline std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << to_string(f); }
inline std::ostream& operator<<(std::ostream& os, const Term& t) { return os << to_string(t); }
inline std::ostream& operator<<(std::ostream& os, const Variable& v) { return os << v.name; }

}  // namespace prpkit
