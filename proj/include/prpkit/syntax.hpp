// Abstract syntax of the intensional language: variables, predicates, terms
// (variables and intensional abstracts) and formulas built from atoms with
// conjunction, negation and existential quantification.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace prpkit {

/// A variable of the language. Variables are totally ordered: the generated
/// names x0, x1, x2, ... come first (by index), every other name follows in
/// lexicographic order. "Earliest variable" always refers to this order.
struct Variable {
    std::string name;

    Variable() = default;
    explicit Variable(std::string n) : name(std::move(n)) {}

    bool operator==(const Variable&) const = default;
    bool operator<(const Variable& o) const { return name < o.name; }
};

namespace detail {
// Index k when the name is exactly "x<k>" with no leading zeros.
inline std::optional<std::uint64_t> generated_index(const std::string& n) {
    if (n.size() < 2 || n[0] != 'x') return std::nullopt;
    if (n.size() > 2 && n[1] == '0') return std::nullopt;
    std::uint64_t k = 0;
    for (std::size_t i = 1; i < n.size(); ++i) {
        if (n[i] < '0' || n[i] > '9') return std::nullopt;
        k = k * 10 + static_cast<std::uint64_t>(n[i] - '0');
    }
    return k;
}
}  // namespace detail

/// Strict order on variable ordinals.
inline bool ordinal_less(const Variable& a, const Variable& b) {
    auto ia = detail::generated_index(a.name);
    auto ib = detail::generated_index(b.name);
    if (ia && ib) return *ia < *ib;
    if (ia) return true;
    if (ib) return false;
    return a.name < b.name;
}

inline Variable generated_variable(std::uint64_t k) { return Variable("x" + std::to_string(k)); }

using VarList = std::vector<Variable>;
using VarSet = std::set<Variable>;

struct Predicate {
    std::string name;
    int arity = 0;

    bool is_identity() const { return name == "="; }
    bool operator==(const Predicate&) const = default;
    bool operator<(const Predicate& o) const {
        return name != o.name ? name < o.name : arity < o.arity;
    }
};

inline Predicate identity_predicate() { return Predicate{"=", 2}; }

class Term;
class Formula;
struct TermNode;
struct FormulaNode;

class Term {
public:
    enum class Kind { Var, Abstract };

    static Term var(Variable v);
    static Term var(const std::string& name) { return var(Variable(name)); }
    /// Throws std::invalid_argument when the bound list repeats a variable.
    static Term abstract(Formula body, VarList bound = {});

    Kind kind() const;
    bool is_var() const { return kind() == Kind::Var; }
    bool is_abstract() const { return kind() == Kind::Abstract; }

    const Variable& variable() const;
    const Formula& body() const;
    const VarList& bound() const;

    bool operator==(const Term& o) const;

    const TermNode* node() const { return node_.get(); }

private:
    explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const TermNode> node_;
};

class Formula {
public:
    enum class Kind { Atomic, Conj, Neg, Exists };

    /// Throws std::invalid_argument on an arity mismatch.
    static Formula atom(Predicate p, std::vector<Term> args);
    static Formula conj(Formula l, Formula r);
    static Formula neg(Formula f);
    static Formula exists(Variable v, Formula body);
    static Formula identity(Term l, Term r) { return atom(identity_predicate(), {std::move(l), std::move(r)}); }

    Kind kind() const;
    bool is_atomic() const { return kind() == Kind::Atomic; }
    bool is_conj() const { return kind() == Kind::Conj; }
    bool is_neg() const { return kind() == Kind::Neg; }
    bool is_exists() const { return kind() == Kind::Exists; }
    bool is_identity() const { return is_atomic() && predicate().is_identity(); }

    const Predicate& predicate() const;
    const std::vector<Term>& args() const;
    const Formula& left() const;
    const Formula& right() const;
    const Formula& inner() const;
    const Variable& bound_var() const;
    const Formula& body() const;

    bool operator==(const Formula& o) const;

    const FormulaNode* node() const { return node_.get(); }

private:
    explicit Formula(std::shared_ptr<const FormulaNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const FormulaNode> node_;
};

struct TermNode {
    Term::Kind kind;
    Variable var;
    std::optional<Formula> body;
    VarList bound;
};

struct FormulaNode {
    Formula::Kind kind;
    Predicate pred;
    std::vector<Term> args;
    std::optional<Formula> a;
    std::optional<Formula> b;
    Variable var;
};

inline Term Term::var(Variable v) {
    auto n = std::make_shared<TermNode>();
    n->kind = Kind::Var;
    n->var = std::move(v);
    return Term(std::move(n));
}

inline Term Term::abstract(Formula body, VarList bound) {
    VarSet seen;
    for (const auto& v : bound)
        if (!seen.insert(v).second)
            throw std::invalid_argument("duplicate abstraction variable '" + v.name + "'");
    auto n = std::make_shared<TermNode>();
    n->kind = Kind::Abstract;
    n->body = std::move(body);
    n->bound = std::move(bound);
    return Term(std::move(n));
}

inline Term::Kind Term::kind() const { return node_->kind; }
inline const Variable& Term::variable() const { return node_->var; }
inline const Formula& Term::body() const { return *node_->body; }
inline const VarList& Term::bound() const { return node_->bound; }

inline Formula Formula::atom(Predicate p, std::vector<Term> args) {
    if (static_cast<int>(args.size()) != p.arity)
        throw std::invalid_argument("predicate " + p.name + " expects " + std::to_string(p.arity) +
                                    " arguments, got " + std::to_string(args.size()));
    auto n = std::make_shared<FormulaNode>();
    n->kind = Kind::Atomic;
    n->pred = std::move(p);
    n->args = std::move(args);
    return Formula(std::move(n));
}

inline Formula Formula::conj(Formula l, Formula r) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = Kind::Conj;
    n->a = std::move(l);
    n->b = std::move(r);
    return Formula(std::move(n));
}

inline Formula Formula::neg(Formula f) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = Kind::Neg;
    n->a = std::move(f);
    return Formula(std::move(n));
}

inline Formula Formula::exists(Variable v, Formula body) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = Kind::Exists;
    n->var = std::move(v);
    n->a = std::move(body);
    return Formula(std::move(n));
}

inline Formula::Kind Formula::kind() const { return node_->kind; }
inline const Predicate& Formula::predicate() const { return node_->pred; }
inline const std::vector<Term>& Formula::args() const { return node_->args; }
inline const Formula& Formula::left() const { return *node_->a; }
inline const Formula& Formula::right() const { return *node_->b; }
inline const Formula& Formula::inner() const { return *node_->a; }
inline const Variable& Formula::bound_var() const { return node_->var; }
inline const Formula& Formula::body() const { return *node_->a; }

inline bool Term::operator==(const Term& o) const {
    if (node_ == o.node_) return true;
    if (kind() != o.kind()) return false;
    if (is_var()) return variable() == o.variable();
    return bound() == o.bound() && body() == o.body();
}

inline bool Formula::operator==(const Formula& o) const {
    if (node_ == o.node_) return true;
    if (kind() != o.kind()) return false;
    switch (kind()) {
        case Kind::Atomic: return predicate() == o.predicate() && args() == o.args();
        case Kind::Conj: return left() == o.left() && right() == o.right();
        case Kind::Neg: return inner() == o.inner();
        case Kind::Exists: return bound_var() == o.bound_var() && body() == o.body();
    }
    return false;
}

// ---------------------------------------------------------------------------
// Defined connectives. These are surface conveniences; the result is always
// built from the four primitive constructors.

inline Formula implies(const Formula& a, const Formula& b) {
    return Formula::neg(Formula::conj(a, Formula::neg(b)));
}
inline Formula disj(const Formula& a, const Formula& b) {
    return Formula::neg(Formula::conj(Formula::neg(a), Formula::neg(b)));
}
inline Formula iff(const Formula& a, const Formula& b) { return Formula::conj(implies(a, b), implies(b, a)); }

/// Universal quantification ~Ev.~A. A leading negation of the body cancels
/// the inner one, so Av.~B is ~Ev.B.
inline Formula forall(const Variable& v, const Formula& a) {
    if (a.is_neg()) return Formula::neg(Formula::exists(v, a.inner()));
    return Formula::neg(Formula::exists(v, Formula::neg(a)));
}

/// Av1. Av2. ... Avn. A  (outermost quantifier binds the first variable).
inline Formula forall_list(const VarList& vs, Formula a) {
    for (auto it = vs.rbegin(); it != vs.rend(); ++it) a = forall(*it, a);
    return a;
}

/// Necessity: [A] = [[A] = [A]].
inline Formula box(const Formula& a) {
    Term p = Term::abstract(a);
    return Formula::identity(p, Term::abstract(Formula::identity(p, p)));
}
inline Formula diamond(const Formula& a) { return Formula::neg(box(Formula::neg(a))); }

// ---------------------------------------------------------------------------
// Variable analysis

namespace detail {

inline void free_vars_into(const Formula& f, VarList& out, std::vector<Variable>& scope);

inline void note_free(const Variable& v, VarList& out, const std::vector<Variable>& scope) {
    if (std::find(scope.begin(), scope.end(), v) != scope.end()) return;
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
}

inline void free_vars_into(const Term& t, VarList& out, std::vector<Variable>& scope) {
    if (t.is_var()) {
        note_free(t.variable(), out, scope);
        return;
    }
    const auto n = scope.size();
    scope.insert(scope.end(), t.bound().begin(), t.bound().end());
    free_vars_into(t.body(), out, scope);
    scope.resize(n);
}

inline void free_vars_into(const Formula& f, VarList& out, std::vector<Variable>& scope) {
    switch (f.kind()) {
        case Formula::Kind::Atomic:
            for (const auto& a : f.args()) free_vars_into(a, out, scope);
            break;
        case Formula::Kind::Conj:
            free_vars_into(f.left(), out, scope);
            free_vars_into(f.right(), out, scope);
            break;
        case Formula::Kind::Neg: free_vars_into(f.inner(), out, scope); break;
        case Formula::Kind::Exists:
            scope.push_back(f.bound_var());
            free_vars_into(f.body(), out, scope);
            scope.pop_back();
            break;
    }
}

inline void all_vars_into(const Formula& f, VarSet& out);
inline void all_vars_into(const Term& t, VarSet& out) {
    if (t.is_var()) {
        out.insert(t.variable());
        return;
    }
    out.insert(t.bound().begin(), t.bound().end());
    all_vars_into(t.body(), out);
}
inline void all_vars_into(const Formula& f, VarSet& out) {
    switch (f.kind()) {
        case Formula::Kind::Atomic:
            for (const auto& a : f.args()) all_vars_into(a, out);
            break;
        case Formula::Kind::Conj:
            all_vars_into(f.left(), out);
            all_vars_into(f.right(), out);
            break;
        case Formula::Kind::Neg: all_vars_into(f.inner(), out); break;
        case Formula::Kind::Exists:
            out.insert(f.bound_var());
            all_vars_into(f.body(), out);
            break;
    }
}

}  // namespace detail

/// Free variables in order of first free occurrence (left to right).
inline VarList free_vars(const Formula& f) {
    VarList out;
    std::vector<Variable> scope;
    detail::free_vars_into(f, out, scope);
    return out;
}
inline VarList free_vars(const Term& t) {
    VarList out;
    std::vector<Variable> scope;
    detail::free_vars_into(t, out, scope);
    return out;
}

template <class E>
bool is_free_in(const Variable& v, const E& e) {
    auto fv = free_vars(e);
    return std::find(fv.begin(), fv.end(), v) != fv.end();
}

/// Every variable occurring in the expression, free or bound (binder
/// positions included).
template <class E>
VarSet all_vars(const E& e) {
    VarSet out;
    detail::all_vars_into(e, out);
    return out;
}

/// The earliest variable (x0, x1, ...) outside `avoid`.
inline Variable fresh_variable(const VarSet& avoid) {
    for (std::uint64_t k = 0;; ++k) {
        Variable v = generated_variable(k);
        if (!avoid.count(v)) return v;
    }
}

/// The earliest variable with no occurrence in `e`.
template <class E>
Variable fresh_variable(const E& e) {
    return fresh_variable(all_vars(e));
}

// ---------------------------------------------------------------------------
// Alpha equivalence via a canonical key: bound variables are replaced by
// their binding level, free variables keep their names.

namespace detail {

struct AlphaKeyBuilder {
    std::vector<std::pair<Variable, std::size_t>> env;
    std::size_t level = 0;
    std::string out;

    void bind(const Variable& v) { env.emplace_back(v, level++); }
    void unbind(std::size_t n) {
        env.resize(env.size() - n);
        level -= n;
    }

    void var(const Variable& v) {
        for (auto it = env.rbegin(); it != env.rend(); ++it) {
            if (it->first == v) {
                out += '#';
                out += std::to_string(it->second);
                out += ' ';
                return;
            }
        }
        out += '$';
        out += v.name;
        out += ' ';
    }

    void term(const Term& t) {
        if (t.is_var()) {
            var(t.variable());
            return;
        }
        out += '[';
        out += std::to_string(t.bound().size());
        out += ':';
        for (const auto& b : t.bound()) bind(b);
        formula(t.body());
        unbind(t.bound().size());
        out += ']';
    }

    void formula(const Formula& f) {
        switch (f.kind()) {
            case Formula::Kind::Atomic:
                out += f.predicate().name;
                out += '/';
                out += std::to_string(f.predicate().arity);
                out += '(';
                for (const auto& a : f.args()) term(a);
                out += ')';
                break;
            case Formula::Kind::Conj:
                out += "&(";
                formula(f.left());
                out += ',';
                formula(f.right());
                out += ')';
                break;
            case Formula::Kind::Neg:
                out += "~(";
                formula(f.inner());
                out += ')';
                break;
            case Formula::Kind::Exists:
                out += "E(";
                bind(f.bound_var());
                formula(f.body());
                unbind(1);
                out += ')';
                break;
        }
    }
};

}  // namespace detail

inline std::string alpha_key(const Formula& f) {
    detail::AlphaKeyBuilder b;
    b.formula(f);
    return std::move(b.out);
}
inline std::string alpha_key(const Term& t) {
    detail::AlphaKeyBuilder b;
    b.term(t);
    return std::move(b.out);
}

inline bool alpha_equivalent(const Formula& a, const Formula& b) { return a == b || alpha_key(a) == alpha_key(b); }
inline bool alpha_equivalent(const Term& a, const Term& b) { return a == b || alpha_key(a) == alpha_key(b); }

// ---------------------------------------------------------------------------
// Substitution

class CaptureError : public std::runtime_error {
public:
    CaptureError(const Variable& binder, const Variable& target)
        : std::runtime_error("substitution for '" + target.name + "' is captured by binder '" + binder.name + "'"),
          binder_(binder) {}
    const Variable& binder() const { return binder_; }

private:
    Variable binder_;
};

namespace detail {

// First binder (in traversal order) that would capture a free variable of
// `fv` at a free occurrence of `v`.
struct CaptureFinder {
    const Variable& v;
    const VarList& fv;
    std::vector<Variable> scope;
    std::optional<Variable> culprit;

    bool bound_here(const Variable& x) const { return std::find(scope.begin(), scope.end(), x) != scope.end(); }

    void at_occurrence() {
        if (culprit) return;
        for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
            if (std::find(fv.begin(), fv.end(), *it) != fv.end()) {
                culprit = *it;
                return;
            }
        }
    }

    void term(const Term& t) {
        if (t.is_var()) {
            if (t.variable() == v && !bound_here(v)) at_occurrence();
            return;
        }
        auto n = scope.size();
        scope.insert(scope.end(), t.bound().begin(), t.bound().end());
        formula(t.body());
        scope.resize(n);
    }

    void formula(const Formula& f) {
        switch (f.kind()) {
            case Formula::Kind::Atomic:
                for (const auto& a : f.args()) term(a);
                break;
            case Formula::Kind::Conj:
                formula(f.left());
                formula(f.right());
                break;
            case Formula::Kind::Neg: formula(f.inner()); break;
            case Formula::Kind::Exists:
                scope.push_back(f.bound_var());
                formula(f.body());
                scope.pop_back();
                break;
        }
    }
};

inline Term replace_free(const Term& t, const Variable& v, const Term& by);

inline Formula replace_free(const Formula& f, const Variable& v, const Term& by) {
    switch (f.kind()) {
        case Formula::Kind::Atomic: {
            std::vector<Term> args;
            args.reserve(f.args().size());
            for (const auto& a : f.args()) args.push_back(replace_free(a, v, by));
            return Formula::atom(f.predicate(), std::move(args));
        }
        case Formula::Kind::Conj: return Formula::conj(replace_free(f.left(), v, by), replace_free(f.right(), v, by));
        case Formula::Kind::Neg: return Formula::neg(replace_free(f.inner(), v, by));
        case Formula::Kind::Exists:
            if (f.bound_var() == v) return f;
            return Formula::exists(f.bound_var(), replace_free(f.body(), v, by));
    }
    return f;
}

inline Term replace_free(const Term& t, const Variable& v, const Term& by) {
    if (t.is_var()) return t.variable() == v ? by : t;
    if (std::find(t.bound().begin(), t.bound().end(), v) != t.bound().end()) return t;
    return Term::abstract(replace_free(t.body(), v, by), t.bound());
}

}  // namespace detail

/// True iff no free variable of `t` becomes bound at a free occurrence of
/// `v` in `f`.
template <class E>
bool is_free_for(const Term& t, const Variable& v, const E& f) {
    auto fv = free_vars(t);
    if (fv.empty()) return true;
    detail::CaptureFinder finder{v, fv, {}, std::nullopt};
    if constexpr (std::is_same_v<E, Term>)
        finder.term(f);
    else
        finder.formula(f);
    return !finder.culprit.has_value();
}

/// Replaces every free occurrence of `v` in `f` by `t`. Throws CaptureError
/// naming the offending binder when `t` is not free for `v`.
template <class E>
E substitute(const E& f, const Variable& v, const Term& t) {
    auto fv = free_vars(t);
    if (!fv.empty()) {
        detail::CaptureFinder finder{v, fv, {}, std::nullopt};
        if constexpr (std::is_same_v<E, Term>)
            finder.term(f);
        else
            finder.formula(f);
        if (finder.culprit) throw CaptureError(*finder.culprit, v);
    }
    return detail::replace_free(f, v, t);
}

namespace detail {

inline Term subst_avoid(const Term& t, const Variable& v, const Term& by, const VarSet& by_free);

inline Formula subst_avoid(const Formula& f, const Variable& v, const Term& by, const VarSet& by_free) {
    switch (f.kind()) {
        case Formula::Kind::Atomic: {
            std::vector<Term> args;
            for (const auto& a : f.args()) args.push_back(subst_avoid(a, v, by, by_free));
            return Formula::atom(f.predicate(), std::move(args));
        }
        case Formula::Kind::Conj:
            return Formula::conj(subst_avoid(f.left(), v, by, by_free), subst_avoid(f.right(), v, by, by_free));
        case Formula::Kind::Neg: return Formula::neg(subst_avoid(f.inner(), v, by, by_free));
        case Formula::Kind::Exists: {
            if (f.bound_var() == v || !is_free_in(v, f.body())) return f;
            Variable b = f.bound_var();
            Formula body = f.body();
            if (by_free.count(b)) {
                VarSet avoid = all_vars(body);
                avoid.insert(by_free.begin(), by_free.end());
                avoid.insert(v);
                Variable nb = fresh_variable(avoid);
                body = replace_free(body, b, Term::var(nb));
                b = nb;
            }
            return Formula::exists(b, subst_avoid(body, v, by, by_free));
        }
    }
    return f;
}

inline Term subst_avoid(const Term& t, const Variable& v, const Term& by, const VarSet& by_free) {
    if (t.is_var()) return t.variable() == v ? by : t;
    const auto& bound = t.bound();
    if (std::find(bound.begin(), bound.end(), v) != bound.end() || !is_free_in(v, t.body())) return t;
    VarList nbound = bound;
    Formula body = t.body();
    VarSet avoid;
    bool renamed = false;
    for (auto& b : nbound) {
        if (!by_free.count(b)) continue;
        if (!renamed) {
            avoid = all_vars(body);
            avoid.insert(by_free.begin(), by_free.end());
            avoid.insert(bound.begin(), bound.end());
            avoid.insert(v);
            renamed = true;
        }
        Variable nb = fresh_variable(avoid);
        avoid.insert(nb);
        body = replace_free(body, b, Term::var(nb));
        b = nb;
    }
    return Term::abstract(subst_avoid(body, v, by, by_free), std::move(nbound));
}

}  // namespace detail

/// Capture-avoiding substitution: binders that would capture a free variable
/// of `t` are renamed to fresh variables first.
template <class E>
E substitute_avoiding(const E& f, const Variable& v, const Term& t) {
    auto fv = free_vars(t);
    VarSet by_free(fv.begin(), fv.end());
    return detail::subst_avoid(f, v, t, by_free);
}

// ---------------------------------------------------------------------------
// Occurrence-indexed replacement (used by the identity schema L): replace the
// free occurrences of v whose 1-based preorder index is in `which` by w.

class OccurrenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

struct OccurrenceReplacer {
    const Variable& v;
    const Variable& w;
    const std::set<int>& which;
    int counter = 0;
    std::vector<Variable> scope;

    bool bound_here(const Variable& x) const { return std::find(scope.begin(), scope.end(), x) != scope.end(); }

    Term term(const Term& t) {
        if (t.is_var()) {
            if (t.variable() != v || bound_here(v)) return t;
            ++counter;
            if (!which.count(counter)) return t;
            if (bound_here(w))
                throw OccurrenceError("'" + w.name + "' is not free for '" + v.name + "' at occurrence " +
                                      std::to_string(counter));
            return Term::var(w);
        }
        auto n = scope.size();
        scope.insert(scope.end(), t.bound().begin(), t.bound().end());
        Formula b = formula(t.body());
        scope.resize(n);
        return Term::abstract(std::move(b), t.bound());
    }

    Formula formula(const Formula& f) {
        switch (f.kind()) {
            case Formula::Kind::Atomic: {
                std::vector<Term> args;
                for (const auto& a : f.args()) args.push_back(term(a));
                return Formula::atom(f.predicate(), std::move(args));
            }
            case Formula::Kind::Conj: {
                Formula l = formula(f.left());
                Formula r = formula(f.right());
                return Formula::conj(std::move(l), std::move(r));
            }
            case Formula::Kind::Neg: return Formula::neg(formula(f.inner()));
            case Formula::Kind::Exists: {
                scope.push_back(f.bound_var());
                Formula b = formula(f.body());
                scope.pop_back();
                return Formula::exists(f.bound_var(), std::move(b));
            }
        }
        return f;
    }
};

}  // namespace detail

/// Number of free occurrences of v.
inline int count_free_occurrences(const Formula& f, const Variable& v) {
    static const std::set<int> none;
    detail::OccurrenceReplacer r{v, v, none, 0, {}};
    r.formula(f);
    return r.counter;
}

inline Formula replace_occurrences(const Formula& f, const Variable& v, const Variable& w, const std::set<int>& which) {
    detail::OccurrenceReplacer r{v, w, which, 0, {}};
    Formula out = r.formula(f);
    for (int k : which)
        if (k < 1 || k > r.counter)
            throw OccurrenceError("occurrence " + std::to_string(k) + " of '" + v.name + "' does not exist");
    return out;
}

// ---------------------------------------------------------------------------
// Miscellaneous structure queries

namespace detail {
inline void predicates_into(const Formula& f, std::set<Predicate>& out);
inline void predicates_into(const Term& t, std::set<Predicate>& out) {
    if (t.is_abstract()) predicates_into(t.body(), out);
}
inline void predicates_into(const Formula& f, std::set<Predicate>& out) {
    switch (f.kind()) {
        case Formula::Kind::Atomic:
            out.insert(f.predicate());
            for (const auto& a : f.args()) predicates_into(a, out);
            break;
        case Formula::Kind::Conj:
            predicates_into(f.left(), out);
            predicates_into(f.right(), out);
            break;
        case Formula::Kind::Neg: predicates_into(f.inner(), out); break;
        case Formula::Kind::Exists: predicates_into(f.body(), out); break;
    }
}
}  // namespace detail

template <class E>
std::set<Predicate> predicates_in(const E& e) {
    std::set<Predicate> out;
    detail::predicates_into(e, out);
    return out;
}

template <class E>
bool mentions_predicate(const E& e, const std::string& name) {
    for (const auto& p : predicates_in(e))
        if (p.name == name) return true;
    return false;
}

/// Node count.
inline std::size_t size_of(const Formula& f);
inline std::size_t size_of(const Term& t) { return t.is_var() ? 1 : 1 + size_of(t.body()); }
inline std::size_t size_of(const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::Atomic: {
            std::size_t n = 1;
            for (const auto& a : f.args()) n += size_of(a);
            return n;
        }
        case Formula::Kind::Conj: return 1 + size_of(f.left()) + size_of(f.right());
        case Formula::Kind::Neg: return 1 + size_of(f.inner());
        case Formula::Kind::Exists: return 1 + size_of(f.body());
    }
    return 1;
}

/// An abstract [F(v1,...,vn)]_{v1...vn}.
inline bool is_elementary(const Term& t) {
    if (!t.is_abstract() || !t.body().is_atomic()) return false;
    const auto& args = t.body().args();
    if (args.size() != t.bound().size()) return false;
    for (std::size_t i = 0; i < args.size(); ++i)
        if (!args[i].is_var() || args[i].variable() != t.bound()[i]) return false;
    return true;
}

inline Term elementary(const Predicate& p) {
    VarList vs;
    std::vector<Term> args;
    for (int i = 1; i <= p.arity; ++i) {
        vs.emplace_back("v" + std::to_string(i));
        args.push_back(Term::var(vs.back()));
    }
    return Term::abstract(Formula::atom(p, std::move(args)), std::move(vs));
}

}  // namespace prpkit
