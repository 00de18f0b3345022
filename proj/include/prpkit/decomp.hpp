// Decomposition of intensional abstracts into operation trees
// over elementary abstracts, and its inverse.
#pragma once

#include <array>
#include <cassert>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "parser.hpp"
#include "syntax.hpp"

namespace prpkit {

// ---------------------------------------------------------------------------
// Categories

enum class Category {
    ComplexWithVacuous = 1,
    ComplexAllFree = 2,
    NonComplexVacuous = 3,
    PrimeReflection = 4,
    PrimeRelativizedPredication = 5,
    PrimeAbsolutePredication = 6,
    ElementaryUpToPermutation = 7,
};

inline const char* to_string(Category c) {
    switch (c) {
        case Category::ComplexWithVacuous: return "ComplexWithVacuous";
        case Category::ComplexAllFree: return "ComplexAllFree";
        case Category::NonComplexVacuous: return "NonComplexVacuous";
        case Category::PrimeReflection: return "PrimeReflection";
        case Category::PrimeRelativizedPredication: return "PrimeRelativizedPredication";
        case Category::PrimeAbsolutePredication: return "PrimeAbsolutePredication";
        case Category::ElementaryUpToPermutation: return "ElementaryUpToPermutation";
    }
    return "?";
}

inline std::ostream& operator<<(std::ostream& os, Category c) { return os << to_string(c); }

namespace detail {

inline bool contains(const VarList& xs, const Variable& v) { return std::find(xs.begin(), xs.end(), v) != xs.end(); }

inline void require_abstract(const Term& t) {
    if (!t.is_abstract()) throw std::invalid_argument("expected an abstract, got a variable");
}

/// Bound variables that do not occur free in the body, in bound-list order.
inline VarList vacuous_vars(const Term& t) {
    VarList out;
    for (const auto& v : t.bound())
        if (!is_free_in(v, t.body())) out.push_back(v);
    return out;
}

/// The bound variables in order of first free occurrence in the body.
inline VarList normalized_order(const Term& t) {
    VarList out;
    for (const auto& v : free_vars(t.body()))
        if (contains(t.bound(), v)) out.push_back(v);
    return out;
}

/// Index of the first argument that is not one of the bound variables, or
/// npos when every argument is.
inline std::size_t first_non_bound_arg(const Term& t) {
    const auto& args = t.body().args();
    for (std::size_t i = 0; i < args.size(); ++i)
        if (!args[i].is_var() || !contains(t.bound(), args[i].variable())) return i;
    return std::string::npos;
}

/// Free occurrences of bound variables in preorder, as (variable, argument index).
inline std::vector<std::pair<Variable, std::size_t>> bound_occurrences(const Term& t) {
    std::vector<std::pair<Variable, std::size_t>> out;
    const auto& args = t.body().args();
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::function<void(const Term&, std::vector<Variable>&)> walk_t;
        std::function<void(const Formula&, std::vector<Variable>&)> walk_f;
        walk_t = [&](const Term& s, std::vector<Variable>& scope) {
            if (s.is_var()) {
                if (contains(t.bound(), s.variable()) && !contains(scope, s.variable()))
                    out.emplace_back(s.variable(), i);
                return;
            }
            for (const auto& b : s.bound()) scope.push_back(b);
            walk_f(s.body(), scope);
            scope.resize(scope.size() - s.bound().size());
        };
        walk_f = [&](const Formula& f, std::vector<Variable>& scope) {
            switch (f.kind()) {
                case Formula::Kind::Atomic:
                    for (const auto& a : f.args()) walk_t(a, scope);
                    break;
                case Formula::Kind::Conj:
                    walk_f(f.left(), scope);
                    walk_f(f.right(), scope);
                    break;
                case Formula::Kind::Neg: walk_f(f.inner(), scope); break;
                case Formula::Kind::Exists:
                    scope.push_back(f.bound_var());
                    walk_f(f.body(), scope);
                    scope.pop_back();
                    break;
            }
        };
        std::vector<Variable> scope;
        walk_t(args[i], scope);
    }
    return out;
}

}  // namespace detail

/// Bound variables occurring free in more than one argument of the atomic
/// body, ordered by right-most occurrence, right-most first. The front
/// element is the one case 4 eliminates.
inline VarList reflected_vars(const Term& t) {
    detail::require_abstract(t);
    if (!t.body().is_atomic()) throw std::invalid_argument("reflected_vars: body is not atomic");
    auto occ = detail::bound_occurrences(t);
    std::map<Variable, std::set<std::size_t>> args_of;
    for (const auto& [v, i] : occ) args_of[v].insert(i);
    VarList out;
    for (auto it = occ.rbegin(); it != occ.rend(); ++it)
        if (args_of[it->first].size() > 1 && !detail::contains(out, it->first)) out.push_back(it->first);
    return out;
}

inline Category classify(const Term& t) {
    detail::require_abstract(t);
    const Formula& a = t.body();
    bool vacuous = !detail::vacuous_vars(t).empty();
    if (!a.is_atomic()) return vacuous ? Category::ComplexWithVacuous : Category::ComplexAllFree;
    if (vacuous) return Category::NonComplexVacuous;
    if (!reflected_vars(t).empty()) return Category::PrimeReflection;
    std::size_t k = detail::first_non_bound_arg(t);
    if (k == std::string::npos) return Category::ElementaryUpToPermutation;
    const Term& arg = a.args()[k];
    if (arg.is_abstract())
        for (const auto& v : free_vars(arg))
            if (detail::contains(t.bound(), v)) return Category::PrimeRelativizedPredication;
    return Category::PrimeAbsolutePredication;
}

// ---------------------------------------------------------------------------
// Permutations

/// Image sequence [m1..mn] of a bijection on {1..n}.
using Permutation = std::vector<int>;

enum class PermOp { Conv, Inv };

struct PermScript {
    int n = 0;
    std::vector<PermOp> ops;
    bool operator==(const PermScript&) const = default;
};

inline bool is_permutation(const Permutation& p) {
    std::vector<bool> seen(p.size() + 1, false);
    for (int m : p) {
        if (m < 1 || m > static_cast<int>(p.size()) || seen[m]) return false;
        seen[m] = true;
    }
    return true;
}

/// conv moves position i to i+1 and the last position to the front.
template <class T>
void apply_op(PermOp op, std::vector<T>& s) {
    if (s.size() < 2) return;
    if (op == PermOp::Conv)
        std::rotate(s.rbegin(), s.rbegin() + 1, s.rend());
    else
        std::swap(s[s.size() - 2], s[s.size() - 1]);
}

template <class T>
void apply_inverse_op(PermOp op, std::vector<T>& s) {
    if (s.size() < 2) return;
    if (op == PermOp::Conv)
        std::rotate(s.begin(), s.begin() + 1, s.end());
    else
        std::swap(s[s.size() - 2], s[s.size() - 1]);
}

template <class T>
void apply_script(const PermScript& script, std::vector<T>& s) {
    for (PermOp op : script.ops) apply_op(op, s);
}

/// Length k of the longest run 1,2,..,k occurring contiguously in `s`.
inline int initial_run(const Permutation& s) {
    auto it = std::find(s.begin(), s.end(), 1);
    int k = 0;
    while (it != s.end() && *it == k + 1) {
        ++k;
        ++it;
    }
    return k;
}

/// Greedy factoring: while the longest contiguous run 1..k is not the whole
/// sequence, emit inv if k+1 sits last and conv otherwise, applying the op.
/// Applying the script to p sorts it.
inline PermScript perm_decompose(const Permutation& p) {
    if (!is_permutation(p)) throw std::invalid_argument("perm_decompose: not a permutation");
    PermScript out{static_cast<int>(p.size()), {}};
    Permutation cur = p;
    const int n = out.n;
    for (int k = initial_run(cur); k < n; k = initial_run(cur)) {
        PermOp op = cur.back() == k + 1 ? PermOp::Inv : PermOp::Conv;
        out.ops.push_back(op);
        apply_op(op, cur);
        if (out.ops.size() > static_cast<std::size_t>(4 * n * n + 4))
            throw std::logic_error("perm_decompose: no progress");
    }
    return out;
}

/// The permutation a script was decomposed from: undo the ops in reverse
/// order starting at the identity.
inline Permutation compose(const PermScript& s) {
    Permutation p(s.n);
    for (int i = 0; i < s.n; ++i) p[i] = i + 1;
    for (auto it = s.ops.rbegin(); it != s.ops.rend(); ++it) apply_inverse_op(*it, p);
    return p;
}

inline std::string to_string(const PermScript& s) {
    std::string out;
    for (PermOp op : s.ops) {
        if (!out.empty()) out += ' ';
        out += op == PermOp::Conv ? "conv" : "inv";
    }
    return out.empty() ? "id" : out;
}

// ---------------------------------------------------------------------------
// Decomposition expressions

enum class DOp { Elem, Var, N, A, U, E, C, I, R, P };

/// Root tag of an expression. E_v tags compare equal for every v.
struct OpTag {
    DOp op = DOp::Elem;
    int m = 0;  // index of P_m
    bool operator==(const OpTag&) const = default;
};

inline std::string to_string(const OpTag& t) {
    switch (t.op) {
        case DOp::Elem: return "Elementary";
        case DOp::Var: return "Variable";
        case DOp::N: return "N";
        case DOp::A: return "A";
        case DOp::U: return "U";
        case DOp::E: return "E";
        case DOp::C: return "C";
        case DOp::I: return "I";
        case DOp::R: return "R";
        case DOp::P: return "P" + std::to_string(t.m);
    }
    return "?";
}

class DecompExpr {
public:
    static DecompExpr elem(Predicate p) {
        auto n = std::make_shared<Node>();
        n->op = DOp::Elem;
        n->pred = std::move(p);
        return DecompExpr(std::move(n));
    }
    static DecompExpr var(Variable v) {
        auto n = std::make_shared<Node>();
        n->op = DOp::Var;
        n->var = std::move(v);
        return DecompExpr(std::move(n));
    }
    /// N, U, C, I or R.
    static DecompExpr unary(DOp op, DecompExpr child) {
        if (op != DOp::N && op != DOp::U && op != DOp::C && op != DOp::I && op != DOp::R)
            throw std::invalid_argument("DecompExpr::unary: not a unary operator");
        auto n = std::make_shared<Node>();
        n->op = op;
        n->kids = {std::move(child)};
        return DecompExpr(std::move(n));
    }
    static DecompExpr e(Variable v, DecompExpr child) {
        auto n = std::make_shared<Node>();
        n->op = DOp::E;
        n->var = std::move(v);
        n->kids = {std::move(child)};
        return DecompExpr(std::move(n));
    }
    static DecompExpr a(DecompExpr l, DecompExpr r) {
        auto n = std::make_shared<Node>();
        n->op = DOp::A;
        n->kids = {std::move(l), std::move(r)};
        return DecompExpr(std::move(n));
    }
    static DecompExpr p(int m, DecompExpr l, DecompExpr r) {
        if (m < 0) throw std::invalid_argument("DecompExpr::p: negative index");
        auto n = std::make_shared<Node>();
        n->op = DOp::P;
        n->m = m;
        n->kids = {std::move(l), std::move(r)};
        return DecompExpr(std::move(n));
    }

    DOp op() const { return node_->op; }
    OpTag tag() const { return {node_->op, node_->m}; }
    int m() const { return node_->m; }
    const Predicate& predicate() const { return node_->pred; }
    const Variable& variable() const { return node_->var; }
    std::size_t arity() const { return node_->kids.size(); }
    const DecompExpr& child(std::size_t i) const { return node_->kids.at(i); }

    /// Structural equality; the variable recorded by E_v is not compared.
    bool operator==(const DecompExpr& o) const {
        if (node_ == o.node_) return true;
        if (tag() != o.tag() || arity() != o.arity()) return false;
        if (op() == DOp::Elem && predicate() != o.predicate()) return false;
        if (op() == DOp::Var && variable() != o.variable()) return false;
        for (std::size_t i = 0; i < arity(); ++i)
            if (!(child(i) == o.child(i))) return false;
        return true;
    }

    std::size_t size() const {
        std::size_t n = 1;
        for (const auto& k : node_->kids) n += k.size();
        return n;
    }

private:
    struct Node {
        DOp op = DOp::Elem;
        int m = 0;
        Predicate pred;
        Variable var;
        std::vector<DecompExpr> kids;
    };
    explicit DecompExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// Prefix notation, e.g. `N(elem F/1)` or `P0(elem F/1, z)`.
inline std::string to_string(const DecompExpr& e) {
    switch (e.op()) {
        case DOp::Elem: return "elem " + e.predicate().name + "/" + std::to_string(e.predicate().arity);
        case DOp::Var: return e.variable().name;
        case DOp::E: return "E_" + e.variable().name + "(" + to_string(e.child(0)) + ")";
        default: break;
    }
    std::string out = to_string(e.tag()) + "(";
    for (std::size_t i = 0; i < e.arity(); ++i) {
        if (i) out += ", ";
        out += to_string(e.child(i));
    }
    return out + ")";
}

inline std::ostream& operator<<(std::ostream& os, const DecompExpr& e) { return os << to_string(e); }

// ---------------------------------------------------------------------------
// Decomposition

struct TraceStep {
    int depth = 0;
    Category category{};
    std::string term;
};
using Trace = std::vector<TraceStep>;

namespace detail {

inline VarList concat(VarList a, const VarList& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

inline VarList without(const VarList& xs, const Variable& v) {
    VarList out;
    for (const auto& x : xs)
        if (x != v) out.push_back(x);
    return out;
}

inline Formula with_arg(const Formula& atom, std::size_t k, Term t) {
    std::vector<Term> args = atom.args();
    args[k] = std::move(t);
    return Formula::atom(atom.predicate(), std::move(args));
}

class Decomposer {
public:
    explicit Decomposer(Trace* trace) : trace_(trace) {}

    // Lexicographic: body size, reflection excess, arguments that are not
    // bound variables, vacuous bound variables, not normalized.
    using Measure = std::tuple<std::size_t, int, int, int, int>;

    static Measure measure(const Term& t) {
        const Formula& a = t.body();
        int excess = 0, nonbound = 0;
        if (a.is_atomic()) {
            std::map<Variable, std::set<std::size_t>> args_of;
            for (const auto& [v, i] : bound_occurrences(t)) args_of[v].insert(i);
            for (const auto& [v, s] : args_of) excess += static_cast<int>(s.size()) - 1;
            for (const auto& arg : a.args())
                if (!arg.is_var() || !contains(t.bound(), arg.variable())) ++nonbound;
        }
        int vac = static_cast<int>(vacuous_vars(t).size());
        int unnormalized = normalized_order(t) != t.bound() ? 1 : 0;
        return {size_of(a), excess, nonbound, vac, unnormalized};
    }

    DecompExpr run(const Term& t, const Measure* parent = nullptr) {
        if (t.is_var()) return DecompExpr::var(t.variable());
        Measure m = measure(t);
        if (parent && !(m < *parent)) throw std::logic_error("decompose: measure did not decrease at " + to_string(t));
        Category cat = classify(t);
        if (trace_) trace_->push_back({depth_, cat, to_string(t)});
        ++depth_;
        DecompExpr out = dispatch(t, cat, m);
        --depth_;
        return out;
    }

    /// Wraps `e`, built for bound order `from`, in the C/I nodes that carry
    /// it to bound order `to`.
    static DecompExpr permute(DecompExpr e, const VarList& from, const VarList& to) {
        Permutation r;
        for (const auto& v : from) r.push_back(static_cast<int>(std::find(to.begin(), to.end(), v) - to.begin()) + 1);
        PermScript script = perm_decompose(r);
        for (PermOp op : script.ops) e = DecompExpr::unary(op == PermOp::Conv ? DOp::C : DOp::I, std::move(e));
        return e;
    }

private:
    DecompExpr dispatch(const Term& t, Category cat, const Measure& m) {
        const Formula& a = t.body();
        const VarList& xs = t.bound();
        switch (cat) {
            case Category::ComplexWithVacuous:
            case Category::NonComplexVacuous: {
                VarList ys = normalized_order(t), zs = vacuous_vars(t);
                DecompExpr e = run(Term::abstract(a, ys), &m);
                for (const auto& z : zs) e = DecompExpr::e(z, std::move(e));
                return permute(std::move(e), concat(ys, zs), xs);
            }
            case Category::ComplexAllFree: {
                VarList norm = normalized_order(t);
                if (norm != xs) return permute(run(Term::abstract(a, norm), &m), norm, xs);
                switch (a.kind()) {
                    case Formula::Kind::Conj:
                        return DecompExpr::a(run(Term::abstract(a.left(), xs), &m), run(Term::abstract(a.right(), xs), &m));
                    case Formula::Kind::Neg: return DecompExpr::unary(DOp::N, run(Term::abstract(a.inner(), xs), &m));
                    case Formula::Kind::Exists:
                        return DecompExpr::unary(DOp::U, run(Term::abstract(a.body(), concat(xs, {a.bound_var()})), &m));
                    case Formula::Kind::Atomic: break;
                }
                throw std::logic_error("decompose: atomic body in a complex category");
            }
            case Category::PrimeReflection: {
                Variable v = reflected_vars(t).front();
                std::size_t k = 0;
                for (const auto& [x, i] : bound_occurrences(t))
                    if (x == v) k = i;
                Variable w = fresh_variable(a);
                VarList ys = without(normalized_order(t), v);
                Formula body = with_arg(a, k, substitute(a.args()[k], v, Term::var(w)));
                DecompExpr inner = run(Term::abstract(body, concat(ys, {v, w})), &m);
                return permute(DecompExpr::unary(DOp::R, std::move(inner)), concat(ys, {v}), xs);
            }
            case Category::PrimeAbsolutePredication: {
                std::size_t k = first_non_bound_arg(t);
                Variable v = fresh_variable(a);
                VarList norm = normalized_order(t);
                const Term& arg = a.args()[k];
                DecompExpr left = run(Term::abstract(with_arg(a, k, Term::var(v)), concat(norm, {v})), &m);
                DecompExpr right = arg.is_var() ? DecompExpr::var(arg.variable()) : run(arg, &m);
                return permute(DecompExpr::p(0, std::move(left), std::move(right)), norm, xs);
            }
            case Category::PrimeRelativizedPredication: {
                std::size_t k = first_non_bound_arg(t);
                const Term& arg = a.args()[k];
                VarList zs;
                for (const auto& x : free_vars(arg))
                    if (contains(xs, x)) zs.push_back(x);
                Variable v = fresh_variable(a);
                VarList norm = normalized_order(t);
                auto pos = std::find(norm.begin(), norm.end(), zs.front());
                if (static_cast<std::size_t>(norm.end() - pos) < zs.size() || !std::equal(zs.begin(), zs.end(), pos))
                    throw std::logic_error("decompose: relativized variables not contiguous in " + to_string(t));
                VarList x2(norm.begin(), pos), x3(pos + static_cast<std::ptrdiff_t>(zs.size()), norm.end());
                DecompExpr left = run(Term::abstract(with_arg(a, k, Term::var(v)), concat(concat(x2, x3), {v})), &m);
                DecompExpr right = run(Term::abstract(arg.body(), concat(arg.bound(), zs)), &m);
                return permute(DecompExpr::p(static_cast<int>(zs.size()), std::move(left), std::move(right)),
                               concat(concat(x2, x3), zs), xs);
            }
            case Category::ElementaryUpToPermutation: {
                VarList order;
                for (const auto& arg : a.args()) order.push_back(arg.variable());
                return permute(DecompExpr::elem(a.predicate()), order, xs);
            }
        }
        throw std::logic_error("decompose: unknown category");
    }

    Trace* trace_;
    int depth_ = 0;
};

}  // namespace detail

/// The unique decomposition of a term. A variable decomposes to itself.
inline DecompExpr decompose(const Term& t, Trace* trace = nullptr) { return detail::Decomposer(trace).run(t); }

inline OpTag first_operation(const Term& t) { return t.is_var() ? OpTag{DOp::Var, 0} : decompose(t).tag(); }

// ---------------------------------------------------------------------------
// Reconstruction

class IllFormedExpr : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

/// Renames the bound variables of `t` that lie in `avoid` to fresh ones.
inline Term freshen(const Term& t, const VarSet& avoid) {
    if (t.is_var()) return t;
    VarSet used = all_vars(t);
    used.insert(avoid.begin(), avoid.end());
    VarList bound = t.bound();
    Formula body = t.body();
    for (auto& b : bound) {
        if (!avoid.count(b)) continue;
        Variable nb = fresh_variable(used);
        used.insert(nb);
        body = substitute(body, b, Term::var(nb));
        b = nb;
    }
    return Term::abstract(std::move(body), std::move(bound));
}

/// Body of `t` with its bound variables renamed to `names`, which must not
/// occur free in `t`.
inline Formula body_over(const Term& t, const VarList& names) {
    VarSet ns(names.begin(), names.end());
    Term f = freshen(t, ns);
    Formula body = f.body();
    for (std::size_t i = 0; i < names.size(); ++i) body = substitute_avoiding(body, f.bound()[i], Term::var(names[i]));
    return body;
}

inline Term expect_abstract(const Term& t, std::size_t min_arity, const char* op) {
    if (!t.is_abstract() || t.bound().size() < min_arity)
        throw IllFormedExpr(std::string(op) + " needs an abstract of arity at least " + std::to_string(min_arity));
    return t;
}

}  // namespace detail

/// Inverse of decompose up to alpha-equivalence.
inline Term reconstruct(const DecompExpr& e) {
    using namespace detail;
    switch (e.op()) {
        case DOp::Elem: return elementary(e.predicate());
        case DOp::Var: return Term::var(e.variable());
        case DOp::N: {
            Term t = expect_abstract(reconstruct(e.child(0)), 0, "N");
            return Term::abstract(Formula::neg(t.body()), t.bound());
        }
        case DOp::A: {
            Term r = expect_abstract(reconstruct(e.child(1)), 0, "A");
            Term l = expect_abstract(reconstruct(e.child(0)), 0, "A");
            if (l.bound().size() != r.bound().size()) throw IllFormedExpr("A needs abstracts of equal arity");
            auto rf = free_vars(r);
            l = freshen(l, VarSet(rf.begin(), rf.end()));
            return Term::abstract(Formula::conj(l.body(), body_over(r, l.bound())), l.bound());
        }
        case DOp::U: {
            Term t = expect_abstract(reconstruct(e.child(0)), 1, "U");
            VarList xs = t.bound();
            Variable v = xs.back();
            xs.pop_back();
            return Term::abstract(Formula::exists(v, t.body()), xs);
        }
        case DOp::E: {
            Term t = expect_abstract(reconstruct(e.child(0)), 0, "E");
            Variable v = e.variable();
            if (contains(t.bound(), v) || is_free_in(v, t.body())) {
                VarSet used = all_vars(t);
                v = fresh_variable(used);
            }
            return Term::abstract(t.body(), concat(t.bound(), {v}));
        }
        case DOp::C:
        case DOp::I: {
            Term t = expect_abstract(reconstruct(e.child(0)), e.op() == DOp::C ? 1 : 2, e.op() == DOp::C ? "C" : "I");
            VarList xs = t.bound();
            apply_op(e.op() == DOp::C ? PermOp::Conv : PermOp::Inv, xs);
            return Term::abstract(t.body(), xs);
        }
        case DOp::R: {
            Term t = expect_abstract(reconstruct(e.child(0)), 2, "R");
            VarList xs = t.bound();
            Variable w = xs.back();
            xs.pop_back();
            return Term::abstract(substitute_avoiding(t.body(), w, Term::var(xs.back())), xs);
        }
        case DOp::P: {
            const int m = e.m();
            Term l = expect_abstract(reconstruct(e.child(0)), 1, "P");
            Term r = reconstruct(e.child(1));
            if (m > 0) r = expect_abstract(r, static_cast<std::size_t>(m), "P_m argument");
            r = freshen(r, all_vars(l));
            l = freshen(l, all_vars(r));
            VarList zs, ys;
            Term s = r;
            if (m > 0) {
                ys.assign(r.bound().begin(), r.bound().end() - m);
                zs.assign(r.bound().end() - m, r.bound().end());
                s = Term::abstract(r.body(), ys);
            }
            VarList us = l.bound();
            Variable v = us.back();
            us.pop_back();
            return Term::abstract(substitute_avoiding(l.body(), v, s), concat(us, zs));
        }
    }
    throw IllFormedExpr("unknown operator");
}

}  // namespace prpkit
