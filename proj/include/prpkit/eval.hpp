// Denotation and truth in a finite model.
#pragma once

#include <functional>

#include "decomp.hpp"
#include "model.hpp"

namespace prpkit {

/// Raised when evaluation needs something the finite model does not have:
/// a missing table entry, an uninterpreted predicate or an unassigned variable.
class EvalFault : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Predicate name -> element of D_arity. `=` always denotes id.
using Interpretation = std::map<std::string, Elem>;
using Assignment = std::map<Variable, Elem>;

inline Elem interpret(const Model& M, const Interpretation& I, const Predicate& p) {
    if (p.is_identity()) return M.id;
    auto it = I.find(p.name);
    if (it == I.end()) throw EvalFault("predicate " + p.name + " is not interpreted");
    if (M.stratum[static_cast<std::size_t>(it->second)] != p.arity)
        throw EvalFault("predicate " + p.name + " is interpreted outside D_" + std::to_string(p.arity));
    return it->second;
}

inline Elem assigned(const Assignment& A, const Variable& v) {
    auto it = A.find(v);
    if (it == A.end()) throw EvalFault("variable " + v.name + " is not assigned");
    return it->second;
}

inline std::string op_name(const OpTag& t) {
    switch (t.op) {
        case DOp::N: return "n";
        case DOp::E: return "e";
        case DOp::U: return "u";
        case DOp::C: return "c";
        case DOp::I: return "i";
        case DOp::R: return "r";
        case DOp::A: return "a";
        case DOp::P: return "p" + std::to_string(t.m);
        default: return "";
    }
}

/// Evaluates a decomposition bottom-up through the operation tables.
inline Elem denote_expr(const Model& M, const Interpretation& I, const Assignment& A, const DecompExpr& e) {
    switch (e.op()) {
        case DOp::Elem: return interpret(M, I, e.predicate());
        case DOp::Var: return assigned(A, e.variable());
        default: break;
    }
    std::vector<Elem> in;
    for (std::size_t k = 0; k < e.arity(); ++k) in.push_back(denote_expr(M, I, A, e.child(k)));
    std::string op = op_name(e.tag());
    auto out = M.apply(op, in);
    if (!out) {
        std::string args;
        for (Elem x : in) args += (args.empty() ? "" : ",") + M.names[static_cast<std::size_t>(x)];
        throw EvalFault("no entry " + op + "(" + args + ")");
    }
    return *out;
}

inline Elem denote(const Model& M, const Interpretation& I, const Assignment& A, const Term& t) {
    if (t.is_var()) return assigned(A, t.variable());
    if (is_elementary(t)) return interpret(M, I, t.body().predicate());
    return denote_expr(M, I, A, decompose(t));
}

/// True iff G maps the denotation of [f] to T.
inline bool truth(const Model& M, const Interpretation& I, const Assignment& A, const Formula& f) {
    Elem d = denote(M, I, A, Term::abstract(f, {}));
    return M.true_in(M.G, d);
}

/// Tarskian evaluation: atoms by membership in G(I(F)), connectives
/// classically, quantifiers over all of D.
inline bool truth_compositional(const Model& M, const Interpretation& I, const Assignment& A, const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::Atomic: {
            Tuple t;
            for (const auto& a : f.args()) t.push_back(denote(M, I, A, a));
            return M.member(M.G, interpret(M, I, f.predicate()), t);
        }
        case Formula::Kind::Conj:
            return truth_compositional(M, I, A, f.left()) && truth_compositional(M, I, A, f.right());
        case Formula::Kind::Neg: return !truth_compositional(M, I, A, f.inner());
        case Formula::Kind::Exists: {
            Assignment B = A;
            for (std::size_t d = 0; d < M.size(); ++d) {
                B[f.bound_var()] = static_cast<Elem>(d);
                if (truth_compositional(M, I, B, f.body())) return true;
            }
            return false;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Auxiliary soundness lemmas, checked instance by instance.

struct LemmaStats {
    std::size_t checked = 0;
    std::size_t held = 0;
    std::size_t faulted = 0;
    std::vector<std::string> failures;
};

struct LemmaReport {
    std::map<std::string, LemmaStats> lemmas;
    bool ok() const {
        for (const auto& [name, s] : lemmas)
            if (!s.failures.empty()) return false;
        return true;
    }
};

namespace detail {
inline void tally(LemmaStats& s, const std::function<bool()>& check, const std::function<std::string()>& describe) {
    try {
        bool ok = check();
        ++s.checked;
        if (ok)
            ++s.held;
        else
            s.failures.push_back(describe());
    } catch (const EvalFault&) {
        ++s.faulted;
    }
}
}  // namespace detail

/// Checks, over `abstracts` and the auxiliary `terms`:
///   stratum       D([A]_{v1..vk}) lies in D_k
///   substitution  D_{A'}([B(v)]_x) = D_A([B(t)]_x) where A'(v) = D_A(t), t free for v
///   peeling       D([A(v)]_x) = p0(D([A(v)]_{x v}), A(v))             (type 1 only)
///   unique truth  D([t = t]) = D([t' = t'])                             (type 1 only)
inline LemmaReport check_aux_lemmas(const Model& M, const Interpretation& I, const Assignment& A,
                                    const std::vector<Term>& abstracts, const std::vector<Term>& terms) {
    LemmaReport rep;
    const bool type1 = is_type1(M);
    auto& stratum = rep.lemmas["stratum"];
    auto& subst = rep.lemmas["substitution"];
    auto& peel = rep.lemmas["peeling"];
    auto& unique = rep.lemmas["unique truth"];
    for (const auto& t : abstracts) {
        if (!t.is_abstract()) continue;
        detail::tally(
            stratum,
            [&] { return M.stratum[static_cast<std::size_t>(denote(M, I, A, t))] == static_cast<int>(t.bound().size()); },
            [&] { return "stratum: " + to_string(t); });
        for (const auto& v : free_vars(t)) {
            for (const auto& s : terms) {
                if (!is_free_for(s, v, t)) continue;
                detail::tally(
                    subst,
                    [&] {
                        Assignment B = A;
                        B[v] = denote(M, I, A, s);
                        return denote(M, I, B, t) == denote(M, I, A, substitute(t, v, s));
                    },
                    [&] { return "substitution: " + to_string(t) + " with " + v.name + " := " + to_string(s); });
            }
            if (!type1) continue;
            detail::tally(
                peel,
                [&] {
                    VarList wider = t.bound();
                    wider.push_back(v);
                    Elem inner = denote(M, I, A, Term::abstract(t.body(), wider));
                    auto out = M.apply("p0", {inner, assigned(A, v)});
                    if (!out) throw EvalFault("no p0 entry");
                    return denote(M, I, A, t) == *out;
                },
                [&] { return "peeling: " + to_string(t) + " at " + v.name; });
        }
    }
    if (type1)
        for (std::size_t a = 0; a < terms.size(); ++a)
            for (std::size_t b = a + 1; b < terms.size(); ++b)
                detail::tally(
                    unique,
                    [&] {
                        Term l = Term::abstract(Formula::identity(terms[a], terms[a]), {});
                        Term r = Term::abstract(Formula::identity(terms[b], terms[b]), {});
                        return denote(M, I, A, l) == denote(M, I, A, r);
                    },
                    [&] { return "unique truth: " + to_string(terms[a]) + " vs " + to_string(terms[b]); });
    return rep;
}

}  // namespace prpkit
