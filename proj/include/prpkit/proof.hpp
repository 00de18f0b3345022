// Hilbert-style proof checking for T1, its alternative axiomatization, T2 and
// T2 with the predication axiom.
//
// Formulas carry only primitive constructors: the parser expands ->, <->,
// v|, A, # and ? on the spot, so a schema instance is checked by rebuilding
// it from its meta-variables with the same constructors and comparing up to
// alpha-equivalence.
#pragma once

#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "decomp.hpp"
#include "parser.hpp"

namespace prpkit {

/// Box and diamond are expanded when a formula is built, so every Formula
/// is already in expanded form.
inline Formula expand_defs(const Formula& f) { return f; }

// ---------------------------------------------------------------------------
// Destructors for the derived connectives

namespace match {

/// A -> B is ~(A & ~B).
inline std::optional<std::pair<Formula, Formula>> implication(const Formula& f) {
    if (!f.is_neg() || !f.inner().is_conj() || !f.inner().right().is_neg()) return std::nullopt;
    return std::make_pair(f.inner().left(), f.inner().right().inner());
}

/// A <-> B is (A -> B) & (B -> A).
inline std::optional<std::pair<Formula, Formula>> biconditional(const Formula& f) {
    if (!f.is_conj()) return std::nullopt;
    auto l = implication(f.left()), r = implication(f.right());
    if (!l || !r || l->first != r->second || l->second != r->first) return std::nullopt;
    return l;
}

/// #A is [A] = [[A] = [A]].
inline std::optional<Formula> necessity(const Formula& f) {
    if (!f.is_atomic() || !f.predicate().is_identity()) return std::nullopt;
    const Term& l = f.args()[0];
    if (!l.is_abstract() || !l.bound().empty()) return std::nullopt;
    Formula a = l.body();
    if (box(a) != f) return std::nullopt;
    return a;
}

/// ?A is ~#~A.
inline std::optional<Formula> possibility(const Formula& f) {
    if (!f.is_neg()) return std::nullopt;
    auto b = necessity(f.inner());
    if (!b || !b->is_neg()) return std::nullopt;
    return b->inner();
}

/// Av.A, which is ~Ev.~A, or ~Ev.B when A = ~B. Returns the quantified
/// variable and every body A with forall(v, A) == f.
inline std::optional<std::pair<Variable, std::vector<Formula>>> universal(const Formula& f) {
    if (!f.is_neg() || !f.inner().is_exists()) return std::nullopt;
    const Variable& v = f.inner().bound_var();
    const Formula& b = f.inner().body();
    std::vector<Formula> bodies;
    if (b.is_neg() && forall(v, b.inner()) == f) bodies.push_back(b.inner());
    if (forall(v, Formula::neg(b)) == f) bodies.push_back(Formula::neg(b));
    return std::make_pair(v, bodies);
}

/// t = s.
inline std::optional<std::pair<Term, Term>> identity(const Formula& f) {
    if (!f.is_atomic() || !f.predicate().is_identity()) return std::nullopt;
    return std::make_pair(f.args()[0], f.args()[1]);
}

}  // namespace match

// ---------------------------------------------------------------------------
// Tautologies

namespace detail {

struct Skeleton {
    std::map<std::string, int> letters;

    int letter(const Formula& f) {
        auto key = alpha_key(f);
        auto it = letters.find(key);
        if (it != letters.end()) return it->second;
        int n = static_cast<int>(letters.size());
        letters.emplace(key, n);
        return n;
    }
    void collect(const Formula& f) {
        if (f.is_conj()) {
            collect(f.left());
            collect(f.right());
        } else if (f.is_neg()) {
            collect(f.inner());
        } else {
            letter(f);
        }
    }
    bool eval(const Formula& f, std::uint32_t row) {
        if (f.is_conj()) return eval(f.left(), row) && eval(f.right(), row);
        if (f.is_neg()) return !eval(f.inner(), row);
        return (row >> letter(f)) & 1u;
    }
};

}  // namespace detail

inline constexpr int kMaxTautologyLetters = 24;

/// True iff f is an instance of a propositional tautology: atoms and
/// existential formulas are letters (alpha-equivalent ones share a letter),
/// & and ~ are read classically.
inline bool tautology_check(const Formula& f, std::string* why = nullptr) {
    detail::Skeleton s;
    s.collect(f);
    if (s.letters.size() > kMaxTautologyLetters) {
        if (why) *why = "too many propositional letters (" + std::to_string(s.letters.size()) + ")";
        return false;
    }
    const std::uint32_t rows = 1u << s.letters.size();
    for (std::uint32_t row = 0; row < rows; ++row)
        if (!s.eval(f, row)) {
            if (why) *why = "false under a truth assignment to its " + std::to_string(s.letters.size()) + " letters";
            return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Systems and schemas

enum class System { T1, T1Alt, T2, T2PredAx };

inline std::string to_string(System s) {
    switch (s) {
        case System::T1: return "T1";
        case System::T1Alt: return "T1Alt";
        case System::T2: return "T2";
        case System::T2PredAx: return "T2PredAx";
    }
    return "";
}

inline std::optional<System> parse_system(const std::string& s) {
    for (System x : {System::T1, System::T1Alt, System::T2, System::T2PredAx})
        if (to_string(x) == s) return x;
    return std::nullopt;
}

inline bool is_t1_family(System s) { return s == System::T1 || s == System::T1Alt; }

/// Axiom schemas available in a system (tautologies are checked separately).
inline std::vector<std::string> schemas_of(System s) {
    std::vector<std::string> common{"Ins", "QImp", "Id", "Len", "Alpha"};
    std::vector<std::string> extra;
    switch (s) {
        case System::T1: extra = {"L", "B", "T", "K", "S5"}; break;
        case System::T1Alt: extra = {"L'", "B1", "B2", "T", "K", "S5'"}; break;
        case System::T2: extra = {"L", "Ext", "Dist", "Head1", "Head2", "NonCirc"}; break;
        case System::T2PredAx: extra = {"L", "Ext", "Dist", "Head1", "Head2", "NonCirc", "Pred"}; break;
    }
    common.insert(common.end(), extra.begin(), extra.end());
    return common;
}

/// Witness values as written in a justification, e.g. t="[F(x)]_{x}" or occ=2,3.
using Witnesses = std::map<std::string, std::string>;

/// Parsing context shared by the formulas and witnesses of one script.
struct ProofContext {
    Signature sig;
    ParseOptions opts;
    /// Formulas A(u) whose predication instances T2PredAx accepts.
    std::vector<std::pair<Variable, Formula>> predication;
};

/// The designated comprehension formula NNu & Ey.(NNy & y = S(u)).
inline std::pair<Variable, Formula> designated_predication() {
    Variable u("u");
    Term tu = Term::var(u);
    Variable y("y");
    Term ty = Term::var(y);
    Formula body = Formula::conj(arith::natural(tu),
                                 Formula::exists(y, Formula::conj(arith::natural(ty), Formula::identity(ty, arith::succ(tu)))));
    return {u, body};
}

class WitnessError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

class WitnessReader {
public:
    WitnessReader(const Witnesses& w, const ProofContext& ctx) : w_(w), ctx_(ctx) {}

    const std::string& raw(const std::string& key) const {
        auto it = w_.find(key);
        if (it == w_.end()) throw WitnessError("missing witness " + key);
        return it->second;
    }
    Term term(const std::string& key) const {
        Signature sig = ctx_.sig;
        try {
            return parse_term(raw(key), sig, ctx_.opts);
        } catch (const ParseError& e) {
            throw WitnessError("witness " + key + ": " + e.what());
        }
    }
    Variable variable(const std::string& key) const {
        Term t = term(key);
        if (!t.is_var()) throw WitnessError("witness " + key + " must be a variable");
        return t.variable();
    }
    std::set<int> occurrences(const std::string& key) const {
        std::set<int> out;
        std::stringstream ss(raw(key));
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t used = 0;
                int k = std::stoi(item, &used);
                if (used != item.size()) throw std::invalid_argument(item);
                out.insert(k);
            } catch (const std::exception&) {
                throw WitnessError("witness " + key + ": '" + item + "' is not an occurrence number");
            }
        }
        return out;
    }

private:
    const Witnesses& w_;
    const ProofContext& ctx_;
};

inline bool same_instance(const Formula& built, const Formula& f) { return alpha_equivalent(built, f); }

inline std::optional<Variable> as_var(const Term& t) {
    if (!t.is_var()) return std::nullopt;
    return t.variable();
}

}  // namespace detail

/// Checks that f is an instance of `schema` in `system` under the given
/// witnesses. Returns an empty string on success, otherwise the first failed
/// condition.
inline std::string match_axiom(System system, const std::string& schema, const Formula& f, const Witnesses& w,
                               const ProofContext& ctx) {
    auto avail = schemas_of(system);
    if (std::find(avail.begin(), avail.end(), schema) == avail.end())
        return "schema " + schema + " is not part of " + to_string(system);
    detail::WitnessReader wit(w, ctx);
    using detail::same_instance;
    try {
        if (schema == "Ins") {
            auto imp = match::implication(f);
            if (!imp) return "not an implication";
            auto u = match::universal(imp->first);
            if (!u) return "antecedent is not universally quantified";
            Term t = wit.term("t");
            std::string reason = "consequent is not the instance at " + to_string(t);
            for (const auto& a : u->second) {
                if (!is_free_for(t, u->first, a)) {
                    reason = to_string(t) + " is not free for " + u->first.name;
                    continue;
                }
                if (same_instance(substitute(a, u->first, t), imp->second)) return "";
            }
            return reason;
        }
        if (schema == "QImp") {
            Variable v = wit.variable("v");
            auto imp = match::implication(f);
            if (!imp) return "not an implication";
            auto rhs = match::implication(imp->second);
            if (!rhs) return "consequent is not an implication";
            const Formula& a = rhs->first;
            auto u = match::universal(rhs->second);
            if (!u || u->first != v) return "consequent does not end in A" + v.name + ".B";
            if (is_free_in(v, a)) return v.name + " is free in the antecedent A";
            for (const auto& b : u->second)
                if (same_instance(implies(forall(v, implies(a, b)), implies(a, forall(v, b))), f)) return "";
            return "antecedent is not A" + v.name + ".(A -> B)";
        }
        if (schema == "Id") {
            auto id = match::identity(f);
            if (!id) return "not an identity";
            if (!id->first.is_var() || id->first != id->second) return "not of the form v = v";
            return "";
        }
        if (schema == "L" || schema == "L'") {
            auto imp = match::implication(f);
            if (!imp) return "not an implication";
            auto id = match::identity(imp->first);
            if (!id) return "antecedent is not an identity";
            auto v = detail::as_var(id->first), x = detail::as_var(id->second);
            if (!v || !x) return "antecedent must identify two variables";
            auto body = schema == "L" ? match::biconditional(imp->second) : match::implication(imp->second);
            if (!body) return schema == "L" ? "consequent is not a biconditional" : "consequent is not an implication";
            if (schema == "L'" && !body->first.is_atomic()) return "A must be atomic";
            auto occ = wit.occurrences("occ");
            Formula replaced = replace_occurrences(body->first, *v, *x, occ);
            if (!same_instance(replaced, body->second))
                return "right side is not the left side with the chosen occurrences of " + v->name + " replaced by " +
                       x->name;
            return "";
        }
        if (schema == "Len") {
            if (!f.is_neg()) return "not a negated identity";
            auto id = match::identity(f.inner());
            if (!id || !id->first.is_abstract() || !id->second.is_abstract()) return "not a negated identity of abstracts";
            if (id->first.bound().size() == id->second.bound().size()) return "abstracts have the same length";
            return "";
        }
        if (schema == "Alpha") {
            auto id = match::identity(f);
            if (!id || !id->first.is_abstract() || !id->second.is_abstract()) return "not an identity of abstracts";
            if (!alpha_equivalent(id->first, id->second)) return "abstracts are not alpha-equivalent";
            return "";
        }
        if (schema == "B") {
            auto bic = match::biconditional(f);
            if (!bic) return "not a biconditional";
            auto id = match::identity(bic->first);
            if (!id || !id->first.is_abstract() || !id->second.is_abstract()) return "left side is not an identity of abstracts";
            if (id->first.bound() != id->second.bound()) return "abstracts do not share their variables";
            Formula inst = iff(bic->first, box(forall_list(id->first.bound(), iff(id->first.body(), id->second.body()))));
            return same_instance(inst, f) ? "" : "right side is not #Ax.(A <-> B)";
        }
        if (schema == "T") {
            auto imp = match::implication(f);
            if (!imp) return "not an implication";
            return same_instance(box(imp->second), imp->first) ? "" : "not of the form #A -> A";
        }
        if (schema == "K") {
            auto imp = match::implication(f);
            if (!imp) return "not an implication";
            auto rhs = match::implication(imp->second);
            if (!rhs) return "consequent is not an implication";
            auto a = match::necessity(rhs->first), b = match::necessity(rhs->second);
            if (!a || !b) return "consequent is not #A -> #B";
            return same_instance(implies(box(implies(*a, *b)), imp->second), f) ? "" : "antecedent is not #(A -> B)";
        }
        if (schema == "S5") {
            auto imp = match::implication(f);
            if (!imp) return "not an implication";
            auto a = match::possibility(imp->first);
            if (!a) return "antecedent is not ?A";
            return same_instance(box(diamond(*a)), imp->second) ? "" : "consequent is not #?A";
        }
        if (schema == "B1") {
            auto bic = match::biconditional(f);
            if (!bic) return "not a biconditional";
            auto id = match::identity(bic->second);
            if (!id || !id->first.is_abstract() || !id->second.is_abstract() || !id->first.bound().empty() ||
                !id->second.bound().empty())
                return "right side is not [A] = [B]";
            return same_instance(box(iff(id->first.body(), id->second.body())), bic->first) ? ""
                                                                                            : "left side is not #(A <-> B)";
        }
        if (schema == "B2") {
            Variable v = wit.variable("v");
            auto bic = match::biconditional(f);
            if (!bic) return "not a biconditional";
            auto id = match::identity(bic->second);
            if (!id || !id->first.is_abstract() || !id->second.is_abstract()) return "right side is not an identity of abstracts";
            const VarList& xv = id->first.bound();
            if (xv != id->second.bound() || xv.empty() || xv.back() != v)
                return "right side abstracts must share variables ending in " + v.name;
            VarList xs(xv.begin(), xv.end() - 1);
            Formula left = forall(v, Formula::identity(Term::abstract(id->first.body(), xs), Term::abstract(id->second.body(), xs)));
            return same_instance(iff(left, bic->second), f) ? "" : "left side is not A" + v.name + ".[A]_x = [B]_x";
        }
        if (schema == "S5'") {
            auto imp = match::implication(f);
            if (!imp || !imp->first.is_neg()) return "not of the form ~x = y -> #~x = y";
            auto id = match::identity(imp->first.inner());
            if (!id || !id->first.is_var() || !id->second.is_var()) return "antecedent must be ~x = y for variables";
            return same_instance(box(imp->first), imp->second) ? "" : "consequent is not #~x = y";
        }
        if (schema == "Ext") {
            auto imp = match::implication(f);
            if (!imp) return "not an implication";
            auto id = match::identity(imp->first);
            if (!id || !id->first.is_abstract() || !id->second.is_abstract()) return "antecedent is not an identity of abstracts";
            if (id->first.bound() != id->second.bound()) return "abstracts do not share their variables";
            return same_instance(iff(id->first.body(), id->second.body()), imp->second) ? "" : "consequent is not A <-> B";
        }
        if (schema == "Dist") {
            if (!f.is_neg()) return "not a negated identity";
            auto id = match::identity(f.inner());
            if (!id || !id->first.is_abstract() || !id->second.is_abstract()) return "not a negated identity of abstracts";
            if (is_elementary(id->first) || is_elementary(id->second)) return "both abstracts must be non-elementary";
            OpTag a = first_operation(id->first), b = first_operation(id->second);
            if (a == b) return "both abstracts have head " + to_string(a);
            return "";
        }
        if (schema == "Head1" || schema == "Head2") {
            auto bic = match::biconditional(f);
            if (!bic) return "not a biconditional";
            auto outer = match::identity(bic->first);
            if (!outer) return "left side is not an identity";
            if (schema == "Head1") {
                auto inner = match::identity(bic->second);
                if (!inner || !inner->first.is_abstract() || !inner->second.is_abstract())
                    return "right side is not an identity of abstracts";
                DecompExpr a = decompose(inner->first), b = decompose(inner->second);
                if (a.tag() != b.tag()) return "heads differ";
                if (a.arity() != 1) return "head " + to_string(a.tag()) + " is not unary";
                if (!(decompose(outer->first) == a.child(0)) || !(decompose(outer->second) == b.child(0)))
                    return "left side does not identify the arguments of the heads";
                return "";
            }
            if (!outer->first.is_abstract() || !outer->second.is_abstract()) return "left side is not an identity of abstracts";
            if (!bic->second.is_conj()) return "right side is not a conjunction";
            auto l = match::identity(bic->second.left()), r = match::identity(bic->second.right());
            if (!l || !r) return "right side is not a conjunction of identities";
            DecompExpr a = decompose(outer->first), b = decompose(outer->second);
            if (a.tag() != b.tag()) return "heads differ";
            if (a.arity() != 2) return "head " + to_string(a.tag()) + " is not binary";
            if (!(decompose(l->first) == a.child(0)) || !(decompose(l->second) == b.child(0)) ||
                !(decompose(r->first) == a.child(1)) || !(decompose(r->second) == b.child(1)))
                return "right side does not identify the arguments of the heads";
            return "";
        }
        if (schema == "NonCirc") {
            std::string F = wit.raw("F"), G = wit.raw("G");
            auto imp = match::implication(f);
            if (!imp || !imp->second.is_neg()) return "not of the form t = s -> ~u = v";
            auto ts = match::identity(imp->first), uv = match::identity(imp->second.inner());
            if (!ts || !uv) return "not of the form t = s -> ~u = v";
            auto pred_of = [](const Term& t) { return t.body().predicate().name; };
            if (!is_elementary(ts->first) || pred_of(ts->first) != F) return "t is not the elementary abstract of " + F;
            if (!is_elementary(uv->first) || pred_of(uv->first) != G) return "u is not the elementary abstract of " + G;
            if (!mentions_predicate(ts->second, G)) return G + " does not occur in s";
            if (!mentions_predicate(uv->second, F)) return F + " does not occur in v";
            if (!uv->second.is_abstract() || is_elementary(uv->second)) return "v must be a non-elementary abstract";
            return "";
        }
        if (schema == "Pred") {
            auto bic = match::biconditional(f);
            if (!bic) return "not a biconditional";
            const Formula& d = bic->first;
            if (!d.is_atomic() || d.predicate() != arith::delta()) return "left side is not x Delta [A(u)]_u";
            const Term& x = d.args()[0];
            const Term& abs = d.args()[1];
            if (!x.is_var() || !abs.is_abstract() || abs.bound().size() != 1) return "left side is not x Delta [A(u)]_u";
            const Variable& u = abs.bound()[0];
            bool listed = false;
            for (const auto& [wu, wa] : ctx.predication)
                listed = listed || alpha_equivalent(Term::abstract(wa, {wu}), abs);
            if (!listed) return "A is not a declared predication formula";
            if (!is_free_for(x, u, abs.body())) return x.variable().name + " is not free for " + u.name;
            return same_instance(substitute(abs.body(), u, x), bic->second) ? "" : "right side is not A(x)";
        }
    } catch (const WitnessError& e) {
        return e.what();
    } catch (const OccurrenceError& e) {
        return e.what();
    } catch (const CaptureError& e) {
        return e.what();
    }
    return "unknown schema " + schema;
}

// ---------------------------------------------------------------------------
// Rules

namespace detail {

inline Formula replace_elementary(const Formula& f, const std::string& pred, const Variable& v);

inline Term replace_elementary(const Term& t, const std::string& pred, const Variable& v) {
    if (t.is_var()) return t;
    if (is_elementary(t) && t.body().predicate().name == pred) return Term::var(v);
    return Term::abstract(replace_elementary(t.body(), pred, v), t.bound());
}

inline Formula replace_elementary(const Formula& f, const std::string& pred, const Variable& v) {
    switch (f.kind()) {
        case Formula::Kind::Atomic: {
            std::vector<Term> args;
            for (const auto& a : f.args()) args.push_back(replace_elementary(a, pred, v));
            return Formula::atom(f.predicate(), std::move(args));
        }
        case Formula::Kind::Conj:
            return Formula::conj(replace_elementary(f.left(), pred, v), replace_elementary(f.right(), pred, v));
        case Formula::Kind::Neg: return Formula::neg(replace_elementary(f.inner(), pred, v));
        case Formula::Kind::Exists: return Formula::exists(f.bound_var(), replace_elementary(f.body(), pred, v));
    }
    return f;
}

}  // namespace detail

/// MP: from A and A -> B infer B. Premises in that order.
inline std::string rule_mp(const Formula& a, const Formula& ab, const Formula& c) {
    auto imp = match::implication(ab);
    if (!imp) return "second premise is not an implication";
    if (!alpha_equivalent(imp->first, a)) return "first premise is not the antecedent of the second";
    if (!alpha_equivalent(imp->second, c)) return "conclusion is not the consequent of the second premise";
    return "";
}

/// N: from A infer #A.
inline std::string rule_nec(System s, const Formula& a, const Formula& c) {
    if (!is_t1_family(s)) return "necessitation is not a rule of " + to_string(s);
    return alpha_equivalent(box(a), c) ? "" : "conclusion is not #A";
}

/// Gen: from A infer Av.A.
inline std::string rule_gen(const Variable& v, const Formula& a, const Formula& c) {
    return alpha_equivalent(forall(v, a), c) ? "" : "conclusion is not A" + v.name + ".A";
}

/// TGen: from A(t), t the elementary abstract of F and F absent from A(v),
/// infer A(t') for t' free for v.
inline std::string rule_tgen(System s, const Formula& a, const std::string& F, const Term& t2, const Formula& c) {
    if (is_t1_family(s)) return "TGen is not a rule of " + to_string(s);
    VarSet avoid = all_vars(a);
    for (const auto& v : all_vars(c)) avoid.insert(v);
    for (const auto& v : all_vars(t2)) avoid.insert(v);
    Variable v = fresh_variable(avoid);
    Formula av = detail::replace_elementary(a, F, v);
    if (av == a) return "the elementary abstract of " + F + " does not occur in the premise";
    if (mentions_predicate(av, F)) return F + " occurs in A(v) outside its elementary abstract";
    if (!is_free_for(t2, v, av)) return to_string(t2) + " is not free for the replaced positions";
    return alpha_equivalent(substitute(av, v, t2), c) ? "" : "conclusion is not A(t')";
}

// ---------------------------------------------------------------------------
// Scripts
//
//   # comment
//   system T1;
//   use arith;                       (0, S, NN, I, Cong and Delta)
//   predication u : <formula>;       (T2PredAx: allowed A(u))
//   goal <formula>;
//   1. <formula> ; taut
//   2. <formula> ; axiom Ins t="y"
//   3. <formula> ; mp 1 2 | nec 1 | gen x 1 | tgen 1 F "[G(x)]_{x}"

enum class RuleKind { Taut, Axiom, MP, Nec, Gen, TGen };

struct Justification {
    RuleKind kind = RuleKind::Taut;
    std::string schema;
    Witnesses witnesses;
    std::vector<int> premises;
    std::string variable;
    std::string predicate;
    std::string term;
};

struct ProofLine {
    int index;
    Formula formula;
    Justification why;
    int source_line = 0;
};

struct ProofScript {
    System system = System::T1;
    ProofContext ctx;
    std::optional<Formula> goal;
    std::vector<ProofLine> lines;
};

class ScriptError : public std::runtime_error {
public:
    ScriptError(const std::string& msg, int source_line)
        : std::runtime_error("line " + std::to_string(source_line) + ": " + msg), source_line_(source_line) {}
    int source_line() const { return source_line_; }

private:
    int source_line_;
};

namespace detail {

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r;");
    return s.substr(b, e - b + 1);
}

/// Splits on blanks outside double quotes; quotes are removed.
inline std::vector<std::string> words(const std::string& s, int source_line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false, any = false;
    for (char c : s) {
        if (c == '"') {
            quoted = !quoted;
            any = true;
        } else if (!quoted && (c == ' ' || c == '\t')) {
            if (any) out.push_back(cur);
            cur.clear();
            any = false;
        } else {
            cur += c;
            any = true;
        }
    }
    if (quoted) throw ScriptError("unterminated quote", source_line);
    if (any) out.push_back(cur);
    return out;
}

inline int to_index(const std::string& s, int source_line) {
    try {
        std::size_t used = 0;
        int k = std::stoi(s, &used);
        if (used == s.size() && k > 0) return k;
    } catch (const std::exception&) {
    }
    throw ScriptError("'" + s + "' is not a line number", source_line);
}

inline Justification parse_justification(const std::string& text, int source_line) {
    auto w = words(text, source_line);
    if (w.empty()) throw ScriptError("missing justification", source_line);
    Justification j;
    auto need = [&](std::size_t n) {
        if (w.size() != n) throw ScriptError("'" + w[0] + "' takes " + std::to_string(n - 1) + " arguments", source_line);
    };
    if (w[0] == "taut") {
        need(1);
        j.kind = RuleKind::Taut;
    } else if (w[0] == "axiom") {
        if (w.size() < 2) throw ScriptError("axiom needs a schema name", source_line);
        j.kind = RuleKind::Axiom;
        j.schema = w[1];
        for (std::size_t k = 2; k < w.size(); ++k) {
            auto eq = w[k].find('=');
            if (eq == std::string::npos || eq == 0) throw ScriptError("witness '" + w[k] + "' is not key=value", source_line);
            j.witnesses[w[k].substr(0, eq)] = w[k].substr(eq + 1);
        }
    } else if (w[0] == "mp") {
        need(3);
        j.kind = RuleKind::MP;
        j.premises = {to_index(w[1], source_line), to_index(w[2], source_line)};
    } else if (w[0] == "nec") {
        need(2);
        j.kind = RuleKind::Nec;
        j.premises = {to_index(w[1], source_line)};
    } else if (w[0] == "gen") {
        need(3);
        j.kind = RuleKind::Gen;
        j.variable = w[1];
        j.premises = {to_index(w[2], source_line)};
    } else if (w[0] == "tgen") {
        need(4);
        j.kind = RuleKind::TGen;
        j.premises = {to_index(w[1], source_line)};
        j.predicate = w[2];
        j.term = w[3];
    } else {
        throw ScriptError("unknown justification '" + w[0] + "'", source_line);
    }
    return j;
}

inline std::optional<Term> parse_term_or(const std::string& text, const ProofContext& ctx) {
    Signature sig = ctx.sig;
    try {
        return parse_term(text, sig, ctx.opts);
    } catch (const ParseError&) {
        return std::nullopt;
    }
}

inline bool starts_with(const std::string& s, const std::string& p) { return s.compare(0, p.size(), p) == 0; }

}  // namespace detail

inline std::string to_string(const Justification& j) {
    auto quote = [](const std::string& s) { return s.find(' ') == std::string::npos ? s : "\"" + s + "\""; };
    switch (j.kind) {
        case RuleKind::Taut: return "taut";
        case RuleKind::Axiom: {
            std::string s = "axiom " + j.schema;
            for (const auto& [k, v] : j.witnesses) s += " " + k + "=" + quote(v);
            return s;
        }
        case RuleKind::MP: return "mp " + std::to_string(j.premises[0]) + " " + std::to_string(j.premises[1]);
        case RuleKind::Nec: return "nec " + std::to_string(j.premises[0]);
        case RuleKind::Gen: return "gen " + j.variable + " " + std::to_string(j.premises[0]);
        case RuleKind::TGen: return "tgen " + std::to_string(j.premises[0]) + " " + j.predicate + " " + quote(j.term);
    }
    return "";
}

inline ProofScript parse_script(const std::string& text) {
    ProofScript s;
    bool have_system = false;
    std::istringstream in(text);
    std::string raw;
    int no = 0;
    auto parse_f = [&](const std::string& t, int line) {
        try {
            return parse_formula(t, s.ctx.sig, s.ctx.opts);
        } catch (const ParseError& e) {
            throw ScriptError(e.what(), line);
        }
    };
    while (std::getline(in, raw)) {
        ++no;
        std::string line = detail::trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (detail::starts_with(line, "system ")) {
            auto sys = parse_system(detail::trim(line.substr(7)));
            if (!sys) throw ScriptError("unknown system '" + detail::trim(line.substr(7)) + "'", no);
            s.system = *sys;
            have_system = true;
            if (s.system == System::T2PredAx) s.ctx.predication.push_back(designated_predication());
        } else if (line == "use arith") {
            s.ctx.opts.arith = true;
        } else if (detail::starts_with(line, "predication ")) {
            auto colon = line.find(':');
            if (colon == std::string::npos) throw ScriptError("predication needs 'u : formula'", no);
            Variable u(detail::trim(line.substr(12, colon - 12)));
            s.ctx.predication.push_back({u, parse_f(line.substr(colon + 1), no)});
        } else if (detail::starts_with(line, "goal ")) {
            s.goal = parse_f(line.substr(5), no);
        } else if (std::isdigit(static_cast<unsigned char>(line[0]))) {
            auto dot = line.find('.');
            auto semi = line.find(';');
            if (dot == std::string::npos || semi == std::string::npos || semi < dot)
                throw ScriptError("proof line must read 'n. formula ; justification'", no);
            int index = detail::to_index(line.substr(0, dot), no);
            Formula f = parse_f(line.substr(dot + 1, semi - dot - 1), no);
            s.lines.push_back({index, f, detail::parse_justification(detail::trim(line.substr(semi + 1)), no), no});
        } else {
            throw ScriptError("unrecognized statement", no);
        }
    }
    if (!have_system) throw ScriptError("missing 'system' declaration", no);
    if (!s.goal) throw ScriptError("missing 'goal' declaration", no);
    return s;
}

inline ProofScript load_script(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScriptError("cannot open " + path, 0);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_script(ss.str());
}

// ---------------------------------------------------------------------------
// Checking

/// An axiom (or tautology) instance used by an accepted line.
struct AxiomUse {
    int line;
    std::string schema;
    Formula formula;
};

struct Verdict {
    bool accepted = false;
    /// Proof line index of the first failure; 0 for script-level failures.
    int line = 0;
    std::string reason;
    std::vector<AxiomUse> axioms;
    /// One entry per checked line: "n. formula ; justification -- ok".
    std::vector<std::string> explanation;
};

/// Reason a single line fails, or "" when it is justified.
inline std::string check_line(const ProofScript& s, const std::map<int, Formula>& proved, const ProofLine& pl) {
    const auto& j = pl.why;
    std::vector<Formula> prem;
    for (int k : j.premises) {
        if (k >= pl.index) return "premise " + std::to_string(k) + " does not precede line " + std::to_string(pl.index);
        auto it = proved.find(k);
        if (it == proved.end()) return "premise " + std::to_string(k) + " does not exist";
        prem.push_back(it->second);
    }
    switch (j.kind) {
        case RuleKind::Taut: {
            std::string why;
            return tautology_check(pl.formula, &why) ? "" : "not a tautology: " + why;
        }
        case RuleKind::Axiom: {
            std::string r = match_axiom(s.system, j.schema, pl.formula, j.witnesses, s.ctx);
            return r.empty() ? "" : j.schema + ": " + r;
        }
        case RuleKind::MP: {
            std::string r = rule_mp(prem[0], prem[1], pl.formula);
            return r.empty() ? "" : "mp: " + r;
        }
        case RuleKind::Nec: {
            std::string r = rule_nec(s.system, prem[0], pl.formula);
            return r.empty() ? "" : "nec: " + r;
        }
        case RuleKind::Gen: {
            auto v = detail::parse_term_or(j.variable, s.ctx);
            if (!v || !v->is_var()) return "gen: '" + j.variable + "' is not a variable";
            std::string r = rule_gen(v->variable(), prem[0], pl.formula);
            return r.empty() ? "" : "gen: " + r;
        }
        case RuleKind::TGen: {
            auto t = detail::parse_term_or(j.term, s.ctx);
            if (!t) return "tgen: '" + j.term + "' is not a term";
            std::string r = rule_tgen(s.system, prem[0], j.predicate, *t, pl.formula);
            return r.empty() ? "" : "tgen: " + r;
        }
    }
    return "unknown justification";
}

inline Verdict check_proof(const ProofScript& s) {
    Verdict v;
    std::map<int, Formula> proved;
    int last = 0;
    for (const auto& pl : s.lines) {
        if (pl.index <= last) {
            v.line = pl.index;
            v.reason = "line numbers must increase";
            return v;
        }
        last = pl.index;
        std::string r = check_line(s, proved, pl);
        v.explanation.push_back(std::to_string(pl.index) + ". " + to_pretty(pl.formula) + " ; " + to_string(pl.why) +
                                (r.empty() ? " -- ok" : " -- " + r));
        if (!r.empty()) {
            v.line = pl.index;
            v.reason = r;
            return v;
        }
        if (pl.why.kind == RuleKind::Taut) v.axioms.push_back({pl.index, "Taut", pl.formula});
        if (pl.why.kind == RuleKind::Axiom) v.axioms.push_back({pl.index, pl.why.schema, pl.formula});
        proved.insert_or_assign(pl.index, pl.formula);
    }
    if (s.lines.empty()) {
        v.reason = "empty proof";
        return v;
    }
    if (!alpha_equivalent(s.lines.back().formula, *s.goal)) {
        v.line = s.lines.back().index;
        v.reason = "last line is not the goal";
        return v;
    }
    v.accepted = true;
    return v;
}

/// Checks a script given as text; syntax errors become rejections.
inline Verdict check_proof_text(const std::string& text) {
    try {
        return check_proof(parse_script(text));
    } catch (const ScriptError& e) {
        Verdict v;
        v.reason = e.what();
        return v;
    }
}

// ---------------------------------------------------------------------------
// Single-line mutations

struct ScriptMutation {
    std::string description;
    ProofScript script;
};

/// Swapped MP premises, one free variable renamed in one line, and one
/// witness dropped from one axiom line.
inline std::vector<ScriptMutation> script_mutations(const ProofScript& s) {
    std::vector<ScriptMutation> out;
    for (std::size_t k = 0; k < s.lines.size(); ++k) {
        const ProofLine& pl = s.lines[k];
        const std::string at = "line " + std::to_string(pl.index) + ": ";
        if (pl.why.kind == RuleKind::MP && pl.why.premises[0] != pl.why.premises[1]) {
            ProofScript m = s;
            std::swap(m.lines[k].why.premises[0], m.lines[k].why.premises[1]);
            out.push_back({at + "swap premises", std::move(m)});
        }
        for (const auto& v : free_vars(pl.formula)) {
            VarSet avoid = all_vars(pl.formula);
            Variable fresh = fresh_variable(avoid);
            ProofScript m = s;
            m.lines[k].formula = substitute(pl.formula, v, Term::var(fresh));
            out.push_back({at + "rename " + v.name + " to " + fresh.name, std::move(m)});
        }
        for (const auto& [key, val] : pl.why.witnesses) {
            ProofScript m = s;
            m.lines[k].why.witnesses.erase(key);
            out.push_back({at + "drop witness " + key, std::move(m)});
        }
    }
    return out;
}

}  // namespace prpkit
