// Exhaustive abstract corpus over three variables and the predicates
// F/1, G/2, H/3. Argument terms have depth at most one, so every top
// abstract has term depth at most two, and each abstract mentions at most
// two predicates.
#pragma once

#include <vector>

#include "prpkit/syntax.hpp"

namespace prpkit::corpus {

inline const Predicate F{"F", 1}, G{"G", 2}, H{"H", 3};

inline std::vector<Variable> variables() { return {Variable("x"), Variable("y"), Variable("z")}; }

/// All sequences of distinct variables over x, y, z (16 lists).
inline std::vector<VarList> bound_lists() {
    auto vs = variables();
    std::vector<VarList> out{{}};
    for (const auto& a : vs) {
        out.push_back({a});
        for (const auto& b : vs) {
            if (b == a) continue;
            out.push_back({a, b});
            for (const auto& c : vs)
                if (c != a && c != b) out.push_back({a, b, c});
        }
    }
    return out;
}

inline Term tv(const Variable& v) { return Term::var(v); }

/// Atoms whose arguments are variables.
inline std::vector<Formula> var_atoms(const Predicate& p) {
    std::vector<Formula> out;
    auto vs = variables();
    if (p.arity == 1)
        for (const auto& a : vs) out.push_back(Formula::atom(p, {tv(a)}));
    if (p.arity == 2)
        for (const auto& a : vs)
            for (const auto& b : vs) out.push_back(Formula::atom(p, {tv(a), tv(b)}));
    if (p.arity == 3)
        for (const auto& a : vs)
            for (const auto& b : vs)
                for (const auto& c : vs) out.push_back(Formula::atom(p, {tv(a), tv(b), tv(c)}));
    return out;
}

/// Argument terms: the variables and depth-one abstracts of F and G atoms
/// over bound lists of length at most one.
inline std::vector<Term> argument_terms() {
    std::vector<Term> out;
    for (const auto& v : variables()) out.push_back(tv(v));
    std::vector<VarList> short_lists{{}};
    for (const auto& v : variables()) short_lists.push_back({v});
    for (const auto& p : {F, G})
        for (const auto& a : var_atoms(p))
            for (const auto& b : short_lists) out.push_back(Term::abstract(a, b));
    return out;
}

/// Bodies of the top abstracts.
inline std::vector<Formula> bodies() {
    std::vector<Formula> out;
    auto args = argument_terms();
    for (const auto& t : args) out.push_back(Formula::atom(F, {t}));
    for (const auto& t : args)
        for (const auto& s : args) out.push_back(Formula::atom(G, {t, s}));
    for (const auto& a : var_atoms(H)) out.push_back(a);
    for (const auto& p : {F, G, H})
        for (const auto& a : var_atoms(p)) out.push_back(Formula::neg(a));
    for (const auto& a : var_atoms(F))
        for (const auto& b : var_atoms(G)) out.push_back(Formula::conj(a, b));
    for (const auto& v : variables())
        for (const auto& a : var_atoms(G)) out.push_back(Formula::exists(v, a));
    for (const auto& v : variables())
        for (const auto& a : var_atoms(H)) out.push_back(Formula::exists(v, Formula::neg(a)));
    return out;
}

inline std::vector<Term> abstracts() {
    std::vector<Term> out;
    auto lists = bound_lists();
    for (const auto& body : bodies())
        for (const auto& b : lists) out.push_back(Term::abstract(body, b));
    return out;
}

}  // namespace prpkit::corpus
