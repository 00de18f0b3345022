// Definitional macros of the Fregean arithmetic layer. Every macro expands
// to primitive syntax over the binary predicate Delta; bound variables of a
// template are primed names renamed away from the free variables of the
// arguments, so expansion never captures.
#pragma once

#include "syntax.hpp"

namespace prpkit::arith {

inline Predicate delta() { return Predicate{"Delta", 2}; }

inline Formula delta(const Term& a, const Term& b) { return Formula::atom(delta(), {a, b}); }

namespace detail {
inline Variable pick(const std::string& base, const VarSet& avoid) {
    std::string n = base;
    while (avoid.count(Variable(n))) n += '\'';
    return Variable(n);
}
inline VarSet free_set(std::initializer_list<Term> ts) {
    VarSet s;
    for (const auto& t : ts)
        for (const auto& v : free_vars(t)) s.insert(v);
    return s;
}
}  // namespace detail

/// 0 := [~Ev.(v Delta y)]_y
inline Term zero() {
    Variable v("v'"), y("y'");
    return Term::abstract(Formula::neg(Formula::exists(v, delta(Term::var(v), Term::var(y)))), {y});
}

/// x ~= y := Aw.(w Delta x <-> w Delta y)
inline Formula cong(const Term& x, const Term& y) {
    Variable w = detail::pick("w'", detail::free_set({x, y}));
    return forall(w, iff(delta(Term::var(w), x), delta(Term::var(w), y)));
}

/// S(x) := [Eu.(u Delta x & Ev.(~v Delta u & y ~= [w = v v| w Delta u]_w))]_y
inline Term succ(const Term& x) {
    VarSet avoid = detail::free_set({x});
    Variable u = detail::pick("u'", avoid);
    avoid.insert(u);
    Variable v = detail::pick("v'", avoid);
    avoid.insert(v);
    Variable w = detail::pick("w'", avoid);
    avoid.insert(w);
    Variable y = detail::pick("y'", avoid);
    Term tu = Term::var(u), tv = Term::var(v), tw = Term::var(w), ty = Term::var(y);
    Term set = Term::abstract(disj(Formula::identity(tw, tv), delta(tw, tu)), {w});
    Formula inner = Formula::conj(Formula::neg(delta(tv, tu)), cong(ty, set));
    Formula body = Formula::exists(u, Formula::conj(delta(tu, x), Formula::exists(v, inner)));
    return Term::abstract(body, {y});
}

/// I(z) := 0 Delta z & Ay.(y Delta z -> S(y) Delta z)
inline Formula inductive(const Term& z) {
    Variable y = detail::pick("y'", detail::free_set({z}));
    Term ty = Term::var(y);
    return Formula::conj(delta(zero(), z), forall(y, implies(delta(ty, z), delta(succ(ty), z))));
}

/// NN x := Az.(I(z) -> x Delta z)
inline Formula natural(const Term& x) {
    Variable z = detail::pick("z'", detail::free_set({x}));
    Term tz = Term::var(z);
    return forall(z, implies(inductive(tz), delta(x, tz)));
}

}  // namespace prpkit::arith
