#include <gtest/gtest.h>

#include "generators.hpp"
#include "prpkit/parser.hpp"

using namespace prpkit;

namespace {

Term v(const char* n) { return Term::var(n); }
Predicate F1{"F", 1}, G1{"G", 1}, G2{"G", 2}, F2{"F", 2}, B2{"B", 2};

// Independent capture oracle: collects, for every free occurrence of `x`,
// the full list of binders enclosing it, then checks them against the free
// variables of the substituted term.
void binder_scopes(const Formula& f, const Variable& x, std::vector<Variable>& stack,
                   std::vector<std::vector<Variable>>& out);
void binder_scopes(const Term& t, const Variable& x, std::vector<Variable>& stack,
                   std::vector<std::vector<Variable>>& out) {
    if (t.is_var()) {
        if (t.variable() == x && std::find(stack.begin(), stack.end(), x) == stack.end()) out.push_back(stack);
        return;
    }
    for (const auto& b : t.bound()) stack.push_back(b);
    binder_scopes(t.body(), x, stack, out);
    stack.resize(stack.size() - t.bound().size());
}
void binder_scopes(const Formula& f, const Variable& x, std::vector<Variable>& stack,
                   std::vector<std::vector<Variable>>& out) {
    switch (f.kind()) {
        case Formula::Kind::Atomic:
            for (const auto& a : f.args()) binder_scopes(a, x, stack, out);
            break;
        case Formula::Kind::Conj:
            binder_scopes(f.left(), x, stack, out);
            binder_scopes(f.right(), x, stack, out);
            break;
        case Formula::Kind::Neg: binder_scopes(f.inner(), x, stack, out); break;
        case Formula::Kind::Exists:
            stack.push_back(f.bound_var());
            binder_scopes(f.body(), x, stack, out);
            stack.pop_back();
            break;
    }
}
bool capture_oracle(const Term& t, const Variable& x, const Formula& f) {
    std::vector<Variable> stack;
    std::vector<std::vector<Variable>> scopes;
    binder_scopes(f, x, stack, scopes);
    for (const auto& fv : free_vars(t))
        for (const auto& s : scopes)
            if (std::find(s.begin(), s.end(), fv) != s.end()) return false;
    return true;
}

}  // namespace

TEST(Parse, ConjunctionAndNegation) {
    Formula f = parse_formula("F(x) & ~G(y)");
    EXPECT_EQ(f, Formula::conj(Formula::atom(F1, {v("x")}), Formula::neg(Formula::atom(G1, {v("y")}))));
}

TEST(Parse, IdentityBetweenAbstracts) {
    Formula f = parse_formula("[F(x,y)]_{x y} = [F(x,y)]_{x y}");
    ASSERT_TRUE(f.is_identity());
    Term a = Term::abstract(Formula::atom(F2, {v("x"), v("y")}), {Variable("x"), Variable("y")});
    EXPECT_EQ(f, Formula::identity(a, a));
}

TEST(Parse, DuplicateAbstractionVariable) {
    try {
        parse_formula("[A]_{x x} = y");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("duplicate abstraction variable"), std::string::npos);
        EXPECT_EQ(e.offset(), 7u);
    }
}

TEST(Parse, ArityMismatchAndSyntaxErrors) {
    Signature sig;
    sig.declare("F", 2);
    EXPECT_THROW(parse_formula("F(x)", sig), ParseError);
    EXPECT_THROW(parse_formula("F(x,y) &", sig), ParseError);
    EXPECT_THROW(parse_formula("F(x,y) $ F(y,x)", sig), ParseError);
    ParseOptions strict;
    strict.infer_predicates = false;
    EXPECT_THROW(parse_formula("H(x)", sig, strict), ParseError);
    try {
        parse_formula("F(x,y) & (F(y,x)", sig);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 16u);
    }
}

TEST(Parse, MacrosExpandToPrimitives) {
    EXPECT_EQ(parse_formula("F(x) -> G(x)"), implies(Formula::atom(F1, {v("x")}), Formula::atom(G1, {v("x")})));
    EXPECT_EQ(parse_formula("Ax. F(x)"), Formula::neg(Formula::exists(Variable("x"), Formula::neg(Formula::atom(F1, {v("x")})))));
    EXPECT_EQ(parse_formula("Ax. ~F(x)"), Formula::neg(Formula::exists(Variable("x"), Formula::atom(F1, {v("x")}))));
    Formula xx = parse_formula("x = x");
    EXPECT_EQ(parse_formula("#x = x"), parse_formula("[x = x] = [[x = x] = [x = x]]"));
    EXPECT_EQ(parse_formula("#x = x"), box(xx));
    EXPECT_EQ(parse_formula("?F(x)"), parse_formula("~([~F(x)] = [[~F(x)] = [~F(x)]])"));
    EXPECT_EQ(parse_formula("F(x) v| G(x)"), parse_formula("~(~F(x) & ~G(x))"));
    EXPECT_EQ(parse_formula("F(x) <-> G(x)"), parse_formula("(F(x) -> G(x)) & (G(x) -> F(x))"));
    EXPECT_EQ(parse_formula("E x. F(x)"), parse_formula("Ex. F(x)"));
}

TEST(Parse, QuantifierScopeIsTight) {
    Formula f = parse_formula("Ev. F(v) & G(v)");
    ASSERT_TRUE(f.is_conj());
    EXPECT_TRUE(f.left().is_exists());
}

TEST(Print, Examples) {
    EXPECT_EQ(to_string(Formula::atom(F1, {v("x")})), "F(x)");
    EXPECT_EQ(to_string(Formula::neg(Formula::neg(Formula::atom(F1, {v("x")})))), "~~F(x)");
    EXPECT_EQ(to_string(Formula::exists(Variable("v"), Formula::atom(B2, {v("x"), v("v")}))), "Ev. B(x,v)");
    EXPECT_EQ(to_pretty(parse_formula("#x = y -> x = y")), "#x = y -> x = y");
    EXPECT_EQ(to_pretty(parse_formula("?F(x) <-> Ay. ~G(x,y)")), "?F(x) <-> Ay. ~G(x,y)");
}

TEST(FreeVars, Examples) {
    EXPECT_EQ(free_vars(parse_formula("F(x,y)")), (VarList{Variable("x"), Variable("y")}));
    EXPECT_EQ(free_vars(parse_term("[F(x,y)]_{x}")), (VarList{Variable("y")}));
    EXPECT_EQ(free_vars(parse_term("[F([G(x,y)], x)]_{x}")), (VarList{Variable("y")}));
    EXPECT_EQ(free_vars(parse_formula("G(z) & Ex. F(x,y) & H(y,z,w)")),
              (VarList{Variable("z"), Variable("y"), Variable("w")}));
}

TEST(Alpha, Examples) {
    EXPECT_TRUE(alpha_equivalent(parse_term("[F(x)]_{x}"), parse_term("[F(y)]_{y}")));
    EXPECT_FALSE(alpha_equivalent(parse_term("[F(x,y)]_{x}"), parse_term("[F(x,z)]_{x}")));
    EXPECT_TRUE(alpha_equivalent(parse_term("[F([G(x)],y)]_{x y}"), parse_term("[F([G(y)],x)]_{y x}")));
    EXPECT_FALSE(alpha_equivalent(parse_term("[F(x,y)]_{x y}"), parse_term("[F(x,y)]_{y x}")));
    EXPECT_TRUE(alpha_equivalent(parse_formula("Ex. Ey. G(x,y)"), parse_formula("Ey. Ex. G(y,x)")));
    EXPECT_FALSE(alpha_equivalent(parse_formula("Ex. Ey. G(x,y)"), parse_formula("Ex. Ey. G(y,x)")));
    // Shadowing: the inner binder wins.
    EXPECT_TRUE(alpha_equivalent(parse_formula("Ex. Ex. F(x)"), parse_formula("Ey. Ez. F(z)")));
}

TEST(Substitute, Examples) {
    Formula fv = parse_formula("F(v)");
    EXPECT_EQ(substitute(fv, Variable("v"), parse_term("[G(x)]_{x}")), parse_formula("F([G(x)]_{x})"));

    Formula ex = parse_formula("Ey. B(v,y)");
    try {
        substitute(ex, Variable("v"), v("y"));
        FAIL();
    } catch (const CaptureError& e) {
        EXPECT_EQ(e.binder(), Variable("y"));
    }

    Formula b = parse_formula("B(x,v)");
    Term prop = parse_term("[Ey. B(x,y)]");
    EXPECT_EQ(substitute(b, Variable("v"), prop), parse_formula("B(x, [Ey. B(x,y)])"));
}

TEST(FreeFor, Examples) {
    EXPECT_FALSE(is_free_for(v("y"), Variable("v"), parse_formula("Ey. B(v,y)")));
    EXPECT_TRUE(is_free_for(parse_term("[Ey. B(y,y)]"), Variable("v"), parse_formula("Ey. B(v,y)")));
    Formula f = parse_formula("[F(v,x)]_{x} = z");
    EXPECT_EQ(is_free_for(v("x"), Variable("v"), f), capture_oracle(v("x"), Variable("v"), f));
    EXPECT_FALSE(is_free_for(v("x"), Variable("v"), f));
}

TEST(Fresh, Examples) {
    EXPECT_EQ(fresh_variable(parse_formula("F(x1)")), Variable("x0"));
    EXPECT_EQ(fresh_variable(parse_formula("F(x0,x1)")), Variable("x2"));
    EXPECT_EQ(fresh_variable(parse_term("[F(x0)]_{x0}")), Variable("x1"));
    EXPECT_TRUE(ordinal_less(Variable("x2"), Variable("x10")));
    EXPECT_TRUE(ordinal_less(Variable("x10"), Variable("a")));
}

TEST(Occurrences, ReplaceSelected) {
    Formula f = parse_formula("G(x,x) & F(x)");
    EXPECT_EQ(count_free_occurrences(f, Variable("x")), 3);
    EXPECT_EQ(replace_occurrences(f, Variable("x"), Variable("y"), {2, 3}), parse_formula("G(x,y) & F(y)"));
    EXPECT_THROW(replace_occurrences(parse_formula("Ey. G(x,y)"), Variable("x"), Variable("y"), {1}), OccurrenceError);
    EXPECT_THROW(replace_occurrences(f, Variable("x"), Variable("y"), {4}), OccurrenceError);
}

// ---------------------------------------------------------------------------
// Properties over generated formulas

TEST(SyntaxProperty, PrintParseRoundTrip) {
    gen::FormulaGen gen(7);
    for (int i = 0; i < 2000; ++i) {
        Formula f = gen.formula(4);
        Signature sig;
        EXPECT_EQ(parse_formula(to_string(f), sig), f) << to_string(f);
        Signature sig2;
        EXPECT_EQ(parse_formula(to_pretty(f), sig2), f) << to_pretty(f);
    }
}

TEST(SyntaxProperty, AlphaIsEquivalenceAndPreservesFreeVars) {
    gen::FormulaGen gen(11);
    for (int i = 0; i < 1000; ++i) {
        Formula f = gen.formula(4);
        Formula g = gen.rename_bound(f);
        Formula h = gen.rename_bound(g);
        EXPECT_TRUE(alpha_equivalent(f, f));
        EXPECT_TRUE(alpha_equivalent(f, g));
        EXPECT_TRUE(alpha_equivalent(g, f));
        EXPECT_TRUE(alpha_equivalent(f, h));
        EXPECT_EQ(free_vars(f), free_vars(g));
    }
}

TEST(SyntaxProperty, SubstitutionLaws) {
    gen::FormulaGen gen(13);
    int checked = 0;
    for (int i = 0; i < 2000; ++i) {
        Formula f = gen.formula(4);
        Variable x = gen.var();
        EXPECT_EQ(substitute(f, x, Term::var(x)), f);
        Term t = gen.term(2);
        bool free_for = is_free_for(t, x, f);
        EXPECT_EQ(free_for, capture_oracle(t, x, f)) << to_string(f);
        if (!free_for || !is_free_in(x, f)) continue;
        ++checked;
        Formula g = substitute(f, x, t);
        VarSet expect;
        for (const auto& y : free_vars(f))
            if (y != x) expect.insert(y);
        for (const auto& y : free_vars(t)) expect.insert(y);
        auto got = free_vars(g);
        EXPECT_EQ(VarSet(got.begin(), got.end()), expect);
    }
    EXPECT_GT(checked, 100);
}

TEST(SyntaxProperty, CaptureAvoidingSubstitutionAgreesWhenFreeFor) {
    gen::FormulaGen gen(17);
    for (int i = 0; i < 1000; ++i) {
        Formula f = gen.formula(4);
        Variable x = gen.var();
        Term t = gen.term(2);
        Formula g = substitute_avoiding(f, x, t);
        if (is_free_for(t, x, f)) {
            EXPECT_TRUE(alpha_equivalent(g, substitute(f, x, t)));
        }
        auto fv = free_vars(g);
        for (const auto& y : free_vars(t))
            if (is_free_in(x, f)) EXPECT_NE(std::find(fv.begin(), fv.end(), y), fv.end());
    }
}
