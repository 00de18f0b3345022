#include <gtest/gtest.h>

#include <filesystem>

#include "generators.hpp"
#include "prpkit/arith.hpp"
#include "prpkit/proof.hpp"

using namespace prpkit;
namespace fs = std::filesystem;

namespace {

Formula p(const std::string& s, bool arith = false) {
    Signature sig;
    ParseOptions o;
    o.arith = arith;
    return parse_formula(s, sig, o);
}

std::string axiom(System sys, const std::string& schema, const std::string& f, Witnesses w = {}) {
    ProofContext ctx;
    return match_axiom(sys, schema, p(f), w, ctx);
}

fs::path corpus_dir() { return fs::path(PRPKIT_SOURCE_DIR) / "corpus"; }

std::vector<fs::path> corpus_files() {
    std::vector<fs::path> out;
    for (const auto& sub : {"t1", "t1alt", "arith"})
        for (const auto& e : fs::directory_iterator(corpus_dir() / sub))
            if (e.path().extension() == ".prf") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST(ExpandDefs, BoxAndDiamondAreIdentities) {
    EXPECT_TRUE(alpha_equivalent(p("#(x = x)"), p("[x = x] = [[x = x] = [x = x]]")));
    EXPECT_TRUE(alpha_equivalent(p("?F(x)"), p("~([~F(x)] = [[~F(x)] = [~F(x)]])")));
    Formula plain = p("F(x) & Ey.G(x, y)");
    EXPECT_EQ(expand_defs(plain), plain);
    Formula boxed = p("#?F(x)");
    EXPECT_EQ(expand_defs(expand_defs(boxed)), expand_defs(boxed));
}

TEST(Tautology, Examples) {
    EXPECT_TRUE(tautology_check(p("F(x) -> F(x)")));
    EXPECT_TRUE(tautology_check(p("(F(x) -> G(x)) -> ((P -> Q) -> (F(x) & P -> G(x) & Q))")));
    std::string why;
    EXPECT_FALSE(tautology_check(p("F(x) & ~F(x)"), &why));
    EXPECT_FALSE(why.empty());
    EXPECT_FALSE(tautology_check(p("F(x) -> F(y)")));
}

TEST(Tautology, AlphaEquivalentSubformulasShareALetter) {
    EXPECT_TRUE(tautology_check(p("(Ex.F(x)) -> Ey.F(y)")));
    EXPECT_TRUE(tautology_check(p("[F(x)]_x = [G(x)]_x -> [F(y)]_y = [G(y)]_y")));
    EXPECT_FALSE(tautology_check(p("(Ex.G(x, z)) -> Ey.G(y, x)")));
}

namespace {

// Truth-table oracle over formulas built from the letters below with & and ~.
bool eval_letters(const Formula& f, const std::vector<Formula>& letters, unsigned row) {
    for (std::size_t i = 0; i < letters.size(); ++i)
        if (f == letters[i]) return (row >> i) & 1u;
    if (f.is_conj()) return eval_letters(f.left(), letters, row) && eval_letters(f.right(), letters, row);
    if (f.is_neg()) return !eval_letters(f.inner(), letters, row);
    ADD_FAILURE() << "unexpected letter";
    return false;
}

}  // namespace

TEST(Tautology, AgreesWithTruthTableOracle) {
    std::vector<Formula> letters{p("P"), p("F(x)"), p("Ey.G(x, y)"), p("[F(x)]_x = [~F(x)]_x")};
    gen::FormulaGen g(7);
    std::function<Formula(int)> build = [&](int d) -> Formula {
        std::size_t c = d <= 0 ? 0 : g.pick(3);
        if (c == 1) return Formula::conj(build(d - 1), build(d - 1));
        if (c == 2) return Formula::neg(build(d - 1));
        return letters[g.pick(letters.size())];
    };
    int taut = 0;
    for (int n = 0; n < 600; ++n) {
        Formula f = build(5);
        bool all = true;
        for (unsigned row = 0; row < 16 && all; ++row) all = eval_letters(f, letters, row);
        EXPECT_EQ(tautology_check(f), all) << to_string(f);
        taut += all;
    }
    EXPECT_GT(taut, 0);
}

TEST(Axioms, IdAndLength) {
    EXPECT_EQ(axiom(System::T1, "Id", "v = v"), "");
    EXPECT_NE(axiom(System::T1, "Id", "v = w"), "");
    EXPECT_EQ(axiom(System::T1, "Len", "~[F(x)]_x = [G(x, y)]_{x y}"), "");
    EXPECT_NE(axiom(System::T1, "Len", "~[F(x)]_x = [G(x, y)]_y"), "");
    EXPECT_EQ(axiom(System::T2, "Alpha", "[F(x)]_x = [F(y)]_y"), "");
    EXPECT_NE(axiom(System::T2, "Alpha", "[G(x, y)]_x = [G(y, x)]_y"), "");
}

TEST(Axioms, InstantiationRespectsFreedom) {
    EXPECT_EQ(axiom(System::T1, "Ins", "(Ax.Ey.G(x, y)) -> Ey.G(z, y)", {{"t", "z"}}), "");
    EXPECT_EQ(axiom(System::T1, "Ins", "(Ax.Ey.G(x, y)) -> Ey.G([F(y)]_y, y)", {{"t", "[F(y)]_y"}}), "");
    std::string r = axiom(System::T1, "Ins", "(Ax.Ey.G(x, y)) -> Ey.G(y, y)", {{"t", "y"}});
    EXPECT_NE(r.find("not free"), std::string::npos) << r;
    EXPECT_NE(axiom(System::T1, "Ins", "(Ax.F(x)) -> F(z)"), "");  // no witness
}

TEST(Axioms, QuantifiedImplication) {
    EXPECT_EQ(axiom(System::T1, "QImp", "(Av.(P -> F(v))) -> (P -> Av.F(v))", {{"v", "v"}}), "");
    EXPECT_NE(axiom(System::T1, "QImp", "(Av.(F(v) -> F(v))) -> (F(v) -> Av.F(v))", {{"v", "v"}}), "");
}

TEST(Axioms, Leibniz) {
    EXPECT_EQ(axiom(System::T1, "L", "x = y -> (F(x, x) <-> F(x, y))", {{"occ", "2"}}), "");
    EXPECT_EQ(axiom(System::T1, "L", "x = y -> (F(x, x) <-> F(y, y))", {{"occ", "1,2"}}), "");
    EXPECT_NE(axiom(System::T1, "L", "x = y -> (F(x, x) <-> F(x, y))", {{"occ", "1"}}), "");
    // The replacement may not be captured.
    EXPECT_NE(axiom(System::T1, "L", "x = y -> (Ey.G(x, y) <-> Ey.G(y, y))", {{"occ", "1"}}), "");
    EXPECT_EQ(axiom(System::T1Alt, "L'", "x = y -> (F(x, x) -> F(x, y))", {{"occ", "2"}}), "");
    EXPECT_NE(axiom(System::T1Alt, "L'", "x = y -> (~F(x) -> ~F(y))", {{"occ", "1"}}), "");
    EXPECT_NE(axiom(System::T1Alt, "L", "x = y -> (F(x) <-> F(y))", {{"occ", "1"}}), "");
}

TEST(Axioms, ModalSchemas) {
    EXPECT_EQ(axiom(System::T1, "T", "#(Ex.F(x) & P) -> (Ex.F(x) & P)"), "");
    EXPECT_NE(axiom(System::T1, "T", "F(x) -> #F(x)"), "");
    EXPECT_EQ(axiom(System::T1, "K", "#(F(x) -> P) -> (#F(x) -> #P)"), "");
    EXPECT_NE(axiom(System::T1, "K", "#(F(x) -> P) -> (#P -> #F(x))"), "");
    EXPECT_EQ(axiom(System::T1, "S5", "?F(x) -> #?F(x)"), "");
    EXPECT_NE(axiom(System::T1, "S5", "?F(x) -> #F(x)"), "");
    EXPECT_EQ(axiom(System::T1Alt, "S5'", "~x = y -> #~x = y"), "");
    EXPECT_NE(axiom(System::T1Alt, "S5'", "~F(x) -> #~F(x)"), "");
    EXPECT_NE(axiom(System::T1, "S5'", "~x = y -> #~x = y"), "");
}

TEST(Axioms, AbstractIdentity) {
    EXPECT_EQ(axiom(System::T1, "B", "[F(x)]_x = [G(x)]_x <-> #Ax.(F(x) <-> G(x))"), "");
    EXPECT_EQ(axiom(System::T1, "B", "[F(x)] = [G(x)] <-> #(F(x) <-> G(x))"), "");
    EXPECT_NE(axiom(System::T1, "B", "[F(x)]_x = [G(x)]_x <-> #(F(x) <-> G(x))"), "");
    EXPECT_EQ(axiom(System::T1Alt, "B1", "#(F(x) <-> G(x)) <-> [F(x)] = [G(x)]"), "");
    EXPECT_EQ(axiom(System::T1Alt, "B2", "(Av.[G(x, v)]_x = [F(v)]_x) <-> [G(x, v)]_{x v} = [F(v)]_{x v}", {{"v", "v"}}),
              "");
    EXPECT_NE(axiom(System::T1Alt, "B2", "(Av.[G(x, v)]_x = [F(v)]_x) <-> [G(x, v)]_{v x} = [F(v)]_{v x}", {{"v", "v"}}),
              "");
    EXPECT_EQ(axiom(System::T2, "Ext", "[F(x)]_x = [G(x)]_x -> (F(x) <-> G(x))"), "");
    EXPECT_NE(axiom(System::T2, "Ext", "[F(x)]_x = [G(x)]_y -> (F(x) <-> G(x))"), "");
}

TEST(Axioms, DomainDistinctness) {
    // Negation head against existential head.
    EXPECT_EQ(axiom(System::T2, "Dist", "~[~F(x)]_x = [Ev.F(v)]"), "");
    EXPECT_NE(axiom(System::T2, "Dist", "~[~F(x)]_x = [~G(x)]_x"), "");
    EXPECT_NE(axiom(System::T2, "Dist", "~[F(x)]_x = [~G(x)]_x"), "");  // elementary
    EXPECT_NE(axiom(System::T1, "Dist", "~[~F(x)]_x = [Ev.F(v)]"), "");
}

TEST(Axioms, HeadAxioms) {
    EXPECT_EQ(axiom(System::T2, "Head1", "[F(x)]_x = [G(x)]_x <-> [~F(x)]_x = [~G(x)]_x"), "");
    EXPECT_NE(axiom(System::T2, "Head1", "[F(x)]_x = [G(x)]_x <-> [~F(x)]_x = [~~G(x)]_x"), "");
    EXPECT_EQ(axiom(System::T2, "Head2",
                    "[F(x) & G(x)]_x = [G(x) & F(x)]_x <-> ([F(x)]_x = [G(x)]_x & [G(x)]_x = [F(x)]_x)"),
              "");
    EXPECT_NE(axiom(System::T2, "Head2",
                    "[F(x) & G(x)]_x = [G(x) & F(x)]_x <-> ([F(x)]_x = [F(x)]_x & [G(x)]_x = [G(x)]_x)"),
              "");
}

TEST(Axioms, NonCircularity) {
    Witnesses w{{"F", "F"}, {"G", "G"}};
    EXPECT_EQ(axiom(System::T2, "NonCirc", "[F(x)]_x = [~G(x)]_x -> ~[G(x)]_x = [~F(x)]_x", w), "");
    EXPECT_NE(axiom(System::T2, "NonCirc", "[F(x)]_x = [~G(x)]_x -> ~[G(x)]_x = [~P]_x", w), "");
    EXPECT_NE(axiom(System::T2, "NonCirc", "[F(x)]_x = [~G(x)]_x -> ~[G(x)]_x = [F(x)]_x", w), "");
}

TEST(Axioms, PredicationIsWhitelisted) {
    ProofContext ctx;
    ctx.opts.arith = true;
    ctx.predication.push_back({Variable("u"), p("u = u")});
    Formula inst = arith::predication_instance(p("u = u"), Variable("u"), Variable("x"));
    EXPECT_TRUE(alpha_equivalent(inst, p("Delta(x, [u = u]_u) <-> x = x", true)));
    EXPECT_EQ(match_axiom(System::T2PredAx, "Pred", inst, {}, ctx), "");
    EXPECT_NE(match_axiom(System::T2, "Pred", inst, {}, ctx), "");
    Formula other = arith::predication_instance(p("F(u)"), Variable("u"), Variable("x"));
    EXPECT_NE(match_axiom(System::T2PredAx, "Pred", other, {}, ctx), "");

    auto [u, a] = designated_predication();
    ProofContext designated;
    designated.opts.arith = true;
    designated.predication.push_back({u, a});
    EXPECT_EQ(match_axiom(System::T2PredAx, "Pred", arith::predication_instance(a, u, Variable("x")), {}, designated), "");
}

TEST(Axioms, PredicationInstanceRejectsCapture) {
    EXPECT_THROW(arith::predication_instance(p("Ex.G(u, x)"), Variable("u"), Variable("x")), CaptureError);
    EXPECT_NO_THROW(arith::predication_instance(p("Ex.G(x, x) & F(u)"), Variable("u"), Variable("x")));
}

TEST(Axioms, SchemaMustBelongToSystem) {
    EXPECT_NE(axiom(System::T2, "T", "#P -> P"), "");
    EXPECT_NE(axiom(System::T1, "Ext", "[F(x)]_x = [G(x)]_x -> (F(x) <-> G(x))"), "");
    EXPECT_NE(axiom(System::T1Alt, "B", "[F(x)] = [G(x)] <-> #(F(x) <-> G(x))"), "");
}

TEST(Rules, ModusPonens) {
    EXPECT_EQ(rule_mp(p("F(x)"), p("F(x) -> Ey.G(x, y)"), p("Ez.G(x, z)")), "");
    EXPECT_NE(rule_mp(p("F(x) -> Ey.G(x, y)"), p("F(x)"), p("Ey.G(x, y)")), "");
    EXPECT_NE(rule_mp(p("F(y)"), p("F(x) -> P"), p("P")), "");
}

TEST(Rules, NecessitationOnlyInT1) {
    EXPECT_EQ(rule_nec(System::T1, p("x = x"), p("[x = x] = [[x = x] = [x = x]]")), "");
    EXPECT_EQ(rule_nec(System::T1Alt, p("x = x"), p("#(x = x)")), "");
    EXPECT_NE(rule_nec(System::T2, p("x = x"), p("#(x = x)")), "");
    EXPECT_NE(rule_nec(System::T1, p("x = x"), p("#(y = y)")), "");
}

TEST(Rules, Generalization) {
    Formula a = p("#(Av.F(v)) -> #F(v)");
    EXPECT_EQ(rule_gen(Variable("v"), a, p("Av.(#(Av.F(v)) -> #F(v))")), "");
    EXPECT_NE(rule_gen(Variable("w"), a, p("Av.(#(Av.F(v)) -> #F(v))")), "");
}

TEST(Rules, TermGeneralization) {
    Signature sig;
    Term t2 = parse_term("[G(y)]_y", sig);
    EXPECT_EQ(rule_tgen(System::T2, p("[F(x)]_x = [F(x)]_x"), "F", t2, p("[G(y)]_y = [G(y)]_y")), "");
    EXPECT_NE(rule_tgen(System::T2, p("[F(x)]_x = [F(x)]_x & F(z)"), "F", t2, p("[G(y)]_y = [G(y)]_y & F(z)")), "");
    EXPECT_NE(rule_tgen(System::T1, p("[F(x)]_x = [F(x)]_x"), "F", t2, p("[G(y)]_y = [G(y)]_y")), "");
    Term captured = parse_term("[G(z)]_y", sig);
    EXPECT_NE(rule_tgen(System::T2, p("Ez.([F(x)]_x = z)"), "F", captured, p("Ez.([G(z)]_y = z)")), "");
}

TEST(Scripts, ParseErrors) {
    EXPECT_THROW(parse_script("goal P;\n1. P -> P ; taut\n"), ScriptError);
    EXPECT_THROW(parse_script("system T1;\n1. P -> P ; taut\n"), ScriptError);
    EXPECT_THROW(parse_script("system T9;\ngoal P -> P;\n1. P -> P ; taut\n"), ScriptError);
    EXPECT_THROW(parse_script("system T1;\ngoal P -> P;\n1. P -> P ; frobnicate\n"), ScriptError);
    EXPECT_THROW(parse_script("system T1;\ngoal P -> P;\nx. P -> P ; taut\n"), ScriptError);
    EXPECT_THROW(parse_script("system T1;\ngoal P -> P;\n1. P -> ; taut\n"), ScriptError);
    Verdict v = check_proof_text("system T1;\ngoal P -> P;\n1. P -> P ; mp 1\n");
    EXPECT_FALSE(v.accepted);
}

TEST(Scripts, LineLevelFailures) {
    Verdict v = check_proof_text("system T1;\ngoal P;\n1. P -> P ; taut\n2. P ; mp 1 3\n");
    EXPECT_FALSE(v.accepted);
    EXPECT_EQ(v.line, 2);
    v = check_proof_text("system T1;\ngoal P;\n1. P -> P ; taut\n");
    EXPECT_FALSE(v.accepted);
    EXPECT_EQ(v.reason, "last line is not the goal");
    v = check_proof_text("system T1;\ngoal P -> P;\n2. P -> P ; taut\n1. P -> P ; taut\n");
    EXPECT_FALSE(v.accepted);
}

TEST(Corpus, BoxIdentityAndSwappedPremises) {
    ProofScript s = load_script((corpus_dir() / "t1/box_identity.prf").string());
    Verdict v = check_proof(s);
    ASSERT_TRUE(v.accepted) << v.reason;
    EXPECT_TRUE(alpha_equivalent(*s.goal, p("x = y -> #(x = y)")));
    for (std::size_t k = 0; k < s.lines.size(); ++k) {
        if (s.lines[k].why.kind != RuleKind::MP) continue;
        ProofScript m = s;
        std::swap(m.lines[k].why.premises[0], m.lines[k].why.premises[1]);
        Verdict mv = check_proof(m);
        EXPECT_FALSE(mv.accepted);
        EXPECT_EQ(mv.line, s.lines[k].index);
    }
}

TEST(Corpus, EveryScriptChecks) {
    auto files = corpus_files();
    EXPECT_GE(files.size(), 25u);
    for (const auto& f : files) {
        Verdict v = check_proof(load_script(f.string()));
        EXPECT_TRUE(v.accepted) << f << " line " << v.line << ": " << v.reason;
    }
}

TEST(Corpus, EverySingleLineMutationIsRejected) {
    std::size_t total = 0;
    for (const auto& f : corpus_files()) {
        ProofScript s = load_script(f.string());
        for (const auto& m : script_mutations(s)) {
            ++total;
            EXPECT_FALSE(check_proof(m.script).accepted) << f << ": " << m.description;
        }
    }
    EXPECT_GT(total, 500u);
}

TEST(Corpus, VerdictsAreDeterministicAndOrderIndependent) {
    auto files = corpus_files();
    auto run = [](const std::vector<fs::path>& fl) {
        std::map<std::string, std::pair<bool, std::size_t>> out;
        for (const auto& f : fl) {
            Verdict v = check_proof(load_script(f.string()));
            out[f.string()] = {v.accepted, v.explanation.size()};
        }
        return out;
    };
    auto a = run(files);
    std::reverse(files.begin(), files.end());
    EXPECT_EQ(a, run(files));
}

TEST(Arith, HeadsOfZeroAndSuccessorDiffer) {
    Term zero = arith::zero();
    Term succ = arith::succ(Term::var("x"));
    EXPECT_EQ(first_operation(zero), (OpTag{DOp::N, 0}));
    EXPECT_EQ(first_operation(succ), (OpTag{DOp::U, 0}));
    EXPECT_FALSE(is_elementary(zero));
    EXPECT_FALSE(is_elementary(succ));
}

TEST(Arith, MacroExpansion) {
    EXPECT_TRUE(alpha_equivalent(p("Cong(x, x)", true), p("Aw.(Delta(w, x) <-> Delta(w, x))", true)));
    Formula nn0 = p("NN(0)", true);
    Formula by_hand = p("Az.((Delta(0, z) & Ay.(Delta(y, z) -> Delta(S(y), z))) -> Delta(0, z))", true);
    EXPECT_TRUE(alpha_equivalent(nn0, by_hand));
    EXPECT_FALSE(mentions_predicate(nn0, "NN"));
    // S avoids capturing the free variables of its argument.
    Term s = arith::succ(Term::var("u'"));
    EXPECT_EQ(free_vars(s), std::vector<Variable>{Variable("u'")});
}

TEST(Arith, CorpusLemmas) {
    auto res = arith::run_arith_corpus(corpus_dir() / "arith");
    ASSERT_EQ(res.size(), 5u);
    for (const auto& r : res) EXPECT_TRUE(r.reproduced) << r.lemma.file << " line " << r.line << ": " << r.reason;
}

TEST(Arith, MutatedNN0IsRejected) {
    ProofScript s = load_script((corpus_dir() / "arith/nn_zero.prf").string());
    auto muts = script_mutations(s);
    ASSERT_FALSE(muts.empty());
    for (const auto& m : muts) EXPECT_FALSE(check_proof(m.script).accepted) << m.description;
    s.lines[0].formula = p("I(z') -> Delta(S(0), z')", true);
    EXPECT_FALSE(check_proof(s).accepted);
}
