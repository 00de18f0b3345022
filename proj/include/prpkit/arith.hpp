// Predication instances and the shipped arithmetic lemma scripts.
#pragma once

#include <filesystem>

#include "arith_macros.hpp"
#include "proof.hpp"

namespace prpkit::arith {

/// x Delta [A(u)]_u <-> A(x). Throws CaptureError when x is not free for u.
inline Formula predication_instance(const Formula& a, const Variable& u, const Variable& x) {
    Term tx = Term::var(x);
    if (!is_free_for(tx, u, a)) throw CaptureError(x, u);
    return iff(delta(tx, Term::abstract(a, {u})), substitute(a, u, tx));
}

struct Lemma {
    std::string file;
    std::string statement;
};

/// The lemma list, in order, with the script file that proves each.
inline const std::vector<Lemma>& lemmas() {
    static const std::vector<Lemma> l{
        {"nn_zero.prf", "NN(0)"},
        {"nn_succ.prf", "NN(x) -> NN(S(x))"},
        {"zero_not_succ.prf", "~Ex.(0 = S(x))"},
        {"succ_congruence.prf", "x = y -> S(x) = S(y)"},
        {"induction.prf", "Az.(I(z) -> (Ax.(NN(x) -> Delta(x, z))))"},
    };
    return l;
}

struct LemmaResult {
    Lemma lemma;
    bool reproduced = false;
    /// Failing proof line, or 0 when the script could not be read or the goal
    /// does not state the lemma.
    int line = 0;
    std::string reason;
    std::string system;
};

/// Checks every lemma script under `dir` from scratch. A script that is
/// missing, fails to check, or proves something other than the lemma is
/// reported as not reproduced.
inline std::vector<LemmaResult> run_arith_corpus(const std::filesystem::path& dir) {
    std::vector<LemmaResult> out;
    for (const auto& lem : lemmas()) {
        LemmaResult r{lem, false, 0, {}, {}};
        try {
            ProofScript s = load_script((dir / lem.file).string());
            r.system = to_string(s.system);
            Signature sig;
            Formula want = parse_formula(lem.statement, sig, s.ctx.opts);
            if (!alpha_equivalent(*s.goal, want)) {
                r.reason = "script goal is not the lemma";
            } else {
                Verdict v = check_proof(s);
                r.reproduced = v.accepted;
                r.line = v.line;
                r.reason = v.reason;
            }
        } catch (const std::exception& e) {
            r.reason = e.what();
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace prpkit::arith
