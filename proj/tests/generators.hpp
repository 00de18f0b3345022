// Hand-rolled random generators for property tests.
#pragma once

#include <random>

#include "prpkit/syntax.hpp"

namespace prpkit::gen {

class FormulaGen {
public:
    explicit FormulaGen(std::uint32_t seed) : rng_(seed) {}

    std::vector<Variable> vars{Variable("x"), Variable("y"), Variable("z"), Variable("w")};
    std::vector<Predicate> preds{{"F", 1}, {"G", 2}, {"P", 0}, identity_predicate()};

    Variable var() { return vars[pick(vars.size())]; }

    Term term(int depth) {
        if (depth <= 0 || pick(3) != 0) return Term::var(var());
        VarList bound;
        for (const auto& v : vars)
            if (pick(3) == 0) bound.push_back(v);
        std::shuffle(bound.begin(), bound.end(), rng_);
        return Term::abstract(formula(depth - 1), bound);
    }

    Formula formula(int depth) {
        int choice = depth <= 0 ? 0 : static_cast<int>(pick(5));
        switch (choice) {
            case 1: return Formula::conj(formula(depth - 1), formula(depth - 1));
            case 2: return Formula::neg(formula(depth - 1));
            case 3: return Formula::exists(var(), formula(depth - 1));
            default: {
                const Predicate& p = preds[pick(preds.size())];
                std::vector<Term> args;
                for (int i = 0; i < p.arity; ++i) args.push_back(term(depth - 1));
                return Formula::atom(p, std::move(args));
            }
        }
    }

    /// Renames bound variables to fresh ones; the result is alpha-equivalent.
    Formula rename_bound(const Formula& f) {
        switch (f.kind()) {
            case Formula::Kind::Atomic: {
                std::vector<Term> args;
                for (const auto& a : f.args()) args.push_back(rename_bound(a));
                return Formula::atom(f.predicate(), std::move(args));
            }
            case Formula::Kind::Conj: return Formula::conj(rename_bound(f.left()), rename_bound(f.right()));
            case Formula::Kind::Neg: return Formula::neg(rename_bound(f.inner()));
            case Formula::Kind::Exists: {
                Variable nv("r" + std::to_string(counter_++));
                Formula body = substitute(rename_bound(f.body()), f.bound_var(), Term::var(nv));
                return Formula::exists(nv, body);
            }
        }
        return f;
    }

    Term rename_bound(const Term& t) {
        if (t.is_var()) return t;
        Formula body = rename_bound(t.body());
        VarList nb;
        for (const auto& b : t.bound()) {
            Variable nv("r" + std::to_string(counter_++));
            body = substitute(body, b, Term::var(nv));
            nb.push_back(nv);
        }
        return Term::abstract(body, nb);
    }

    std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

private:
    std::mt19937 rng_;
    int counter_ = 0;
};

}  // namespace prpkit::gen
