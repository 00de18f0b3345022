// Single-entry mutation of operation tables.
#pragma once

#include "model.hpp"

namespace prpkit {

struct Mutant {
    EntryRef entry;
    Elem original;
    Elem replacement;
};

/// Replacement outputs for every entry: the next `same` elements of the
/// output's stratum (cyclically after it) and the first element of the next
/// non-empty stratum.
inline std::vector<Mutant> single_entry_mutants(const Model& M, std::size_t same = 3) {
    std::map<int, std::vector<Elem>> by_stratum;
    for (std::size_t e = 0; e < M.size(); ++e) by_stratum[M.stratum[e]].push_back(static_cast<Elem>(e));
    std::vector<Mutant> out;
    for (const auto& [op, table] : M.ops)
        for (const auto& [in, val] : table) {
            int s = M.stratum[static_cast<std::size_t>(val)];
            const auto& peers = by_stratum[s];
            auto pos = static_cast<std::size_t>(std::find(peers.begin(), peers.end(), val) - peers.begin());
            for (std::size_t k = 1; k <= same && k < peers.size(); ++k)
                out.push_back({{op, in}, val, peers[(pos + k) % peers.size()]});
            auto next = by_stratum.upper_bound(s);
            if (next == by_stratum.end()) next = by_stratum.begin();
            if (next->first != s) out.push_back({{op, in}, val, next->second.front()});
        }
    return out;
}

struct MutationOutcome {
    Mutant mutant;
    /// Empty when the mutant was accepted.
    std::string constraint;
    /// Accepted and confirmed valid by a full validation run.
    bool preserving = false;
};

struct MutationReport {
    std::vector<MutationOutcome> outcomes;
    std::size_t rejected() const {
        std::size_t n = 0;
        for (const auto& o : outcomes) n += !o.constraint.empty();
        return n;
    }
    std::size_t preserving() const {
        std::size_t n = 0;
        for (const auto& o : outcomes) n += o.preserving;
        return n;
    }
    /// Accepted by the focused check but not by a full validation.
    std::size_t unexplained() const { return outcomes.size() - rejected() - preserving(); }
    std::map<std::string, std::size_t> by_constraint() const {
        std::map<std::string, std::size_t> m;
        for (const auto& o : outcomes)
            if (!o.constraint.empty()) ++m[o.constraint];
        return m;
    }
};

/// Applies each mutant in turn and checks the affected entries.
inline MutationReport run_mutations(Model M, const std::vector<Mutant>& mutants) {
    MutationReport rep;
    for (const auto& mu : mutants) {
        Elem& slot = M.ops[mu.entry.op][mu.entry.in];
        slot = mu.replacement;
        std::vector<EntryRef> focus{mu.entry};
        ValidationOptions opt;
        opt.early_exit = true;
        opt.focus = &focus;
        auto r = validate_model(M, opt);
        MutationOutcome o{mu, {}, false};
        if (!r.ok())
            o.constraint = r.violations.front().constraint;
        else
            o.preserving = validate_model(M).ok();
        rep.outcomes.push_back(std::move(o));
        M.ops[mu.entry.op][mu.entry.in] = mu.original;
    }
    return rep;
}

}  // namespace prpkit
