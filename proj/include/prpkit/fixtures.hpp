// The shipped model fixtures, built programmatically.
//
// Type-1 fixtures are extensional: every element is fixed by its extension
// in each world, and operation tables are filled by looking up, for every
// input in an operation's domain, the element whose extensions match what
// the constraint demands. Entries with no such element are left out.
//
// To keep extensions finite but self-referential, D is split into blocks:
// each individual and each D_0 element is its own block, and all elements of
// D_1 and D_2 share one block `h`. D_1 extensions are unions of blocks; D_2
// extensions are unions of block pairs, with the pair (h, h) split into its
// diagonal and off-diagonal part so that id is expressible.
//
// The type-2 fixture is generated freely: each operation application makes a
// new element, and extensions are computed from the constraints once D is
// fixed.
#pragma once

#include <functional>

#include "model.hpp"

namespace prpkit::fixtures {

/// Adds every entry whose required extension (in every H) is the extension
/// of exactly one element of the output stratum.
inline void complete_tables(Model& M, int max_m) {
    std::map<std::pair<int, std::vector<Ext>>, Elem> by_ext;
    for (std::size_t e = 0; e < M.size(); ++e) {
        if (M.stratum[e] < 0) continue;
        std::vector<Ext> v;
        for (const auto& h : M.H) v.push_back(h[e]);
        by_ext.emplace(std::make_pair(M.stratum[e], std::move(v)), static_cast<Elem>(e));
    }
    const int top = M.max_stratum();
    auto try_entry = [&](const std::string& op, const std::vector<Elem>& in) {
        auto s = output_stratum(M, op, in);
        if (!s || *s > top) return;
        std::vector<Ext> want;
        for (std::size_t h = 0; h < M.H.size(); ++h) {
            auto x = required_extension(M, static_cast<int>(h), op, in);
            if (!x) return;
            want.push_back(std::move(*x));
        }
        auto it = by_ext.find({*s, want});
        if (it != by_ext.end()) M.ops[op][in] = it->second;
    };
    const Elem N = static_cast<Elem>(M.size());
    for (const char* op : {"n", "e", "u", "c", "i", "r"})
        for (Elem d = 0; d < N; ++d) try_entry(op, {d});
    for (Elem d = 0; d < N; ++d)
        for (Elem d2 = 0; d2 < N; ++d2) {
            try_entry("a", {d, d2});
            try_entry("p0", {d, d2});
        }
    // p_m reads p0 folds, so it goes last.
    for (int m = 1; m <= max_m; ++m)
        for (Elem d = 0; d < N; ++d)
            for (Elem d2 = 0; d2 < N; ++d2) try_entry("p" + std::to_string(m), {d, d2});
}

// ---------------------------------------------------------------------------
// Block-based type-1 construction

struct BlockSpec {
    int worlds = 1;
    std::vector<std::string> individuals;
    /// D_0 elements: name and truth value in each world.
    std::vector<std::pair<std::string, std::vector<bool>>> props;
    /// Blocks are named by element (individuals, props) or "h".
    /// D_1: name and, per world, the set of blocks in the extension.
    std::vector<std::pair<std::string, std::vector<std::set<std::string>>>> d1;
    /// D_2 cells are "b1,b2" for block pairs, with "h,h=" and "h,h!" for the
    /// diagonal and off-diagonal halves of (h, h).
    std::vector<std::pair<std::string, std::vector<std::set<std::string>>>> d2;
    int max_m = 2;
};

inline std::string cell_of(const std::string& b1, const std::string& b2, bool same) {
    std::string c = b1 + "," + b2;
    if (b1 == "h" && b2 == "h") c += same ? "=" : "!";
    return c;
}

/// Every cell of D^2 for the given blocks.
inline std::set<std::string> all_cells(const std::vector<std::string>& blocks) {
    std::set<std::string> out;
    for (const auto& a : blocks)
        for (const auto& b : blocks) {
            out.insert(cell_of(a, b, true));
            out.insert(cell_of(a, b, false));
        }
    return out;
}

inline Model build_blocks(const BlockSpec& spec) {
    Model M;
    M.H.assign(static_cast<std::size_t>(spec.worlds), {});
    std::vector<std::string> block;
    for (const auto& n : spec.individuals) {
        M.add(n, -1);
        block.push_back(n);
    }
    for (const auto& [n, v] : spec.props) {
        M.add(n, 0);
        block.push_back(n);
    }
    for (const auto& [n, v] : spec.d1) {
        M.add(n, 1);
        block.push_back("h");
    }
    for (const auto& [n, v] : spec.d2) {
        M.add(n, 2);
        block.push_back("h");
    }
    if (auto id = M.find("id")) M.id = *id;
    const std::size_t N = M.size();
    for (int w = 0; w < spec.worlds; ++w) {
        auto& H = M.H[static_cast<std::size_t>(w)];
        for (std::size_t e = 0; e < N; ++e) {
            std::vector<std::uint64_t> codes;
            if (M.stratum[e] == 0) {
                const auto& truth = spec.props[e - spec.individuals.size()].second;
                if (truth[static_cast<std::size_t>(w)]) codes.push_back(0);
            } else if (M.stratum[e] == 1) {
                const auto& blocks = spec.d1[e - spec.individuals.size() - spec.props.size()].second[static_cast<std::size_t>(w)];
                for (std::size_t x = 0; x < N; ++x)
                    if (blocks.count(block[x])) codes.push_back(x);
            } else if (M.stratum[e] == 2) {
                const auto& cells =
                    spec.d2[e - spec.individuals.size() - spec.props.size() - spec.d1.size()].second[static_cast<std::size_t>(w)];
                for (std::size_t x = 0; x < N; ++x)
                    for (std::size_t y = 0; y < N; ++y)
                        if (cells.count(cell_of(block[x], block[y], x == y))) codes.push_back(x * N + y);
            }
            H[e] = make_ext(std::move(codes));
        }
    }
    complete_tables(M, spec.max_m);
    return M;
}

inline std::vector<std::set<std::string>> constant(int worlds, std::set<std::string> s) {
    return std::vector<std::set<std::string>>(static_cast<std::size_t>(worlds), std::move(s));
}

inline std::set<std::string> diagonal_cells(const std::vector<std::string>& blocks) {
    std::set<std::string> out;
    for (const auto& b : blocks) out.insert(cell_of(b, b, true));
    return out;
}

inline std::set<std::string> minus(const std::set<std::string>& all, const std::set<std::string>& s) {
    std::set<std::string> out;
    for (const auto& x : all)
        if (!s.count(x)) out.insert(x);
    return out;
}

/// Swaps the coordinates of every cell.
inline std::set<std::string> transpose(const std::set<std::string>& cells) {
    std::set<std::string> out;
    for (const auto& c : cells) {
        auto comma = c.find(',');
        std::string a = c.substr(0, comma), b = c.substr(comma + 1);
        if (a == "h" && (b == "h=" || b == "h!"))
            out.insert(c);
        else
            out.insert(b + "," + a);
    }
    return out;
}

/// D_0 = {tt, ff}, D_1 = {f1 = {tt}, nf1 = its complement}, D_2 = {id}.
inline Model boolean() {
    BlockSpec s;
    s.props = {{"tt", {true}}, {"ff", {false}}};
    std::vector<std::string> blocks{"tt", "ff", "h"};
    s.d1 = {{"f1", constant(1, {"tt"})}, {"nf1", constant(1, {"ff", "h"})}};
    s.d2 = {{"id", constant(1, diagonal_cells(blocks))}};
    return build_blocks(s);
}

/// One world; individuals a, b; every union of blocks is a D_1 element.
/// D_2 holds id, a relation `rel` and the relations obtained from them by
/// complement and transposition, plus the full and empty relation.
inline Model world() {
    BlockSpec s;
    s.individuals = {"a", "b"};
    s.props = {{"tt", {true}}, {"ff", {false}}};
    std::vector<std::string> blocks{"a", "b", "tt", "ff", "h"};
    for (unsigned mask = 0; mask < (1u << blocks.size()); ++mask) {
        std::set<std::string> ext;
        std::string name = "s";
        for (std::size_t k = 0; k < blocks.size(); ++k)
            if (mask & (1u << k)) {
                ext.insert(blocks[k]);
                name += "_" + blocks[k];
            }
        if (mask == 0) name = "s_none";
        s.d1.push_back({name, constant(1, ext)});
    }
    auto cells = all_cells(blocks);
    std::set<std::string> id = diagonal_cells(blocks);
    std::set<std::string> rel{"a,b", "b,b", "a,tt", "h,a"};
    s.d2 = {{"id", constant(1, id)},
            {"nid", constant(1, minus(cells, id))},
            {"rel", constant(1, rel)},
            {"nrel", constant(1, minus(cells, rel))},
            {"crel", constant(1, transpose(rel))},
            {"ncrel", constant(1, minus(cells, transpose(rel)))},
            {"full", constant(1, cells)},
            {"empty", constant(1, {})}};
    return build_blocks(s);
}

/// Two worlds, G the first. One individual a; D_0 holds all four truth
/// vectors. D_1 holds the world-independent unions of zero, one, all-but-one
/// or all blocks, and the properties of a that vary between worlds.
inline Model modal() {
    BlockSpec s;
    s.worlds = 2;
    s.individuals = {"a"};
    s.props = {{"tt", {true, true}}, {"tf", {true, false}}, {"ft", {false, true}}, {"ff", {false, false}}};
    std::vector<std::string> blocks{"a", "tt", "tf", "ft", "ff", "h"};
    std::set<std::string> all(blocks.begin(), blocks.end());
    std::set<std::pair<std::set<std::string>, std::set<std::string>>> seen;
    auto add = [&](const std::string& name, std::set<std::string> w0, std::set<std::string> w1) {
        if (seen.insert({w0, w1}).second) s.d1.push_back({name, {w0, w1}});
    };
    add("none", {}, {});
    add("all", all, all);
    for (const auto& b : blocks) {
        add("is_" + b, {b}, {b});
        add("not_" + b, minus(all, {b}), minus(all, {b}));
    }
    add("a_here", {"a"}, {});
    add("a_there", {}, {"a"});
    add("not_a_here", minus(all, {"a"}), all);
    add("not_a_there", all, minus(all, {"a"}));
    auto cells = all_cells(blocks);
    std::set<std::string> id = diagonal_cells(blocks);
    s.d2 = {{"id", constant(2, id)}, {"nid", constant(2, minus(cells, id))}};
    s.max_m = 1;
    return build_blocks(s);
}

// ---------------------------------------------------------------------------
// Freely generated type-2 fragment

/// Individuals a, b; generators F (extension {a}) and id; every other
/// element is a distinct operation application. Extensions are computed from
/// the constraints over the final domain.
inline Model free_fragment() {
    Model M;
    M.H.assign(1, {});
    struct App {
        std::string name, op;
        std::vector<std::string> in;
        int stratum;
    };
    const std::vector<App> apps{
        {"Fa", "p0", {"F", "a"}, 0},        {"Fb", "p0", {"F", "b"}, 0},
        {"nF", "n", {"F"}, 1},              {"nFa", "n", {"Fa"}, 0},          {"nFb", "n", {"Fb"}, 0},
        {"nnFa", "n", {"nFa"}, 0},          {"uF", "u", {"F"}, 0},
        {"FaFb", "a", {"Fa", "Fb"}, 0},     {"eFa", "e", {"Fa"}, 1},
        {"ida", "p0", {"id", "a"}, 1},      {"idb", "p0", {"id", "b"}, 1},
        {"idaa", "p0", {"ida", "a"}, 0},    {"idab", "p0", {"ida", "b"}, 0},
        {"idba", "p0", {"idb", "a"}, 0},    {"idbb", "p0", {"idb", "b"}, 0},
        {"rid", "r", {"id"}, 1},            {"cid", "c", {"id"}, 2},
        {"uid", "u", {"id"}, 1},            {"nid", "n", {"id"}, 2},
        {"nFnF", "a", {"nF", "nF"}, 1},     {"unF", "u", {"nF"}, 0},
    };
    // Elements are listed stratum by stratum, matching the file layout.
    M.add("a", -1);
    M.add("b", -1);
    for (int s = 0; s <= 2; ++s) {
        if (s == 1) M.add("F", 1);
        if (s == 2) M.id = M.add("id", 2);
        for (const auto& app : apps)
            if (app.stratum == s) M.add(app.name, s);
    }
    const Elem F = *M.find("F");
    const std::size_t N = M.size();
    auto& H = M.H[0];
    H[static_cast<std::size_t>(F)] = {static_cast<std::uint64_t>(*M.find("a"))};
    std::vector<std::uint64_t> diag;
    for (std::size_t x = 0; x < N; ++x) diag.push_back(x * N + x);
    H[static_cast<std::size_t>(M.id)] = diag;
    for (const auto& app : apps) {
        std::vector<Elem> in;
        for (const auto& n : app.in) in.push_back(*M.find(n));
        Elem out = *M.find(app.name);
        M.ops[app.op][in] = out;
        H[static_cast<std::size_t>(out)] = *required_extension(M, 0, app.op, in);
    }
    return M;
}

struct Fixture {
    std::string name;
    std::function<Model()> build;
    /// Interpretation of the predicate symbols F/1, G/2, P/0 where present.
    std::map<std::string, std::string> interp;
};

inline std::vector<Fixture> all() {
    return {
        {"bool", boolean, {{"F", "f1"}}},
        {"world", world, {{"F", "s_a"}, {"G", "rel"}, {"P", "tt"}}},
        {"modal", modal, {{"F", "a_here"}, {"P", "tf"}}},
        {"free", free_fragment, {{"F", "F"}}},
    };
}

}  // namespace prpkit::fixtures
