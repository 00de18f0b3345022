// Finite, partial model structures: stratified elements, extension tables,
// operation tables and the constraints tying them together.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace prpkit {

using Elem = int;
using Tuple = std::vector<Elem>;
/// Sorted, duplicate-free tuple codes. A D_0 element's extension is {0}
/// (true, the empty tuple) or {} (false).
using Ext = std::vector<std::uint64_t>;

/// One operation-table entry: op name ("n","e","u","c","i","r","a","p0",
/// "p1",...) and its inputs.
struct EntryRef {
    std::string op;
    std::vector<Elem> in;
    auto operator<=>(const EntryRef&) const = default;
};

struct Model {
    std::vector<std::string> names;
    std::vector<int> stratum;
    Elem id = -1;
    /// H[h][e]; unused for D_-1 elements, on which every H is the identity.
    std::vector<std::vector<Ext>> H;
    int G = 0;
    std::map<std::string, std::map<std::vector<Elem>, Elem>> ops;

    std::size_t size() const { return names.size(); }
    int max_stratum() const {
        int m = -1;
        for (int s : stratum) m = std::max(m, s);
        return m;
    }
    std::vector<Elem> elements_of(int s) const {
        std::vector<Elem> out;
        for (std::size_t e = 0; e < size(); ++e)
            if (stratum[e] == s) out.push_back(static_cast<Elem>(e));
        return out;
    }
    std::optional<Elem> find(const std::string& name) const {
        for (std::size_t e = 0; e < size(); ++e)
            if (names[e] == name) return static_cast<Elem>(e);
        return std::nullopt;
    }
    Elem add(const std::string& name, int s) {
        names.push_back(name);
        stratum.push_back(s);
        for (auto& h : H) h.emplace_back();
        return static_cast<Elem>(names.size() - 1);
    }

    std::uint64_t encode(const Tuple& t) const {
        std::uint64_t c = 0;
        for (Elem x : t) c = c * size() + static_cast<std::uint64_t>(x);
        return c;
    }
    Tuple decode(std::uint64_t c, int arity) const {
        Tuple t(static_cast<std::size_t>(arity));
        for (int k = arity - 1; k >= 0; --k) {
            t[static_cast<std::size_t>(k)] = static_cast<Elem>(c % size());
            c /= size();
        }
        return t;
    }
    /// Number of tuples of the given arity over D.
    std::uint64_t tuple_count(int arity) const {
        std::uint64_t n = 1;
        for (int k = 0; k < arity; ++k) n *= size();
        return n;
    }

    bool member(int h, Elem d, std::uint64_t code) const {
        const Ext& x = H[static_cast<std::size_t>(h)][static_cast<std::size_t>(d)];
        return std::binary_search(x.begin(), x.end(), code);
    }
    bool member(int h, Elem d, const Tuple& t) const { return member(h, d, encode(t)); }
    /// Truth value of a D_0 element under H_h.
    bool true_in(int h, Elem d) const { return member(h, d, std::uint64_t{0}); }

    std::optional<Elem> apply(const std::string& op, const std::vector<Elem>& in) const {
        auto t = ops.find(op);
        if (t == ops.end()) return std::nullopt;
        auto e = t->second.find(in);
        if (e == t->second.end()) return std::nullopt;
        return e->second;
    }
};

inline Ext make_ext(std::vector<std::uint64_t> codes) {
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    return codes;
}

/// m of "p<m>", or -1 for any other name.
inline int predication_index(const std::string& op) {
    if (op.size() < 2 || op[0] != 'p') return -1;
    for (std::size_t k = 1; k < op.size(); ++k)
        if (op[k] < '0' || op[k] > '9') return -1;
    return std::stoi(op.substr(1));
}

inline bool is_known_op(const std::string& op) {
    static const std::set<std::string> unary{"n", "e", "u", "c", "i", "r"};
    return unary.count(op) || op == "a" || predication_index(op) >= 0;
}

inline std::size_t op_arity(const std::string& op) { return op == "a" || predication_index(op) >= 0 ? 2 : 1; }

/// Name of the constraint governing an operation.
inline std::string constraint_name(const std::string& op) {
    if (op == "n") return "negation";
    if (op == "e") return "expansion";
    if (op == "u") return "existential";
    if (op == "c") return "cyclic permutation";
    if (op == "i") return "inversion";
    if (op == "r") return "reflection";
    if (op == "a") return "conjunction";
    if (op == "p0") return "predication p0";
    return "predication " + op;
}

/// Output stratum an entry must have, or nullopt if the inputs lie outside
/// the operation's domain.
inline std::optional<int> output_stratum(const Model& M, const std::string& op, const std::vector<Elem>& in) {
    if (in.size() != op_arity(op)) return std::nullopt;
    for (Elem x : in)
        if (x < 0 || static_cast<std::size_t>(x) >= M.size()) return std::nullopt;
    int i = M.stratum[static_cast<std::size_t>(in[0])];
    if (op == "n") return i >= 0 ? std::optional<int>(i) : std::nullopt;
    if (op == "e") return i >= 0 ? std::optional<int>(i + 1) : std::nullopt;
    if (op == "u") return i >= 1 ? std::optional<int>(i - 1) : i == 0 ? std::optional<int>(0) : std::nullopt;
    if (op == "c") return i >= 2 ? std::optional<int>(i) : std::nullopt;
    if (op == "i") return i >= 3 ? std::optional<int>(i) : std::nullopt;
    if (op == "r") return i >= 2 ? std::optional<int>(i - 1) : std::nullopt;
    int j = M.stratum[static_cast<std::size_t>(in[1])];
    if (op == "a") return i >= 0 && j == i ? std::optional<int>(i) : std::nullopt;
    int m = predication_index(op);
    if (m == 0) return i >= 1 ? std::optional<int>(i - 1) : std::nullopt;
    if (m > 0) return i >= 1 && j >= m ? std::optional<int>(i + m - 1) : std::nullopt;
    return std::nullopt;
}

/// p0^m(d, y1..ym) = p0(p0^{m-1}(d, y2..ym), y1); nullopt when an entry is missing.
inline std::optional<Elem> p0_fold(const Model& M, Elem d, const Tuple& ys) {
    std::optional<Elem> cur = d;
    for (auto it = ys.rbegin(); it != ys.rend() && cur; ++it) cur = M.apply("p0", {*cur, *it});
    return cur;
}

/// The extension H_h(op(in)) must have according to the constraint for
/// `op`. nullopt (with `why` set) when it is not determined, e.g. a p_m
/// entry whose p0 fold is missing.
inline std::optional<Ext> required_extension(const Model& M, int h, const std::string& op, const std::vector<Elem>& in,
                                             std::string* why = nullptr) {
    auto fail = [&](std::string msg) -> std::optional<Ext> {
        if (why) *why = std::move(msg);
        return std::nullopt;
    };
    auto out_s = output_stratum(M, op, in);
    if (!out_s) return fail("inputs outside the domain of " + op);
    const std::size_t N = M.size();
    const Elem d = in[0];
    const int i = M.stratum[static_cast<std::size_t>(d)];
    const Ext& hd = M.H[static_cast<std::size_t>(h)][static_cast<std::size_t>(d)];
    std::vector<std::uint64_t> out;
    if (op == "n") {
        std::uint64_t total = M.tuple_count(i);
        std::size_t k = 0;
        for (std::uint64_t c = 0; c < total; ++c) {
            while (k < hd.size() && hd[k] < c) ++k;
            if (k == hd.size() || hd[k] != c) out.push_back(c);
        }
        return out;
    }
    if (op == "e") {
        for (auto c : hd)
            for (std::size_t x = 0; x < N; ++x) out.push_back(c * N + x);
        return make_ext(std::move(out));
    }
    if (op == "u") {
        if (i == 0) return hd;
        for (auto c : hd) out.push_back(c / N);
        return make_ext(std::move(out));
    }
    if (op == "c" || op == "i" || op == "r") {
        for (auto c : hd) {
            Tuple y = M.decode(c, i);
            if (op == "c") {
                // (x1..xi) in H(c d) iff (x2..xi, x1) in H(d)
                std::rotate(y.rbegin(), y.rbegin() + 1, y.rend());
                out.push_back(M.encode(y));
            } else if (op == "i") {
                std::swap(y[y.size() - 2], y[y.size() - 1]);
                out.push_back(M.encode(y));
            } else if (y[y.size() - 2] == y[y.size() - 1]) {
                y.pop_back();
                out.push_back(M.encode(y));
            }
        }
        return make_ext(std::move(out));
    }
    const Elem d2 = in[1];
    if (op == "a") {
        const Ext& h2 = M.H[static_cast<std::size_t>(h)][static_cast<std::size_t>(d2)];
        std::set_intersection(hd.begin(), hd.end(), h2.begin(), h2.end(), std::back_inserter(out));
        return out;
    }
    const int m = predication_index(op);
    if (m == 0) {
        for (auto c : hd)
            if (c % N == static_cast<std::uint64_t>(d2)) out.push_back(c / N);
        return make_ext(std::move(out));
    }
    // p_m: (x1..x_{i-1}, y1..ym) in H(p_m(d,d')) iff (x1..x_{i-1}, p0^m(d', y1..ym)) in H(d)
    std::map<Elem, std::vector<std::uint64_t>> ys_by_fold;
    const std::uint64_t ny = M.tuple_count(m);
    for (std::uint64_t yc = 0; yc < ny; ++yc) {
        Tuple ys = M.decode(yc, m);
        auto f = p0_fold(M, d2, ys);
        if (!f) return fail("p0 fold of " + M.names[static_cast<std::size_t>(d2)] + " undefined");
        ys_by_fold[*f].push_back(yc);
    }
    for (auto c : hd) {
        auto it = ys_by_fold.find(static_cast<Elem>(c % N));
        if (it == ys_by_fold.end()) continue;
        for (auto yc : it->second) out.push_back((c / N) * ny + yc);
    }
    return make_ext(std::move(out));
}

// ---------------------------------------------------------------------------
// Validation

struct Violation {
    std::string constraint;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    /// Number of violations of the named constraint.
    std::size_t names(const std::string& constraint) const {
        std::size_t n = 0;
        for (const auto& v : violations) n += v.constraint == constraint;
        return n;
    }
};

struct ValidationOptions {
    bool early_exit = false;
    /// When set, only these entries are checked (plus every p_m entry with
    /// m >= 1 if a p0 entry is among them, since p_m reads p0 folds); the
    /// structural checks are skipped.
    const std::vector<EntryRef>* focus = nullptr;
};

namespace detail {

inline std::string entry_text(const Model& M, const std::string& op, const std::vector<Elem>& in) {
    std::string s = op + "(";
    for (std::size_t k = 0; k < in.size(); ++k) {
        if (k) s += ",";
        s += in[k] >= 0 && static_cast<std::size_t>(in[k]) < M.size() ? M.names[static_cast<std::size_t>(in[k])] : "?";
    }
    return s + ")";
}

class Validator {
public:
    Validator(const Model& M, const ValidationOptions& o) : M_(M), opt_(o) {}

    ValidationReport run() {
        if (!opt_.focus) {
            structure();
            if (stop()) return std::move(rep_);
            for (const auto& [op, table] : M_.ops)
                for (const auto& [in, out] : table) {
                    entry(op, in, out);
                    if (stop()) return std::move(rep_);
                }
            return std::move(rep_);
        }
        bool fold_touched = false;
        for (const auto& ref : *opt_.focus) {
            auto out = M_.apply(ref.op, ref.in);
            if (out) entry(ref.op, ref.in, *out);
            if (stop()) return std::move(rep_);
            fold_touched = fold_touched || ref.op == "p0";
        }
        if (fold_touched)
            for (const auto& [op, table] : M_.ops)
                if (predication_index(op) > 0)
                    for (const auto& [in, out] : table) {
                        entry(op, in, out);
                        if (stop()) return std::move(rep_);
                    }
        return std::move(rep_);
    }

private:
    bool stop() const { return opt_.early_exit && !rep_.violations.empty(); }
    void report(std::string c, std::string d) { rep_.violations.push_back({std::move(c), std::move(d)}); }

    void structure() {
        const std::size_t N = M_.size();
        if (M_.stratum.size() != N) report("strata", "stratum list length differs from element list");
        if (M_.H.empty()) report("strata", "no extension functions");
        if (M_.G < 0 || static_cast<std::size_t>(M_.G) >= M_.H.size()) report("strata", "G is not a member of H");
        if (M_.id < 0 || static_cast<std::size_t>(M_.id) >= N || M_.stratum[static_cast<std::size_t>(M_.id)] != 2)
            report("strata", "id is not an element of D_2");
        std::set<std::string> seen;
        for (const auto& n : M_.names)
            if (!seen.insert(n).second) report("strata", "element " + n + " appears twice");
        for (std::size_t h = 0; h < M_.H.size(); ++h) {
            if (M_.H[h].size() != N) {
                report("range", "H" + std::to_string(h) + " does not cover every element");
                continue;
            }
            for (std::size_t e = 0; e < N; ++e) {
                int s = M_.stratum[e];
                const Ext& x = M_.H[h][e];
                if (s < 0) {
                    if (!x.empty()) report("range", "H" + std::to_string(h) + " must be the identity on " + M_.names[e]);
                    continue;
                }
                if (!std::is_sorted(x.begin(), x.end()) || std::adjacent_find(x.begin(), x.end()) != x.end())
                    report("range", "unsorted extension of " + M_.names[e]);
                if (!x.empty() && x.back() >= M_.tuple_count(s))
                    report("range", "H" + std::to_string(h) + "(" + M_.names[e] + ") has a tuple outside D^" +
                                        std::to_string(s));
            }
            if (M_.id >= 0 && static_cast<std::size_t>(M_.id) < N) {
                std::vector<std::uint64_t> diag;
                for (std::size_t x = 0; x < N; ++x) diag.push_back(x * N + x);
                if (M_.H[h][static_cast<std::size_t>(M_.id)] != diag)
                    report("H(id)", "H" + std::to_string(h) + "(id) is not the diagonal");
            }
        }
        for (const auto& [op, table] : M_.ops)
            if (!is_known_op(op)) report("strata", "unknown operation " + op);
    }

    void entry(const std::string& op, const std::vector<Elem>& in, Elem out) {
        auto s = output_stratum(M_, op, in);
        if (!s) {
            report("stratification", entry_text(M_, op, in) + " has inputs outside the domain");
            return;
        }
        if (out < 0 || static_cast<std::size_t>(out) >= M_.size() || M_.stratum[static_cast<std::size_t>(out)] != *s) {
            report("stratification", entry_text(M_, op, in) + " must lie in D_" + std::to_string(*s));
            return;
        }
        for (std::size_t h = 0; h < M_.H.size(); ++h) {
            std::string why;
            auto want = required_extension(M_, static_cast<int>(h), op, in, &why);
            if (!want) {
                report(constraint_name(op), entry_text(M_, op, in) + ": " + why);
                return;
            }
            if (*want != M_.H[h][static_cast<std::size_t>(out)]) {
                report(constraint_name(op), entry_text(M_, op, in) + " = " + M_.names[static_cast<std::size_t>(out)] +
                                                " violates the clause under H" + std::to_string(h));
                return;
            }
        }
    }

    const Model& M_;
    const ValidationOptions& opt_;
    ValidationReport rep_;
};

}  // namespace detail

inline ValidationReport validate_model(const Model& M, const ValidationOptions& opt = {}) {
    return detail::Validator(M, opt).run();
}

/// Elements of one stratum are told apart by some member of H. Returns the
/// first pair that is not, if any.
inline std::optional<std::pair<Elem, Elem>> type1_witness(const Model& M) {
    std::map<std::pair<int, std::vector<Ext>>, Elem> seen;
    for (std::size_t e = 0; e < M.size(); ++e) {
        if (M.stratum[e] < 0) continue;
        std::vector<Ext> vec;
        for (const auto& h : M.H) vec.push_back(h[e]);
        auto [it, fresh] = seen.emplace(std::make_pair(M.stratum[e], std::move(vec)), static_cast<Elem>(e));
        if (!fresh) return std::make_pair(it->second, static_cast<Elem>(e));
    }
    return std::nullopt;
}

inline bool is_type1(const Model& M) { return !type1_witness(M); }

/// Operations one-to-one, with pairwise disjoint ranges, and no element
/// reachable from itself through the output -> input edges.
inline bool is_type2(const Model& M, std::string* why = nullptr) {
    auto fail = [&](std::string msg) {
        if (why) *why = std::move(msg);
        return false;
    };
    std::map<Elem, std::string> producer;
    std::vector<std::vector<Elem>> edges(M.size());
    for (const auto& [op, table] : M.ops) {
        std::set<Elem> outs;
        for (const auto& [in, out] : table) {
            if (!outs.insert(out).second) return fail(op + " is not one-to-one at " + M.names[static_cast<std::size_t>(out)]);
            auto [it, fresh] = producer.emplace(out, op);
            if (!fresh) return fail("ranges of " + it->second + " and " + op + " overlap");
            for (Elem x : in) edges[static_cast<std::size_t>(out)].push_back(x);
        }
    }
    // 0 unvisited, 1 on stack, 2 done
    std::vector<int> state(M.size(), 0);
    for (std::size_t root = 0; root < M.size(); ++root) {
        if (state[root]) continue;
        std::vector<std::pair<Elem, std::size_t>> stack{{static_cast<Elem>(root), 0}};
        state[root] = 1;
        while (!stack.empty()) {
            auto& [v, k] = stack.back();
            const auto& out = edges[static_cast<std::size_t>(v)];
            if (k == out.size()) {
                state[static_cast<std::size_t>(v)] = 2;
                stack.pop_back();
                continue;
            }
            Elem w = out[k++];
            if (state[static_cast<std::size_t>(w)] == 1) return fail("cycle through " + M.names[static_cast<std::size_t>(w)]);
            if (state[static_cast<std::size_t>(w)] == 0) {
                state[static_cast<std::size_t>(w)] = 1;
                stack.push_back({w, 0});
            }
        }
    }
    return true;
}

}  // namespace prpkit
