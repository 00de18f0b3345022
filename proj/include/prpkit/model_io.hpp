// JSON model and interpretation files.
//
//   { "strata": {"-1": [...], "0": [...], "1": [...], ...},
//     "id": "<name>",
//     "ops": {"n": [[in, out], ...], "a": [[x, y, out], ...], "p0": [[d, d', out], ...], ...},
//     "H": [ {"<D_0 name>": true, "<D_i name>": [[x1..xi], ...], ...}, ... ],
//     "G": <index into H> }
//
// D_-1 elements are left out of the H tables (every H is the identity there).
#pragma once

#include <fstream>
#include <sstream>

#include "eval.hpp"
#include "json.hpp"
#include "model.hpp"

namespace prpkit {

class ModelFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline Elem element_named(const std::map<std::string, Elem>& index, const nlohmann::json& j) {
    if (!j.is_string()) throw ModelFormatError("expected an element name, got " + j.dump());
    auto it = index.find(j.get<std::string>());
    if (it == index.end()) throw ModelFormatError("unknown element '" + j.get<std::string>() + "'");
    return it->second;
}

}  // namespace detail

inline Model model_from_json(const nlohmann::json& j) {
    Model M;
    std::map<std::string, Elem> index;
    try {
        std::map<int, nlohmann::json> by_stratum;
        for (const auto& [key, names] : j.at("strata").items()) by_stratum[std::stoi(key)] = names;
        for (const auto& [s, names] : by_stratum)
            for (const auto& n : names) {
                std::string name = n.get<std::string>();
                if (index.count(name)) throw ModelFormatError("element '" + name + "' listed twice");
                index[name] = M.add(name, s);
            }
        M.id = detail::element_named(index, j.at("id"));
        M.G = j.at("G").get<int>();
        for (const auto& hj : j.at("H")) {
            std::vector<Ext> table(M.size());
            for (const auto& [name, val] : hj.items()) {
                Elem e = detail::element_named(index, nlohmann::json(name));
                int s = M.stratum[static_cast<std::size_t>(e)];
                std::vector<std::uint64_t> codes;
                if (s < 0) throw ModelFormatError("H entry given for D_-1 element '" + name + "'");
                if (s == 0) {
                    if (!val.is_boolean()) throw ModelFormatError("D_0 element '" + name + "' needs a boolean");
                    if (val.get<bool>()) codes.push_back(0);
                } else {
                    for (const auto& tj : val) {
                        Tuple t;
                        for (const auto& x : tj) t.push_back(detail::element_named(index, x));
                        if (static_cast<int>(t.size()) != s)
                            throw ModelFormatError("tuple of wrong length in H(" + name + ")");
                        codes.push_back(M.encode(t));
                    }
                }
                table[static_cast<std::size_t>(e)] = make_ext(std::move(codes));
            }
            M.H.push_back(std::move(table));
        }
        for (const auto& [op, entries] : j.at("ops").items()) {
            if (!is_known_op(op)) throw ModelFormatError("unknown operation '" + op + "'");
            auto& table = M.ops[op];
            for (const auto& row : entries) {
                if (row.size() != op_arity(op) + 1) throw ModelFormatError("malformed entry in " + op);
                std::vector<Elem> in;
                for (std::size_t k = 0; k + 1 < row.size(); ++k) in.push_back(detail::element_named(index, row[k]));
                if (!table.emplace(in, detail::element_named(index, row.back())).second)
                    throw ModelFormatError("duplicate entry in " + op);
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ModelFormatError(std::string("malformed model file: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw ModelFormatError("malformed stratum key");
    }
    return M;
}

inline nlohmann::json model_to_json(const Model& M) {
    nlohmann::json j;
    std::map<int, std::vector<std::string>> strata;
    for (std::size_t e = 0; e < M.size(); ++e) strata[M.stratum[e]].push_back(M.names[e]);
    j["strata"] = nlohmann::json::object();
    for (const auto& [s, names] : strata) j["strata"][std::to_string(s)] = names;
    j["id"] = M.id >= 0 ? nlohmann::json(M.names[static_cast<std::size_t>(M.id)]) : nlohmann::json();
    j["G"] = M.G;
    j["H"] = nlohmann::json::array();
    for (const auto& table : M.H) {
        nlohmann::json hj = nlohmann::json::object();
        for (std::size_t e = 0; e < M.size(); ++e) {
            int s = M.stratum[e];
            if (s < 0) continue;
            if (s == 0) {
                hj[M.names[e]] = !table[e].empty();
                continue;
            }
            nlohmann::json tuples = nlohmann::json::array();
            for (auto c : table[e]) {
                nlohmann::json t = nlohmann::json::array();
                for (Elem x : M.decode(c, s)) t.push_back(M.names[static_cast<std::size_t>(x)]);
                tuples.push_back(std::move(t));
            }
            hj[M.names[e]] = std::move(tuples);
        }
        j["H"].push_back(std::move(hj));
    }
    j["ops"] = nlohmann::json::object();
    for (const auto& [op, table] : M.ops) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& [in, out] : table) {
            nlohmann::json row = nlohmann::json::array();
            for (Elem x : in) row.push_back(M.names[static_cast<std::size_t>(x)]);
            row.push_back(M.names[static_cast<std::size_t>(out)]);
            rows.push_back(std::move(row));
        }
        j["ops"][op] = std::move(rows);
    }
    return j;
}

inline nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelFormatError("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ModelFormatError(path + ": " + e.what());
    }
}

inline Model load_model(const std::string& path) { return model_from_json(read_json_file(path)); }

/// Reads {"F": "<element>", ...}, either as the whole document or from its
/// "interpretation" field.
inline Interpretation interpretation_from_json(const Model& M, const nlohmann::json& j) {
    const nlohmann::json& src = j.contains("interpretation") ? j.at("interpretation") : j;
    if (!src.is_object()) throw ModelFormatError("interpretation must be an object");
    Interpretation I;
    for (const auto& [pred, val] : src.items()) {
        if (!val.is_string()) throw ModelFormatError("interpretation of " + pred + " must be an element name");
        auto e = M.find(val.get<std::string>());
        if (!e) throw ModelFormatError("unknown element '" + val.get<std::string>() + "'");
        I[pred] = *e;
    }
    return I;
}

inline void save_model(const Model& M, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ModelFormatError("cannot write " + path);
    out << model_to_json(M).dump() << "\n";
}

}  // namespace prpkit
