// Command-line front end: parse, classify, decompose, check-model, eval,
// check-proof, run-corpus.
//
// Exit codes: 0 success or true, 1 false or rejected, 2 usage error or fault.
#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "prpkit/arith.hpp"
#include "prpkit/eval.hpp"
#include "prpkit/model_io.hpp"
#include "prpkit/mutation.hpp"
#include "prpkit/proof.hpp"

using namespace prpkit;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Options {
    bool json = false;
    bool trace = false;
    bool arith = false;
    std::string system;
    std::string fixture;
};

void emit(const Options& o, const json& j, const std::string& text) {
    if (o.json)
        std::cout << j.dump() << "\n";
    else
        std::cout << text << "\n";
}

int fail(const Options& o, const std::string& reason) {
    if (o.json)
        std::cout << json{{"verdict", "error"}, {"reason", reason}}.dump() << "\n";
    else
        std::cerr << "error: " << reason << "\n";
    return 2;
}

ParseOptions parse_opts(const Options& o) {
    ParseOptions p;
    p.arith = o.arith;
    return p;
}

Term read_term(const std::string& text, const Options& o) {
    Signature sig;
    return parse_term(text, sig, parse_opts(o));
}

int cmd_parse(const Options& o, const std::string& text) {
    Signature sig;
    try {
        Formula f = parse_formula(text, sig, parse_opts(o));
        emit(o, {{"verdict", "formula"}, {"expr", to_pretty(f)}}, to_pretty(f));
    } catch (const ParseError&) {
        Term t = read_term(text, o);
        emit(o, {{"verdict", "term"}, {"expr", to_pretty(t)}}, to_pretty(t));
    }
    return 0;
}

int cmd_classify(const Options& o, const std::string& text) {
    Term t = read_term(text, o);
    std::string c = to_string(classify(t));
    emit(o, {{"category", c}, {"expr", to_pretty(t)}}, c);
    return 0;
}

int cmd_decompose(const Options& o, const std::string& text) {
    Term t = read_term(text, o);
    Trace trace;
    DecompExpr e = decompose(t, o.trace ? &trace : nullptr);
    if (o.json) {
        json steps = json::array();
        for (const auto& s : trace) steps.push_back({{"depth", s.depth}, {"category", to_string(s.category)}, {"expr", s.term}});
        json j{{"expr", to_string(e)}, {"category", to_string(classify(t))}};
        if (o.trace) j["trace"] = steps;
        std::cout << j.dump() << "\n";
        return 0;
    }
    for (const auto& s : trace)
        std::cout << std::string(static_cast<std::size_t>(2 * s.depth), ' ') << to_string(s.category) << "  " << s.term << "\n";
    std::cout << to_string(e) << "\n";
    return 0;
}

int cmd_check_model(const Options& o, const std::string& path) {
    Model M = load_model(path);
    ValidationReport r = validate_model(M);
    std::string why;
    bool t2 = is_type2(M, &why);
    json j{{"verdict", r.ok() ? "valid" : "invalid"}, {"type1", is_type1(M)}, {"type2", t2}};
    json viol = json::array();
    for (const auto& v : r.violations) viol.push_back({{"constraint", v.constraint}, {"reason", v.detail}});
    j["violations"] = viol;
    if (o.json) {
        std::cout << j.dump() << "\n";
    } else {
        std::cout << (r.ok() ? "valid" : "invalid") << " (" << M.size() << " elements";
        if (is_type1(M)) std::cout << ", type-1";
        if (t2) std::cout << ", type-2";
        std::cout << ")\n";
        for (const auto& v : r.violations) std::cout << "  " << v.constraint << ": " << v.detail << "\n";
    }
    return r.ok() ? 0 : 1;
}

Assignment parse_assignment(const Model& M, const std::string& text) {
    Assignment A;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("assignment item '" + item + "' is not var=element");
        auto e = M.find(item.substr(eq + 1));
        if (!e) throw std::invalid_argument("no element named '" + item.substr(eq + 1) + "'");
        A[Variable(item.substr(0, eq))] = *e;
    }
    return A;
}

int cmd_eval(const Options& o, const std::string& model_path, const std::string& interp_path, const std::string& assign,
             const std::string& text) {
    json mj = read_json_file(model_path);
    Model M = model_from_json(mj);
    Interpretation I = interpretation_from_json(M, interp_path.empty() ? mj : read_json_file(interp_path));
    Assignment A = parse_assignment(M, assign);
    Signature sig;
    Formula f = parse_formula(text, sig, parse_opts(o));
    try {
        bool v = truth(M, I, A, f);
        emit(o, {{"verdict", v}, {"expr", to_pretty(f)}}, v ? "true" : "false");
        return v ? 0 : 1;
    } catch (const EvalFault& e) {
        return fail(o, std::string("evaluation fault: ") + e.what());
    }
}

int cmd_check_proof(const Options& o, const std::string& path, bool explain) {
    ProofScript s = load_script(path);
    if (!o.system.empty()) {
        auto sys = parse_system(o.system);
        if (!sys) return fail(o, "unknown system " + o.system);
        s.system = *sys;
    }
    Verdict v = check_proof(s);
    std::string word = v.accepted ? "accepted" : "rejected";
    if (o.json) {
        json j{{"verdict", word}, {"line", v.line}, {"reason", v.reason}};
        if (explain) j["explanation"] = v.explanation;
        std::cout << j.dump() << "\n";
    } else {
        if (explain)
            for (const auto& l : v.explanation) std::cout << l << "\n";
        std::cout << word;
        if (!v.accepted) std::cout << " at line " << v.line << ": " << v.reason;
        std::cout << "\n";
    }
    return v.accepted ? 0 : 1;
}

fs::path corpus_root() {
    const char* env = std::getenv("PRPKIT_CORPUS");
    return env && *env ? fs::path(env) : fs::path("corpus");
}

int cmd_run_corpus(const Options& o) {
    fs::path root = corpus_root();
    if (!fs::is_directory(root)) return fail(o, "corpus directory " + root.string() + " not found");
    std::vector<fs::path> scripts;
    for (const auto& e : fs::recursive_directory_iterator(root))
        if (e.path().extension() == ".prf") scripts.push_back(e.path());
    std::sort(scripts.begin(), scripts.end());

    json report = json::array();
    bool all_ok = true;
    auto record = [&](const std::string& kind, const std::string& name, bool ok, json extra) {
        all_ok = all_ok && ok;
        json j{{"kind", kind}, {"name", name}, {"verdict", ok ? "pass" : "fail"}};
        j.update(extra);
        report.push_back(j);
        if (!o.json) {
            std::cout << (ok ? "PASS " : "FAIL ") << kind << " " << name;
            if (extra.contains("reason") && !extra["reason"].get<std::string>().empty())
                std::cout << " -- " << extra["reason"].get<std::string>();
            std::cout << "\n";
        }
    };

    for (const auto& p : scripts) {
        try {
            ProofScript s = load_script(p.string());
            Verdict v = check_proof(s);
            std::size_t survived = 0, total = 0;
            for (const auto& m : script_mutations(s)) {
                ++total;
                survived += check_proof(m.script).accepted;
            }
            std::string reason = v.accepted ? "" : "line " + std::to_string(v.line) + ": " + v.reason;
            if (v.accepted && survived) reason = std::to_string(survived) + " mutation(s) accepted";
            record("proof", p.generic_string(), v.accepted && survived == 0,
                   {{"line", v.line}, {"reason", reason}, {"mutations", total}});
        } catch (const std::exception& e) {
            record("proof", p.generic_string(), false, {{"line", 0}, {"reason", e.what()}});
        }
    }
    if (fs::is_directory(root / "arith"))
        for (const auto& r : arith::run_arith_corpus(root / "arith"))
            record("lemma", r.lemma.statement, r.reproduced,
                   {{"line", r.line}, {"reason", r.reproduced ? "" : "not reproduced: " + r.reason}});

    std::vector<fs::path> fixtures;
    if (!o.fixture.empty()) {
        fixtures.push_back(o.fixture);
    } else {
        fs::path dir = root.parent_path().empty() ? fs::path("fixtures") : root.parent_path() / "fixtures";
        if (fs::is_directory(dir))
            for (const auto& e : fs::directory_iterator(dir))
                if (e.path().extension() == ".json") fixtures.push_back(e.path());
    }
    std::sort(fixtures.begin(), fixtures.end());
    for (const auto& p : fixtures) {
        try {
            Model M = load_model(p.string());
            ValidationReport r = validate_model(M);
            MutationReport mr = run_mutations(M, single_entry_mutants(M));
            std::string reason = r.ok() ? "" : r.violations.front().constraint + ": " + r.violations.front().detail;
            if (r.ok() && mr.unexplained()) reason = std::to_string(mr.unexplained()) + " unexplained mutant(s)";
            record("model", p.generic_string(), r.ok() && mr.unexplained() == 0,
                   {{"reason", reason},
                    {"mutants", mr.outcomes.size()},
                    {"rejected", mr.rejected()},
                    {"preserving", mr.preserving()}});
        } catch (const std::exception& e) {
            record("model", p.generic_string(), false, {{"reason", e.what()}});
        }
    }
    if (o.json) std::cout << report.dump(1) << "\n";
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toolkit for intensional logic: syntax, decomposition, models and proof checking"};
    app.require_subcommand(1);
    Options o;
    app.add_flag("--json", o.json, "Machine-readable output");
    app.add_flag("--trace", o.trace, "Show decomposition steps");
    app.add_flag("--arith", o.arith, "Accept the arithmetic macros 0, S, NN, I, Cong");
    app.add_option("--system", o.system, "Override the proof system (T1, T1Alt, T2, T2PredAx)");
    app.add_option("--fixture", o.fixture, "Model fixture used by run-corpus");

    std::string text, model_path, interp_path, assign, path;
    bool explain = false;

    auto* parse = app.add_subcommand("parse", "Parse and print a formula or term");
    parse->add_option("expr", text)->required();
    auto* cls = app.add_subcommand("classify", "Print the decomposition category of an abstract");
    cls->add_option("term", text)->required();
    auto* dec = app.add_subcommand("decompose", "Decompose an abstract into operations");
    dec->add_option("term", text)->required();
    auto* chk = app.add_subcommand("check-model", "Validate a model file");
    chk->add_option("model", path)->required();
    auto* ev = app.add_subcommand("eval", "Evaluate a formula in a model");
    std::vector<std::string> eval_args;
    ev->add_option("args", eval_args, "<model> [<interpretation>|-] [<assignment x=a,y=b>] <formula>")
        ->required()
        ->expected(2, 4);
    ev->add_option("--interp", interp_path, "Interpretation file (default: the model's own)");
    ev->add_option("--assign", assign, "Assignment, e.g. x=a,y=b");
    auto* prf = app.add_subcommand("check-proof", "Check a proof script");
    prf->add_option("script", path)->required();
    prf->add_flag("--explain", explain, "Print every checked line");
    auto* run = app.add_subcommand("run-corpus", "Check the proof corpus and the fixture models");

    for (auto* sub : {parse, cls, dec, chk, ev, prf, run}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*parse) return cmd_parse(o, text);
        if (*cls) return cmd_classify(o, text);
        if (*dec) return cmd_decompose(o, text);
        if (*chk) return cmd_check_model(o, path);
        if (*ev) {
            model_path = eval_args.front();
            text = eval_args.back();
            if (eval_args.size() == 4) {
                interp_path = eval_args[1];
                assign = eval_args[2];
            } else if (eval_args.size() == 3) {
                (eval_args[1].find('=') != std::string::npos ? assign : interp_path) = eval_args[1];
            }
            if (interp_path == "-") interp_path.clear();
            return cmd_eval(o, model_path, interp_path, assign, text);
        }
        if (*prf) return cmd_check_proof(o, path, explain);
        if (*run) return cmd_run_corpus(o);
    } catch (const std::exception& e) {
        return fail(o, e.what());
    }
    return 2;
}
