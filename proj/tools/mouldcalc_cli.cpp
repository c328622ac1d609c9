// Batch front-end: parse problem files, run mould solves and normalizations,
// emit solution bundles and verification reports with deterministic output.
//
// Exit codes: 0 success, 2 schema error, 3 solver error, 4 verification
// failure. Timing goes to stderr so reports stay byte-identical.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "mouldcalc/json_io.hpp"
#include "mouldcalc/oracle.hpp"

using namespace mouldcalc;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Options {
    std::string input;
    std::string out_dir;
    std::string gauge_file;
    int max_len = -1;
    int order = -1;
    bool deep = false;
    unsigned long seed = 20240801UL;
};

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("json parse failure: ") + e.what());
    }
    return j;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::vector<Rational> omega_from_json(const json& j, const std::string& where) {
    std::vector<Rational> w;
    for (const auto& e : j) w.push_back(io::rational_from_json(e, where));
    return w;
}

Mould gauge_for(const json& problem, const Options& opt, const AlphabetPtr& alphabet,
                int max_len) {
    if (!opt.gauge_file.empty())
        return io::mould_from_json(load_json(opt.gauge_file), alphabet, "gauge file");
    if (!problem.contains("gauge") || problem.at("gauge") == "zero")
        return mould_zero(alphabet, max_len);
    return io::mould_from_json(problem.at("gauge"), alphabet, "gauge");
}

void print_alphabet(std::ostream& os, const Alphabet& a) {
    os << "alphabet: " << a.size() << " letters\n";
    for (LetterId id = 0; id < a.size(); ++id) {
        os << "  letter " << id << ": (";
        const Letter& l = a.letter(id);
        for (std::size_t i = 0; i < l.size(); ++i) os << (i ? "," : "") << l[i];
        os << ")  lambda = " << to_string(a.lambda(id)) << "\n";
    }
}

void print_mould_summary(std::ostream& os, const MouldSolution& sol) {
    os << "mould summary (nonzero entries per length):\n";
    for (int r = 1; r <= sol.max_len; ++r) {
        auto count = [r](const Mould& m) {
            long long c = 0;
            for (const auto& [w, v] : m.entries())
                if (length(w) == r) ++c;
            return c;
        };
        os << "  length " << r << ": F=" << count(sol.F) << " S=" << count(sol.S)
           << " G=" << count(sol.G) << " N=" << count(sol.N) << "\n";
    }
}

int report_exit(bool verified) { return verified ? 0 : 4; }

// ---------------------------------------------------------------- solve-mould

int cmd_solve_mould(const Options& opt) {
    json problem = load_json(opt.input);
    io::check_keys(problem, {"alphabet", "max_len", "gauge"}, "problem");
    int max_len = opt.max_len > 0 ? opt.max_len : problem.value("max_len", 0);
    if (max_len < 0) throw SchemaError("max_len must be nonnegative");
    AlphabetPtr alphabet =
        io::alphabet_from_json(problem.at("alphabet"), std::max(max_len, 1), "alphabet");
    Mould gauge = gauge_for(problem, opt, alphabet, max_len);

    MouldSolution sol = solve(alphabet, gauge, max_len);
    SolutionReport rep = verify_solution(sol);
    ClosedFormReport cf = closed_form_check(sol);

    std::ostringstream os;
    os << "== solve-mould report ==\n";
    os << "input: " << problem.dump() << "\n";
    print_alphabet(os, *alphabet);
    os << "max_len: " << max_len << "\n";
    print_mould_summary(os, sol);
    os << "verification:\n";
    for (const auto& item : rep.items)
        os << "  " << item.name << ": " << (item.ok ? "PASS" : "FAIL")
           << (item.ok || item.detail.empty() ? "" : "  [" + item.detail + "]") << "\n";
    os << "closed forms: " << (cf.ok() ? "PASS" : "FAIL") << " (" << cf.words_checked
       << " words checked, " << cf.words_skipped << " skipped)\n";
    bool ok = rep.all_ok() && cf.ok();
    os << "result: " << (ok ? "PASS" : "FAIL") << "\n";
    std::cout << os.str();

    if (ok && !opt.out_dir.empty()) {
        fs::create_directories(opt.out_dir);
        write_file(fs::path(opt.out_dir) / "F.mould.json", io::mould_to_json(sol.F).dump(2) + "\n");
        write_file(fs::path(opt.out_dir) / "S.mould.json", io::mould_to_json(sol.S).dump(2) + "\n");
        write_file(fs::path(opt.out_dir) / "G.mould.json", io::mould_to_json(sol.G).dump(2) + "\n");
        write_file(fs::path(opt.out_dir) / "N.mould.json", io::mould_to_json(sol.N).dump(2) + "\n");
        write_file(fs::path(opt.out_dir) / "summary.txt", os.str());
    }
    return report_exit(ok);
}

// ------------------------------------------------------------------ normalize

struct NormalizeOutcome {
    bool verified = false;
    std::string report;
    json z, y;
    json moulds;
};

template <LieElement E>
NormalizeOutcome run_normalize(HomogeneousProblem<E>& problem, const Options& opt,
                               const json& problem_json) {
    NormalizeOutcome out;
    Mould gauge = gauge_for(problem_json, opt, problem.alphabet, problem.order - 1);
    NormalFormResult<E> result = normal_form(problem, gauge);
    NormalFormReport check = verify_normal_form(problem, result);

    std::ostringstream os;
    os << "engine order m = " << problem.order << "\n";
    print_alphabet(os, *problem.alphabet);
    print_mould_summary(os, result.moulds);
    os << "Z_m: " << io::element_to_json(result.z).dump() << "\n";
    os << "Y_m: " << io::element_to_json(result.y).dump() << "\n";
    os << "residuals:\n";
    os << "  [X0,Z] == 0 exactly: " << (check.commutation_ok ? "PASS" : "FAIL") << "\n";
    os << "  exp_ad(Y)(X0+B) == X0+Z mod m: " << (check.conjugacy_ok ? "PASS" : "FAIL") << "\n";
    bool deep_ok = true;
    if (opt.deep) {
        E lhs = oracle::direct_conjugacy(result.y, problem.x0 + problem.perturbation(),
                                         problem.order);
        E rhs = truncated(problem.x0 + result.z, problem.order);
        bool conj = (result.y == E{}) ? truncated(problem.x0 + problem.perturbation(),
                                                  problem.order) == rhs
                                      : lhs == rhs;
        os << "  direct-conjugacy oracle: " << (conj ? "PASS" : "FAIL") << "\n";
        deep_ok = deep_ok && conj;
        SolutionReport srep = verify_solution(result.moulds);
        os << "  mould residuals: " << (srep.all_ok() ? "PASS" : "FAIL") << "\n";
        deep_ok = deep_ok && srep.all_ok();
    }
    out.verified = check.all_ok() && deep_ok;
    os << "result: " << (out.verified ? "PASS" : "FAIL") << "\n";
    out.report = os.str();
    out.z = io::element_to_json(result.z);
    out.y = io::element_to_json(result.y);
    out.moulds = io::solution_to_json(result.moulds);
    return out;
}

int cmd_normalize(const Options& opt, bool verify_only) {
    json problem = load_json(opt.input);
    if (!problem.contains("engine")) throw SchemaError("problem needs an engine tag");
    std::string engine = problem.at("engine").get<std::string>();
    int order = opt.order > 0 ? opt.order : problem.value("order", 0);
    if (order < 1) throw SchemaError("order must be >= 1");

    NormalizeOutcome out;
    std::ostringstream head;
    head << "== " << (verify_only ? "verify" : "normalize") << " report ==\n";
    head << "input: " << problem.dump() << "\n";

    if (engine == "pd") {
        io::check_keys(problem, {"engine", "N", "omega", "model", "terms", "order", "gauge",
                                 "real", "deep_verify"},
                       "problem");
        int nvars = problem.at("N").get<int>();
        auto b = io::pd_terms_from_json(problem.at("terms"), nvars, "pd");
        engines::PdProblem pd;
        if (problem.contains("model")) {
            std::vector<Letter> modes;
            for (const auto& [key, c] : b.terms()) {
                IntVec n(key.second.begin(), key.second.end());
                n[key.first] -= 1;
                modes.push_back(std::move(n));
            }
            FrequencyModel model =
                io::model_from_json(problem.at("model"), modes, order - 1, "pd");
            pd = engines::pd_decompose(model, b, order);
        } else {
            pd = engines::pd_decompose(omega_from_json(problem.at("omega"), "pd.omega"), b,
                                       order);
        }
        out = run_normalize(pd.problem, opt, problem);
    } else if (engine == "birkhoff") {
        io::check_keys(problem, {"engine", "d", "omega", "model", "grading", "vars", "terms",
                                 "order", "gauge", "real", "deep_verify"},
                       "problem");
        int d = problem.at("d").get<int>();
        auto grading = problem.value("grading", std::string("eps")) == "degree"
                           ? engines::HamGrading::Degree
                           : engines::HamGrading::Epsilon;
        auto b = io::birkhoff_terms_from_json(problem.at("terms"), d, grading,
                                              problem.value("vars", std::string("zw")),
                                              "birkhoff");
        bool real = problem.value("real", false);
        engines::BirkhoffProblem bp;
        if (problem.contains("model")) {
            std::vector<Letter> modes;
            for (const auto& n : engines::element_modes(b)) modes.push_back(n);
            FrequencyModel model =
                io::model_from_json(problem.at("model"), modes, order - 1, "birkhoff");
            bp = engines::birkhoff_decompose(model, b, order, real);
        } else {
            bp = engines::birkhoff_decompose(
                omega_from_json(problem.at("omega"), "birkhoff.omega"), b, order, real);
        }
        out = run_normalize(bp.problem, opt, problem);
    } else if (engine == "averaging") {
        io::check_keys(problem, {"engine", "d", "nslow", "hamiltonian", "omega", "model",
                                 "terms", "order", "gauge", "real", "deep_verify"},
                       "problem");
        int d = problem.at("d").get<int>();
        int nslow = problem.value("nslow", d);
        bool ham = problem.value("hamiltonian", false);
        auto b = io::trig_terms_from_json(problem.at("terms"), d, nslow, ham, "averaging");
        bool real = problem.value("real", false);
        engines::AveragingProblem ap;
        if (problem.contains("model")) {
            std::vector<Letter> modes;
            for (const auto& n : engines::element_modes(b)) modes.push_back(n);
            FrequencyModel model =
                io::model_from_json(problem.at("model"), modes, order - 1, "averaging");
            ap = engines::averaging_decompose(model, b, order, real);
        } else {
            ap = engines::averaging_decompose(
                omega_from_json(problem.at("omega"), "averaging.omega"), b, order, real);
        }
        out = run_normalize(ap.problem, opt, problem);
    } else if (engine == "quantum") {
        io::check_keys(problem, {"engine", "energies", "hbar", "matrices", "order", "gauge",
                                 "real", "deep_verify"},
                       "problem");
        std::vector<Scalar> energies;
        for (const auto& e : problem.at("energies"))
            energies.push_back(io::scalar_from_json(e, "energies"));
        Rational hbar = io::rational_from_json(problem.value("hbar", json("1")), "hbar");
        auto b = io::matrices_from_json(problem.at("matrices"),
                                        static_cast<int>(energies.size()), hbar, "quantum");
        if (problem.value("real", false) && !engines::is_symmetric(b))
            throw RealnessViolation("quantum perturbation is not symmetric");
        engines::QuantumProblem qp = engines::quantum_decompose(energies, hbar, b, order);
        out = run_normalize(qp.problem, opt, problem);
    } else {
        throw SchemaError("unknown engine \"" + engine + "\"");
    }

    std::cout << head.str() << out.report;
    if (out.verified && !verify_only && !opt.out_dir.empty()) {
        fs::create_directories(opt.out_dir);
        write_file(fs::path(opt.out_dir) / "Z.element.json", out.z.dump(2) + "\n");
        write_file(fs::path(opt.out_dir) / "Y.element.json", out.y.dump(2) + "\n");
        write_file(fs::path(opt.out_dir) / "moulds.json", out.moulds.dump(2) + "\n");
        write_file(fs::path(opt.out_dir) / "report.txt", head.str() + out.report);
    }
    return report_exit(out.verified);
}

// -------------------------------------------------------------- semiclassical

int cmd_semiclassical(const Options& opt) {
    json problem = load_json(opt.input);
    io::check_keys(problem, {"engine", "d", "omega", "terms", "order"}, "problem");
    if (problem.value("engine", std::string("moyal")) != "moyal")
        throw SchemaError("semiclassical expects a moyal problem");
    int d = problem.at("d").get<int>();
    int order = opt.order > 0 ? opt.order : problem.value("order", 0);
    if (order < 1) throw SchemaError("order must be >= 1");
    auto omega = omega_from_json(problem.at("omega"), "omega");
    if (static_cast<int>(omega.size()) != d) throw SchemaError("omega must have d entries");
    auto b = io::symbol_terms_from_json(problem.at("terms"), d, "moyal");

    engines::SemiclassicalReport rep = engines::semiclassical_compare(omega, b, order);

    std::ostringstream os;
    os << "== semiclassical report ==\n";
    os << "input: " << problem.dump() << "\n";
    os << "eps order | Z_cl | Z_qu at hbar=0 | hbar corrections | equal\n";
    for (const auto& row : rep.rows)
        os << "  eps^" << row.eps << " | " << row.classical << " | " << row.quantum_h0 << " | "
           << row.corrections << " | " << (row.equal ? "yes" : "NO") << "\n";
    os << "classical normal form residuals: " << (rep.classical_ok ? "PASS" : "FAIL") << "\n";
    os << "quantum normal form residuals: " << (rep.quantum_ok ? "PASS" : "FAIL") << "\n";
    os << "termwise equality at hbar=0: " << (rep.termwise_equal ? "PASS" : "FAIL") << "\n";
    os << "corrections even in hbar: " << (rep.corrections_even_in_hbar ? "PASS" : "FAIL")
       << "\n";
    os << "result: " << (rep.ok() ? "PASS" : "FAIL") << "\n";
    std::cout << os.str();

    if (rep.ok() && !opt.out_dir.empty()) {
        fs::create_directories(opt.out_dir);
        write_file(fs::path(opt.out_dir) / "Z_classical.element.json",
                   io::element_to_json(rep.z_classical).dump(2) + "\n");
        write_file(fs::path(opt.out_dir) / "Z_quantum.element.json",
                   io::element_to_json(rep.z_quantum).dump(2) + "\n");
        write_file(fs::path(opt.out_dir) / "report.txt", os.str());
    }
    return report_exit(rep.ok());
}

// ----------------------------------------------------------------------- show

int cmd_show(const Options& opt) {
    json j = load_json(opt.input);
    std::cout << j.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact mould-calculus normal forms"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd, bool with_outdir = true) {
        cmd->add_option("input", opt.input, "problem JSON file")->required();
        if (with_outdir) cmd->add_option("--out-dir", opt.out_dir, "output directory");
        cmd->add_option("--seed", opt.seed, "seed for randomized deep checks");
    };

    CLI::App* solve_cmd = app.add_subcommand("solve-mould", "solve the mould equation");
    add_common(solve_cmd);
    solve_cmd->add_option("--max-len", opt.max_len, "truncation length override");
    solve_cmd->add_option("--gauge", opt.gauge_file, "gauge generator mould JSON");

    CLI::App* norm_cmd = app.add_subcommand("normalize", "normalize an engine problem");
    add_common(norm_cmd);
    norm_cmd->add_option("--order", opt.order, "truncation order override");
    norm_cmd->add_option("--gauge", opt.gauge_file, "gauge generator mould JSON");
    norm_cmd->add_flag("--deep", opt.deep, "run the slow independent oracles");

    CLI::App* verify_cmd = app.add_subcommand("verify", "recompute and verify a problem");
    add_common(verify_cmd, false);
    verify_cmd->add_option("--order", opt.order, "truncation order override");
    verify_cmd->add_option("--gauge", opt.gauge_file, "gauge generator mould JSON");
    verify_cmd->add_flag("--deep", opt.deep, "run the slow independent oracles");

    CLI::App* semi_cmd = app.add_subcommand("semiclassical", "compare quantum and classical");
    add_common(semi_cmd);
    semi_cmd->add_option("--order", opt.order, "truncation order override");

    CLI::App* show_cmd = app.add_subcommand("show", "pretty-print a JSON artifact");
    show_cmd->add_option("input", opt.input, "file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    auto started = std::chrono::steady_clock::now();
    int code = 0;
    try {
        if (solve_cmd->parsed()) code = cmd_solve_mould(opt);
        else if (norm_cmd->parsed()) code = cmd_normalize(opt, false);
        else if (verify_cmd->parsed()) code = cmd_normalize(opt, true);
        else if (semi_cmd->parsed()) code = cmd_semiclassical(opt);
        else if (show_cmd->parsed()) code = cmd_show(opt);
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        code = 2;
    } catch (const Error& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        code = 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        code = 3;
    }
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
    std::cerr << "elapsed: " << elapsed << " ms\n";
    return code;
}
