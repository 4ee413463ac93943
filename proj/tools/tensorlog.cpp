// tensorlog: evaluate first-order formulas over finite models by tensor
// compilation, and compute transitive closures by matrix equations.
//
// Exit codes: 0 success, 1 internal failure, 2 parse or validation error,
// 3 oracle disagreement under --oracle (or a failed selftest).

#include "tensorlog/compiler.hpp"
#include "tensorlog/datalog.hpp"
#include "tensorlog/error.hpp"
#include "tensorlog/evaluator.hpp"
#include "tensorlog/json_io.hpp"
#include "tensorlog/matrix_io.hpp"
#include "tensorlog/model.hpp"
#include "tensorlog/selftest.hpp"

#include <CLI11.hpp>
#include <Eigen/Core>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace tensorlog;

constexpr int exit_ok = 0;
constexpr int exit_internal = 1;
constexpr int exit_invalid = 2;
constexpr int exit_disagree = 3;

struct FormulaSource
{
    std::string text;
    std::string file;

    Formula load() const { return parse_formula(file.empty() ? text : read_text_file(file)); }
};

void add_formula_options(CLI::App* cmd, FormulaSource& src)
{
    auto* text = cmd->add_option("--formula", src.text, "Closed prenex formula");
    auto* file = cmd->add_option("--formula-file", src.file, "File holding the formula")->check(CLI::ExistingFile);
    text->excludes(file);
    file->excludes(text);
    cmd->callback([text, file] {
        if (text->count() == 0 && file->count() == 0)
            throw CLI::ValidationError("--formula", "one of --formula or --formula-file is required");
    });
}

struct EvalArgs
{
    std::string model;
    FormulaSource formula;
    bool oracle = false;
    bool dump = false;
    bool json = false;
};

int cmd_eval(const EvalArgs& a)
{
    const FiniteModel m = load_model_file(a.model);
    const Formula f = a.formula.load();
    EvalOptions opts;
    opts.keep_intermediates = a.dump;
    const EvalResult r = evaluate(m, compile(m, f), opts);

    std::optional<int> expected;
    if (a.oracle)
        expected = ground_eval(m, f);
    const bool agree = !expected || *expected == r.truth;

    if (a.json) {
        auto out = eval_result_to_json(r);
        if (expected)
            out["oracle"] = {{"truth", *expected}, {"agree", agree}};
        std::cout << out.dump() << '\n';
    } else {
        std::cout << "truth: " << r.truth << '\n'
                  << "raw: " << r.raw << '\n'
                  << "contractions: " << r.stats.contractions << '\n'
                  << "peak_order: " << r.stats.peak_order << '\n'
                  << "wall_ms: " << r.stats.wall_ms << '\n';
        if (expected)
            std::cout << "oracle: " << *expected << (agree ? " (agrees)" : " (DISAGREES)") << '\n';
        for (const auto& [name, t] : r.intermediates)
            std::cout << name << " = " << tensor_to_json(t).dump() << '\n';
    }
    if (!agree) {
        std::cerr << "error: compiled evaluation disagrees with the grounded oracle\n";
        return exit_disagree;
    }
    return exit_ok;
}

struct CompileArgs
{
    std::string model;
    FormulaSource formula;
    std::string out;
};

int cmd_compile(const CompileArgs& a)
{
    const FiniteModel m = load_model_file(a.model);
    const std::string dump = program_to_json(compile(m, a.formula.load())).dump(2) + "\n";
    if (a.out.empty())
        std::cout << dump;
    else
        write_text_file(a.out, dump);
    return exit_ok;
}

struct TcArgs
{
    std::string edges;
    std::string matrix;
    std::optional<std::size_t> n;
    std::string method = "closed";
    double tau = 1e-9;
    std::string out;
    std::string format = "edges";
};

int cmd_tc(const TcArgs& a)
{
    const AdjMatrix r1 = a.edges.empty() ? read_csv_matrix(read_text_file(a.matrix))
                                         : read_edge_list(read_text_file(a.edges), a.n);
    TcConfig cfg;
    cfg.tau = a.tau;
    const TcSolution s = solve_tc(r1, parse_tc_method(a.method), cfg);
    const std::string body = a.format == "csv" ? write_csv_matrix(s.closure) : write_edge_list(s.closure);

    std::ostream& info = a.out.empty() ? std::cerr : std::cout;
    info << "method: " << to_string(s.method) << '\n';
    if (s.method == TcMethod::ClosedForm)
        info << "epsilon: " << s.epsilon << '\n';
    if (s.method == TcMethod::Fixpoint)
        info << "iterations: " << s.iterations << '\n';
    info << "n: " << s.closure.rows() << '\n' << "pairs: " << s.closure.sum() << '\n' << "wall_ms: " << s.wall_ms << '\n';

    if (a.out.empty())
        std::cout << body;
    else
        write_text_file(a.out, body);
    return exit_ok;
}

struct BenchArgs
{
    std::size_t n = 0;
    std::vector<double> pe;
    std::size_t runs = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> methods{"closed"};
    std::string csv;
    std::string out;
};

int cmd_bench(const BenchArgs& a)
{
    BenchOptions opts;
    opts.n = a.n;
    opts.p_e = a.pe;
    opts.runs = a.runs;
    opts.seed = a.seed;
    opts.methods.clear();
    for (const auto& m : a.methods)
        opts.methods.push_back(parse_tc_method(m));
    const BenchReport report = bench_tc(opts);

    const std::string dump = bench_report_to_json(report).dump(2) + "\n";
    if (a.out.empty())
        std::cout << dump;
    else
        write_text_file(a.out, dump);
    if (!a.csv.empty())
        write_text_file(a.csv, bench_report_to_csv(report));
    if (!report.all_agree) {
        std::cerr << "error: closure methods disagree\n";
        return exit_disagree;
    }
    return exit_ok;
}

int cmd_selftest(const SelftestOptions& opts)
{
    const SelftestReport r = run_selftest(opts);
    std::cout << "formula cases: " << r.formula_cases << ", disagreements: " << r.formula_disagreements << '\n'
              << "closure cases: " << r.tc_cases << ", disagreements: " << r.tc_disagreements << '\n';
    for (const auto& f : r.failures)
        std::cout << "  " << f << '\n';
    std::cout << (r.ok() ? "selftest passed" : "selftest FAILED") << '\n';
    return r.ok() ? exit_ok : exit_disagree;
}

void apply_thread_cap()
{
    if (const char* env = std::getenv("TENSORLOG_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n > 0)
                Eigen::setNbThreads(n);
        } catch (const std::exception&) {
            std::cerr << "warning: ignoring TENSORLOG_THREADS='" << env << "'\n";
        }
    }
}

} // namespace

int main(int argc, char** argv)
{
    apply_thread_cap();

    CLI::App app{"Tensor compilation of first-order formulas and matrix transitive closure"};
    app.require_subcommand(1);

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "Evaluate a closed prenex formula over a fact file");
    eval->add_option("--model", eval_args.model, "Fact file")->required()->check(CLI::ExistingFile);
    add_formula_options(eval, eval_args.formula);
    eval->add_flag("--oracle", eval_args.oracle, "Also run the grounded evaluator and compare");
    eval->add_flag("--dump-intermediates", eval_args.dump, "Print every defined tensor");
    eval->add_flag("--json", eval_args.json, "JSON output");

    CompileArgs compile_args;
    auto* comp = app.add_subcommand("compile", "Dump the compiled tensor program as JSON");
    comp->add_option("--model", compile_args.model, "Fact file")->required()->check(CLI::ExistingFile);
    add_formula_options(comp, compile_args.formula);
    comp->add_option("--out", compile_args.out, "Output file (default stdout)");

    TcArgs tc_args;
    auto* tc = app.add_subcommand("tc", "Transitive closure of a binary relation");
    auto* edges = tc->add_option("--edges", tc_args.edges, "Edge list, one 1-based `i j` per line")
                      ->check(CLI::ExistingFile);
    auto* matrix = tc->add_option("--matrix", tc_args.matrix, "Dense 0/1 CSV matrix")->check(CLI::ExistingFile);
    edges->excludes(matrix);
    matrix->excludes(edges);
    tc->add_option("--n", tc_args.n, "Dimension (default: largest index)")->check(CLI::PositiveNumber);
    tc->add_option("--method", tc_args.method, "closed | fixpoint | warshall")
        ->check(CLI::IsMember({"closed", "closed_form", "fixpoint", "warshall"}));
    tc->add_option("--tau", tc_args.tau, "Resolvent threshold")->check(CLI::PositiveNumber);
    tc->add_option("--out", tc_args.out, "Output file (default stdout)");
    tc->add_option("--format", tc_args.format, "edges | csv")->check(CLI::IsMember({"edges", "csv"}));
    tc->callback([edges, matrix] {
        if (edges->count() == 0 && matrix->count() == 0)
            throw CLI::ValidationError("--edges", "one of --edges or --matrix is required");
    });

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Random-matrix closure timing sweep");
    bench->add_option("--n", bench_args.n, "Matrix dimension")->required()->check(CLI::PositiveNumber);
    bench->add_option("--pe", bench_args.pe, "Comma-separated edge probabilities")
        ->required()
        ->delimiter(',')
        ->check(CLI::Range(0.0, 1.0));
    bench->add_option("--runs", bench_args.runs, "Instances per probability")->required()->check(CLI::PositiveNumber);
    bench->add_option("--seed", bench_args.seed, "PRNG seed")->required();
    bench->add_option("--methods", bench_args.methods, "Comma-separated methods")
        ->delimiter(',')
        ->check(CLI::IsMember({"closed", "closed_form", "fixpoint", "warshall"}));
    bench->add_option("--csv", bench_args.csv, "Also write a CSV report");
    bench->add_option("--out", bench_args.out, "JSON report file (default stdout)");

    SelftestOptions self_opts;
    auto* self = app.add_subcommand("selftest", "Run the bundled oracle-equivalence suites");
    self->add_option("--seed", self_opts.seed, "PRNG seed");
    self->add_option("--formulas", self_opts.formula_cases, "Random formula cases");
    self->add_option("--tc-cases", self_opts.tc_cases, "Random closure cases");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_invalid;
    }

    try {
        if (*eval)
            return cmd_eval(eval_args);
        if (*comp)
            return cmd_compile(compile_args);
        if (*tc)
            return cmd_tc(tc_args);
        if (*bench)
            return cmd_bench(bench_args);
        if (*self)
            return cmd_selftest(self_opts);
    } catch (const tensorlog::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_invalid;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return exit_internal;
    }
    return exit_internal;
}
