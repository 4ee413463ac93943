#include "tensorlog/matrix_io.hpp"
#include "tensorlog/model.hpp"
#include "tensorlog/selftest.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using namespace tensorlog;
using nlohmann::json;

namespace {

const std::string data = TENSORLOG_TEST_DATA;

struct Run
{
    int status = -1;
    std::string out;
    std::string err;
};

struct ScratchDir
{
    fs::path path = fs::temp_directory_path() / ("tensorlog_cli_" + std::to_string(::getpid()));

    ScratchDir() { fs::create_directories(path); }
    ~ScratchDir()
    {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

fs::path scratch()
{
    static const ScratchDir dir;
    return dir.path;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Run run(const std::string& args)
{
    const fs::path out = scratch() / "stdout.txt", err = scratch() / "stderr.txt";
    const std::string cmd = std::string(TENSORLOG_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
    const int raw = std::system(cmd.c_str());
    Run r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

const char* const fabcd = "'all X some Y (a(X,Y) & b(X)) | (c(X,Y) & d(Y))'";

} // namespace

TEST_CASE("eval the worked example")
{
    Run r = run("eval --model " + data + "/fabcd.facts --formula " + fabcd + " --json");
    REQUIRE(r.status == 0);
    json j = json::parse(r.out);
    CHECK(j["truth"] == 1);
    CHECK(j["raw"] == 1.0);
    CHECK(j["stats"].contains("contractions"));

    r = run("eval --model " + data + "/fabcd_false.facts --formula-file " + data + "/fabcd.formula --oracle");
    CHECK(r.status == 0);
    CHECK(r.out.find("truth: 0") != std::string::npos);
    CHECK(r.out.find("(agrees)") != std::string::npos);
}

TEST_CASE("eval dumps intermediates")
{
    Run r = run("eval --model " + data + "/fabcd.facts --formula " + fabcd + " --json --dump-intermediates");
    REQUIRE(r.status == 0);
    json j = json::parse(r.out);
    CHECK(j["intermediates"].size() == 4);
}

TEST_CASE("eval with the oracle on random cases")
{
    std::mt19937_64 rng(71);
    for (int i = 0; i < 50; ++i) {
        FormulaCase c = random_formula_case(rng);
        const fs::path model = scratch() / "case.facts", formula = scratch() / "case.formula";
        write_text_file(model.string(), save_model(c.model));
        write_text_file(formula.string(), to_string(c.formula) + "\n");
        Run r = run("eval --model " + model.string() + " --formula-file " + formula.string() + " --oracle --json");
        INFO(to_string(c.formula));
        REQUIRE(r.status == 0);
        json j = json::parse(r.out);
        CHECK(j["oracle"]["agree"] == true);
        CHECK(j["truth"] == ground_eval(c.model, c.formula));
    }
}

TEST_CASE("eval exit codes for bad input")
{
    CHECK(run("eval --model " + data + "/does_not_exist.facts --formula 'some X p(X)'").status == 2);
    CHECK(run("eval --model " + data + "/fabcd.facts --formula 'some X a(X'").status == 2);
    CHECK(run("eval --model " + data + "/fabcd.facts --formula 'some X zz(X)'").status == 2);
    CHECK(run("eval --model " + data + "/fabcd.facts --formula 'a(X,e1)'").status == 2);
    CHECK(run("eval --model " + data + "/fabcd.facts").status == 2);
    CHECK(run("").status == 2);
    CHECK(run("frobnicate").status == 2);
    CHECK(run("--help").status == 0);
}

TEST_CASE("compile writes the program")
{
    const fs::path out = scratch() / "program.json";
    Run r = run("compile --model " + data + "/fabcd.facts --formula " + fabcd + " --out " + out.string());
    REQUIRE(r.status == 0);
    json j = json::parse(slurp(out));
    REQUIRE(j["definitions"].size() == 4);
    CHECK(j["definitions"][1]["operands"][0]["tensor"] == "c");
    CHECK(j["definitions"][1]["operands"][0]["mode"] == 2);
    CHECK(j["definitions"][3]["quantifier"] == "forall");
    CHECK(j["root"]["kind"] == "cnf");
}

TEST_CASE("tc on a chain")
{
    const fs::path out = scratch() / "closure.edges";
    Run r = run("tc --edges " + data + "/chain.edges --out " + out.string());
    REQUIRE(r.status == 0);
    CHECK(r.out.find("epsilon: 0.5") != std::string::npos);
    AdjMatrix c = read_edge_list(slurp(out), 4);
    CHECK(c.sum() == 6.0);
    CHECK(c(0, 2) == 1.0);
    CHECK(c(0, 3) == 1.0);
    CHECK(c(1, 3) == 1.0);
}

TEST_CASE("tc methods produce identical files")
{
    const fs::path closed = scratch() / "closed.csv", warshall = scratch() / "warshall.csv";
    const fs::path fix = scratch() / "fixpoint.csv";
    REQUIRE(run("tc --matrix " + data + "/cycle.csv --method closed --format csv --out " + closed.string()).status == 0);
    REQUIRE(run("tc --matrix " + data + "/cycle.csv --method warshall --format csv --out " + warshall.string()).status
            == 0);
    REQUIRE(run("tc --matrix " + data + "/cycle.csv --method fixpoint --format csv --out " + fix.string()).status
            == 0);
    CHECK(slurp(closed) == slurp(warshall));
    CHECK(slurp(fix) == slurp(warshall));
    CHECK(read_csv_matrix(slurp(closed)) == AdjMatrix::Ones(3, 3));
}

TEST_CASE("tc on an empty edge file")
{
    Run r = run("tc --edges " + data + "/empty.edges --n 4 --format csv");
    REQUIRE(r.status == 0);
    CHECK(read_csv_matrix(r.out) == AdjMatrix::Zero(4, 4));
    CHECK(run("tc --edges " + data + "/empty.edges").status == 2);
    CHECK(run("tc --edges " + data + "/chain.edges --method nope").status == 2);
    CHECK(run("tc --edges " + data + "/fabcd.facts").status == 2);
}

TEST_CASE("bench report")
{
    const fs::path csv = scratch() / "bench.csv";
    Run r = run("bench --n 10 --pe 0.5 --runs 3 --seed 4 --methods closed,fixpoint,warshall --csv " + csv.string());
    REQUIRE(r.status == 0);
    json j = json::parse(r.out);
    REQUIRE(j["rows"].size() == 3);
    CHECK(j["all_agree"] == true);
    const std::string table = slurp(csv);
    CHECK(table.rfind("n,p_e,method,mean_ms,std_ms,runs,seed\n", 0) == 0);
    CHECK(std::count(table.begin(), table.end(), '\n') == 4);

    CHECK(run("bench --n 10 --pe 0.5 --runs 0 --seed 4").status == 2);
    CHECK(run("bench --n 10 --pe 1.5 --runs 1 --seed 4").status == 2);
    CHECK(run("bench --n 10 --pe 0.5 --runs 1").status == 2);
}

TEST_CASE("bench is deterministic apart from timings")
{
    auto strip = [](json j) {
        for (auto& row : j["rows"]) {
            row.erase("mean_ms");
            row.erase("std_ms");
        }
        return j.dump();
    };
    Run a = run("bench --n 20 --pe 0.1,0.3 --runs 2 --seed 5 --methods closed,warshall");
    Run b = run("bench --n 20 --pe 0.1,0.3 --runs 2 --seed 5 --methods closed,warshall");
    REQUIRE(a.status == 0);
    REQUIRE(b.status == 0);
    CHECK(strip(json::parse(a.out)) == strip(json::parse(b.out)));
}

TEST_CASE("selftest")
{
    Run r = run("selftest --seed 3 --formulas 20 --tc-cases 10");
    CHECK(r.status == 0);
    CHECK(r.out.find("selftest passed") != std::string::npos);
}

TEST_CASE("thread cap is accepted")
{
    const std::string cmd = std::string("TENSORLOG_THREADS=1 ") + TENSORLOG_CLI + " tc --edges " + data
                            + "/chain.edges >/dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    CHECK(WIFEXITED(raw));
    CHECK(WEXITSTATUS(raw) == 0);
}
