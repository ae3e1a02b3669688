#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

#include "qcorpus/io.hpp"

using namespace qcorpus;
namespace fs = std::filesystem;

namespace {

const fs::path kDataDir = QCORPUS_DATA_DIR;
const std::string kCli = QCORPUS_CLI_PATH;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        std::mt19937_64 rng(std::random_device{}());
        const fs::path p =
            fs::temp_directory_path() / ("qcorpus_cli_" + std::to_string(rng()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunResult run_cli(const std::string& args) {
    const fs::path out = scratch_dir() / "stdout.txt";
    const fs::path err = scratch_dir() / "stderr.txt";
    const std::string cmd =
        "\"" + kCli + "\" " + args + " > \"" + out.string() + "\" 2> \"" + err.string() + "\"";
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::string quoted(const fs::path& p) { return "\"" + p.string() + "\""; }

} // namespace

TEST_CASE("chsh command on the bundled experiments") {
    RunResult r = run_cli("chsh --experiment " + quoted(kDataDir / "google_books.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("3.41 at two decimals") != std::string::npos);
    CHECK(r.out.find("ExceedsTsirelson") != std::string::npos);

    r = run_cli("chsh --experiment " + quoted(kDataDir / "collocates.json") + " --format json");
    CHECK(r.exit_code == 0);
    const json report = json::parse(r.out);
    CHECK(report["S"].get<double>() == doctest::Approx(2.8).epsilon(1e-12));
    CHECK(report["classification"] == "ViolatedWithinTsirelson");
    CHECK(report["E"]["ApB"].get<double>() == doctest::Approx(-0.2).epsilon(1e-12));
}

TEST_CASE("count command reproduces the fixture corpora") {
    const fs::path out = scratch_dir() / "fixture_gb.json";
    RunResult r = run_cli("count --corpus " + quoted(kDataDir / "fixtures/google_books_exact") +
                          " --query " + quoted(kDataDir / "animal_acts_exact.json") +
                          " --name fixture --out " + quoted(out));
    CHECK(r.exit_code == 0);
    const ExperimentSuite suite = load_experiment(out);
    CHECK(suite.table(Setting::AB).cells[1].count == 464);
    CHECK(suite.table(Setting::ApBp).cells[3].count == 331);

    // The written experiment feeds straight back into chsh.
    r = run_cli("chsh --experiment " + quoted(out) + " --format json");
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.out)["S"].get<double>() == doctest::Approx(3.4058).epsilon(5e-4));

    // Window metadata is echoed for collocate counting (default 9).
    const fs::path coll_out = scratch_dir() / "fixture_coll.json";
    r = run_cli("count --corpus " + quoted(kDataDir / "fixtures/collocates_window9") +
                " --query " + quoted(kDataDir / "animal_acts_collocates.json") + " --out " +
                quoted(coll_out));
    CHECK(r.exit_code == 0);
    const json coll = load_json_file(coll_out);
    CHECK(coll["window"] == 9);
    CHECK(coll["tables"]["ApB"][0]["count"] == 4);
    CHECK(coll["tables"]["ApB"][2]["count"] == 6);
}

TEST_CASE("serial counting matches the default parallel path") {
    const fs::path par = scratch_dir() / "par.json";
    const fs::path ser = scratch_dir() / "ser.json";
    const std::string base = "count --corpus " + quoted(kDataDir / "fixtures/collocates_window9") +
                             " --query " + quoted(kDataDir / "animal_acts_collocates.json") +
                             " --name same ";
    CHECK(run_cli(base + "--out " + quoted(par)).exit_code == 0);
    CHECK(run_cli(base + "--serial --out " + quoted(ser)).exit_code == 0);
    CHECK(slurp(par) == slurp(ser));
}

TEST_CASE("count command fails cleanly on an empty corpus") {
    const fs::path empty = scratch_dir() / "empty_corpus";
    fs::create_directories(empty);
    const RunResult r = run_cli("count --corpus " + quoted(empty) + " --query " +
                                quoted(kDataDir / "animal_acts_exact.json"));
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("empty coincidence operation") != std::string::npos);
}

TEST_CASE("solve command writes a verifiable solution") {
    const fs::path sol = scratch_dir() / "gb_solution.json";
    RunResult r = run_cli("solve --experiment " + quoted(kDataDir / "google_books.json") +
                          " --solver ansatz --out " + quoted(sol));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("EntangledMeasurement (2 product, 2 entangled eigenstates)") !=
          std::string::npos);

    r = run_cli("verify --solution " + quoted(sol) + " --experiment " +
                quoted(kDataDir / "google_books.json") + " --profile strict");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("overall: PASS") != std::string::npos);
}

TEST_CASE("solve command rejects the ansatz off its domain") {
    // A table without two zero cells: ansatz alone fails, auto falls back.
    const fs::path exp = scratch_dir() / "interior.json";
    json j = load_json_file(kDataDir / "collocates.json");
    j["tables"]["AB"][0]["probability"] = 0.1;
    j["tables"]["AB"][1]["probability"] = 0.5;
    j["tables"]["AB"][2]["probability"] = 0.3;
    j["tables"]["AB"][3]["probability"] = 0.1;
    write_text_file(exp, canonical_dump(j));

    RunResult r = run_cli("solve --experiment " + quoted(exp) + " --solver ansatz");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("ansatz inapplicable") != std::string::npos);

    r = run_cli("solve --experiment " + quoted(exp) + " --solver auto");
    CHECK(r.exit_code == 0);
}

TEST_CASE("verify command distinguishes the corrected and printed solutions") {
    RunResult r = run_cli("verify --solution " + quoted(kDataDir / "google_books_solution.json") +
                          " --experiment " + quoted(kDataDir / "google_books.json") +
                          " --profile quoted --format json");
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.out)["pass"] == true);

    // Reinstate the printed eigenvector: verification must fail and name it.
    json sol = load_json_file(kDataDir / "google_books_solution.json");
    sol["families"]["ApBp"]["eigenvectors"][1] =
        json::array({json::array({0, 0}), json::array({0, 0}), json::array({-1, 0}),
                     json::array({0, 0})});
    const fs::path printed = scratch_dir() / "printed.json";
    write_text_file(printed, canonical_dump(sol));

    r = run_cli("verify --solution " + quoted(printed) + " --experiment " +
                quoted(kDataDir / "google_books.json") + " --profile quoted");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("tiger meows") != std::string::npos);
    CHECK(r.out.find("overall: FAIL") != std::string::npos);
}

TEST_CASE("roundtrip command closes data -> model -> chsh") {
    RunResult r = run_cli("roundtrip --experiment " + quoted(kDataDir / "collocates.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("roundtrip: PASS") != std::string::npos);

    r = run_cli("roundtrip --experiment " + quoted(kDataDir / "google_books.json") +
                " --solver constructive --format json");
    CHECK(r.exit_code == 0);
    const json report = json::parse(r.out);
    CHECK(report["pass"] == true);
    CHECK(report["statistic_gap"].get<double>() <= 1e-9);
}

TEST_CASE("malformed input exits with code 2") {
    const fs::path bad = scratch_dir() / "bad.json";
    write_text_file(bad, "{ nope");
    RunResult r = run_cli("chsh --experiment " + quoted(bad));
    CHECK(r.exit_code == 2);
    r = run_cli("chsh --experiment " + quoted(scratch_dir() / "missing.json"));
    CHECK(r.exit_code == 2);
    r = run_cli("chsh");
    CHECK(r.exit_code == 2);
}
