// qcorpus: CHSH statistics and complex Hilbert-space models for word
// co-occurrence experiments.
//
// Pipeline: count word pairs in a corpus (exact bigrams or collocate
// windows), compute the four expectation values and the CHSH combination,
// fit a spectral family per setting that reproduces the observed
// probabilities at a fixed pre-measurement state via the Born rule, and
// verify/classify the result.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcorpus/chsh.hpp"
#include "qcorpus/counting.hpp"
#include "qcorpus/entanglement.hpp"
#include "qcorpus/errors.hpp"
#include "qcorpus/io.hpp"
#include "qcorpus/solver.hpp"

namespace {

using namespace qcorpus;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitInputError = 2;

struct ProfileOption {
    std::string name = "strict";

    const ToleranceProfile& get() const { return name == "quoted" ? kQuoted : kStrict; }
};

void emit(const json& j, const std::string& out_path) {
    const std::string text = canonical_dump(j);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_text_file(out_path, text);
    }
}

Vec4 resolve_state(const std::string& state_arg) {
    if (state_arg == "singlet") return singlet_state();
    return load_state(state_arg);
}

struct SolveOutcome {
    ModelSolution solution;
    VerificationReport verification;
};

SolveOutcome solve_experiment(const ExperimentSuite& suite, const Vec4& state,
                              const std::string& solver) {
    ModelSolution solution;
    solution.state = state;

    bool all_ansatz = true;
    for (Setting s : kSettings) {
        const CoincidenceTable& table = suite.table(s);
        std::array<double, 4> target{};
        std::array<double, 4> outcomes{};
        for (std::size_t k = 0; k < 4; ++k) {
            target[k] = table.cells[k].probability;
            outcomes[k] = table.cells[k].sign;
        }
        if (solver == "constructive") {
            solution.family(s) = solve_constructive(state, target, s, outcomes);
            all_ansatz = false;
        } else if (solver == "ansatz") {
            solution.family(s) = solve_ansatz(state, target, {}, s, outcomes);
        } else { // auto: structured shape where it applies, reflection otherwise
            try {
                solution.family(s) = solve_ansatz(state, target, {}, s, outcomes);
            } catch (const SolveError&) {
                solution.family(s) = solve_constructive(state, target, s, outcomes);
                all_ansatz = false;
            }
        }
    }
    solution.provenance = all_ansatz ? Provenance::AnsatzSolve : Provenance::ConstructiveSolve;

    SolveOutcome outcome{std::move(solution), {}};
    outcome.verification = verify_solution(outcome.solution, suite, kStrict);
    return outcome;
}

int cmd_count(const std::string& corpus_dir, const std::string& query_path,
              const std::string& name, std::optional<int> window_override, bool serial,
              const std::string& format, const std::string& out_path) {
    QuerySet queries = load_query(query_path);
    if (window_override) queries.window = *window_override;

    const std::vector<TokenStream> docs = load_corpus_dir(corpus_dir, !serial);
    const std::string suite_name =
        name.empty() ? std::filesystem::path(corpus_dir).filename().string() : name;
    const ExperimentSuite suite = build_suite(docs, queries, suite_name, !serial);

    if (format == "text") {
        std::cout << "corpus: " << corpus_dir << " (" << docs.size() << " documents)\n";
        std::cout << "mode: " << mode_key(suite.mode);
        if (suite.mode == Mode::Collocates) std::cout << ", window " << queries.window;
        std::cout << "\n";
        for (Setting s : kSettings) {
            std::cout << "setting " << setting_display(s) << ":\n";
            for (const OutcomeCell& cell : suite.table(s).cells) {
                char line[160];
                std::snprintf(line, sizeof line, "  %-16s count %8llu  p = %.6f  sign %+d\n",
                              cell.label.c_str(),
                              static_cast<unsigned long long>(cell.count.value_or(0)),
                              cell.probability, cell.sign);
                std::cout << line;
            }
        }
    } else {
        emit(experiment_to_json(suite), "");
    }
    if (!out_path.empty()) {
        save_experiment(suite, out_path);
        std::cerr << "wrote experiment to " << out_path << "\n";
    }
    return kExitOk;
}

int cmd_chsh(const std::string& experiment_path, const std::string& format,
             const std::string& out_path) {
    const ExperimentSuite suite = load_experiment(experiment_path);
    const ChshReport report = chsh_statistic(suite);

    if (format == "json") {
        emit(chsh_report_to_json(report, suite.name), out_path);
    } else {
        std::cout << render_chsh_text(report, suite);
        if (!out_path.empty()) emit(chsh_report_to_json(report, suite.name), out_path);
    }
    return kExitOk;
}

int cmd_solve(const std::string& experiment_path, const std::string& state_spec,
              const std::string& solver, const ProfileOption& profile, const std::string& format,
              const std::string& out_path) {
    const ExperimentSuite suite = load_experiment(experiment_path);
    const Vec4 state = resolve_state(state_spec);
    SolveOutcome outcome = solve_experiment(suite, state, solver);

    json classification = json::object();
    if (format == "text") std::cout << "state: " << (state_spec.empty() ? "singlet" : state_spec) << "\n";
    for (Setting s : kSettings) {
        const MeasurementReport mr = classify_measurement(outcome.solution.family(s), profile.get());
        classification[std::string(setting_key(s))] = measurement_report_to_json(mr);
        if (format == "text") {
            std::cout << "family " << setting_display(s) << ": "
                      << (mr.verdict == MeasurementKind::ProductMeasurement
                              ? "ProductMeasurement"
                              : "EntangledMeasurement")
                      << " (" << mr.product_count << " product, " << 4 - mr.product_count
                      << " entangled eigenstates)\n";
        }
    }

    if (format == "json") {
        emit(json{{"solution", solution_to_json(outcome.solution)},
                  {"classification", classification},
                  {"verification",
                   verification_to_json(outcome.verification, kStrict, "strict")}},
             "");
    }
    if (!out_path.empty()) {
        save_solution(outcome.solution, out_path);
        std::cerr << "wrote solution to " << out_path << "\n";
    }
    if (!outcome.verification.pass) {
        std::cerr << "post-solve verification failed at the strict profile\n";
        return kExitVerificationFailure;
    }
    return kExitOk;
}

int cmd_verify(const std::string& solution_path, const std::string& experiment_path,
               const ProfileOption& profile, const std::string& format,
               const std::string& out_path) {
    const ExperimentSuite suite = load_experiment(experiment_path);
    const ModelSolution solution = load_solution(solution_path);
    const VerificationReport report = verify_solution(solution, suite, profile.get());

    if (format == "json") {
        emit(verification_to_json(report, profile.get(), profile.name), out_path);
    } else {
        std::cout << render_verification_text(report, profile.get(), profile.name);
        if (!out_path.empty()) emit(verification_to_json(report, profile.get(), profile.name), out_path);
    }
    return report.pass ? kExitOk : kExitVerificationFailure;
}

int cmd_roundtrip(const std::string& experiment_path, const std::string& state_spec,
                  const std::string& solver, const ProfileOption& profile,
                  const std::string& format) {
    const ExperimentSuite suite = load_experiment(experiment_path);
    const Vec4 state = resolve_state(state_spec);
    const SolveOutcome outcome = solve_experiment(suite, state, solver);

    const ChshReport data_report = chsh_statistic(suite);
    const ChshReport model_report = model_chsh(outcome.solution, profile.get());

    const double e_tol = 4.0 * profile.get().born + 1e-12;
    double worst_e = 0.0;
    for (Setting s : kSettings)
        worst_e = std::max(worst_e, std::abs(data_report.expectation(s) -
                                             model_report.expectation(s)));
    const double s_gap = std::abs(data_report.statistic - model_report.statistic);
    const bool pass = outcome.verification.pass && worst_e <= e_tol && s_gap <= 4.0 * e_tol;

    if (format == "json") {
        emit(json{{"data", chsh_report_to_json(data_report, suite.name)},
                  {"model", chsh_report_to_json(model_report, "model")},
                  {"max_expectation_gap", worst_e},
                  {"statistic_gap", s_gap},
                  {"verification_pass", outcome.verification.pass},
                  {"pass", pass}},
             "");
    } else {
        char line[160];
        std::snprintf(line, sizeof line, "data  S = %.10f (%s)\n", data_report.statistic,
                      std::string(classification_key(data_report.classification)).c_str());
        std::cout << line;
        std::snprintf(line, sizeof line, "model S = %.10f (%s)\n", model_report.statistic,
                      std::string(classification_key(model_report.classification)).c_str());
        std::cout << line;
        std::snprintf(line, sizeof line, "max |E_data - E_model| = %.3e, |S_data - S_model| = %.3e\n",
                      worst_e, s_gap);
        std::cout << line;
        std::cout << "roundtrip: " << (pass ? "PASS" : "FAIL") << "\n";
    }
    return pass ? kExitOk : kExitVerificationFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"CHSH analysis and Hilbert-space modeling of word co-occurrence data"};
    app.require_subcommand(1);

    std::string corpus_dir;
    std::string query_path;
    std::string experiment_path;
    std::string solution_path;
    std::string name;
    std::string state_spec = "singlet";
    std::string solver = "auto";
    std::string format = "text";
    std::string out_path;
    std::optional<int> window_override;
    bool serial = false;
    ProfileOption profile;

    const auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
        cmd->add_option("--out", out_path, "Write the produced file/report to PATH");
    };
    const auto add_profile = [&](CLI::App* cmd) {
        cmd->add_option("--profile", profile.name, "Tolerance profile")
            ->check(CLI::IsMember({"strict", "quoted"}));
    };
    const auto add_solver = [&](CLI::App* cmd) {
        cmd->add_option("--solver", solver, "Family solver")
            ->check(CLI::IsMember({"constructive", "ansatz", "auto"}));
        cmd->add_option("--state", state_spec, "Pre-measurement state: 'singlet' or a JSON file");
    };

    CLI::App* count = app.add_subcommand("count", "Count query pairs over a corpus directory");
    count->add_option("--corpus", corpus_dir, "Directory of UTF-8 .txt documents")->required();
    count->add_option("--query", query_path, "Query JSON file")->required();
    count->add_option("--name", name, "Experiment name (defaults to the directory name)");
    count->add_option("--window", window_override, "Override the query's collocate window");
    count->add_flag("--serial", serial, "Disable OpenMP counting");
    add_format(count);

    CLI::App* chsh = app.add_subcommand("chsh", "Expectation values and CHSH statistic");
    chsh->add_option("--experiment", experiment_path, "Experiment JSON file")->required();
    add_format(chsh);

    CLI::App* solve = app.add_subcommand("solve", "Fit spectral families to an experiment");
    solve->add_option("--experiment", experiment_path, "Experiment JSON file")->required();
    add_solver(solve);
    add_profile(solve);
    add_format(solve);

    CLI::App* verify = app.add_subcommand("verify", "Check a solution against an experiment");
    verify->add_option("--solution", solution_path, "Solution JSON file")->required();
    verify->add_option("--experiment", experiment_path, "Experiment JSON file")->required();
    add_profile(verify);
    add_format(verify);

    CLI::App* roundtrip =
        app.add_subcommand("roundtrip", "Solve, recompute CHSH from the model, compare");
    roundtrip->add_option("--experiment", experiment_path, "Experiment JSON file")->required();
    add_solver(roundtrip);
    add_profile(roundtrip);
    roundtrip->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (count->parsed())
            return cmd_count(corpus_dir, query_path, name, window_override, serial, format,
                             out_path);
        if (chsh->parsed()) return cmd_chsh(experiment_path, format, out_path);
        if (solve->parsed())
            return cmd_solve(experiment_path, state_spec, solver, profile, format, out_path);
        if (verify->parsed())
            return cmd_verify(solution_path, experiment_path, profile, format, out_path);
        if (roundtrip->parsed())
            return cmd_roundtrip(experiment_path, state_spec, solver, profile, format);
    } catch (const SolveError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerificationFailure;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
