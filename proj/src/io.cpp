#include "qcorpus/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qcorpus/errors.hpp"

namespace qcorpus {

namespace {

void dump_indent(std::string& out, int depth) { out.append(static_cast<std::size_t>(2 * depth), ' '); }

void dump_double(double v, std::string& out) {
    if (v == 0.0) v = 0.0; // normalize -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

void dump_value(const json& j, std::string& out, int depth) {
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) { // nlohmann objects iterate key-sorted
            if (!first) out += ",\n";
            first = false;
            dump_indent(out, depth + 1);
            out += json(it.key()).dump();
            out += ": ";
            dump_value(it.value(), out, depth + 1);
        }
        out += "\n";
        dump_indent(out, depth);
        out += "}";
        return;
    }
    case json::value_t::array: {
        out += "[";
        bool first = true;
        for (const json& item : j) {
            if (!first) out += ", ";
            first = false;
            dump_value(item, out, depth);
        }
        out += "]";
        return;
    }
    case json::value_t::number_float:
        dump_double(j.get<double>(), out);
        return;
    default:
        out += j.dump(); // strings, integers, booleans, null
        return;
    }
}

double require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw InputError(std::string(what) + ": non-finite number");
    return v;
}

const json& require_field(const json& j, const char* key, const char* context) {
    const auto it = j.find(key);
    if (it == j.end())
        throw InputError(std::string(context) + ": missing field \"" + key + "\"");
    return *it;
}

} // namespace

std::string canonical_dump(const json& j) {
    std::string out;
    dump_value(j, out, 0);
    out += "\n";
    return out;
}

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw InputError("complex value: expected a two-element [re, im] array");
    return {require_finite(j[0].get<double>(), "complex value"),
            require_finite(j[1].get<double>(), "complex value")};
}

json vec4_to_json(const Vec4& v) {
    json arr = json::array();
    for (const Complex& z : v.c) arr.push_back(complex_to_json(z));
    return arr;
}

Vec4 vec4_from_json(const json& j) {
    if (!j.is_array() || j.size() != 4)
        throw InputError("state vector: expected four [re, im] components");
    Vec4 v;
    for (std::size_t k = 0; k < 4; ++k) v[k] = complex_from_json(j[k]);
    return v;
}

json experiment_to_json(const ExperimentSuite& suite) {
    json tables = json::object();
    for (Setting s : kSettings) {
        json cells = json::array();
        for (const OutcomeCell& cell : suite.table(s).cells) {
            json c{{"label", cell.label}, {"probability", cell.probability}, {"sign", cell.sign}};
            if (cell.count) c["count"] = *cell.count;
            cells.push_back(std::move(c));
        }
        tables[std::string(setting_key(s))] = std::move(cells);
    }
    json j{{"name", suite.name}, {"mode", std::string(mode_key(suite.mode))},
           {"tables", std::move(tables)}};
    if (suite.window) j["window"] = *suite.window;
    return j;
}

ExperimentSuite experiment_from_json(const json& j) {
    if (!j.is_object()) throw InputError("experiment file: expected a JSON object");
    ExperimentSuite suite;
    suite.name = require_field(j, "name", "experiment file").get<std::string>();
    suite.mode = parse_mode(require_field(j, "mode", "experiment file").get<std::string>());
    if (j.contains("window")) suite.window = j["window"].get<int>();

    const json& tables = require_field(j, "tables", "experiment file");
    for (Setting s : kSettings) {
        const std::string key(setting_key(s));
        if (!tables.contains(key))
            throw InputError("experiment file: missing setting " + key);
        const json& cells = tables[key];
        if (!cells.is_array() || cells.size() != 4)
            throw InputError("experiment file: setting " + key + " must list exactly 4 cells");

        CoincidenceTable& table = suite.table(s);
        table.setting = s;
        std::array<std::uint64_t, 4> counts{};
        std::array<std::optional<double>, 4> given_probs{};
        bool have_all_counts = true;
        for (std::size_t k = 0; k < 4; ++k) {
            const json& c = cells[k];
            const std::string ctx = "experiment file, setting " + key;
            OutcomeCell& cell = table.cells[k];
            cell.label = require_field(c, "label", ctx.c_str()).get<std::string>();
            cell.sign = require_field(c, "sign", ctx.c_str()).get<int>();
            if (c.contains("count")) {
                const json& cnt = c["count"];
                if (!cnt.is_number_integer() ||
                    (cnt.is_number_integer() && !cnt.is_number_unsigned() &&
                     cnt.get<std::int64_t>() < 0))
                    throw InputError(ctx + ": count must be a non-negative integer");
                cell.count = cnt.get<std::uint64_t>();
                counts[k] = *cell.count;
            } else {
                have_all_counts = false;
            }
            if (c.contains("probability"))
                given_probs[k] = require_finite(c["probability"].get<double>(), ctx.c_str());
        }
        // A cell's probability, when omitted, derives from the table's counts.
        const bool need_derivation = std::any_of(given_probs.begin(), given_probs.end(),
                                                 [](const auto& p) { return !p.has_value(); });
        std::array<double, 4> derived{};
        if (need_derivation) {
            if (!have_all_counts)
                throw InputError("experiment file, setting " + key +
                                 ": probabilities omitted but counts incomplete");
            try {
                derived = probabilities_from_counts(counts);
            } catch (const InputError&) {
                throw InputError("empty coincidence operation in setting " + key);
            }
        }
        for (std::size_t k = 0; k < 4; ++k)
            table.cells[k].probability = given_probs[k] ? *given_probs[k] : derived[k];
        validate_table(table);
    }
    return suite;
}

ExperimentSuite load_experiment(const std::filesystem::path& path) {
    try {
        return experiment_from_json(load_json_file(path));
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

void save_experiment(const ExperimentSuite& suite, const std::filesystem::path& path) {
    write_text_file(path, canonical_dump(experiment_to_json(suite)));
}

QuerySet query_from_json(const json& j) {
    if (!j.is_object()) throw InputError("query file: expected a JSON object");
    QuerySet qs;
    qs.mode = parse_mode(require_field(j, "mode", "query file").get<std::string>());
    if (qs.mode == Mode::Direct)
        throw InputError("query file: mode must be ExactString or Collocates");
    qs.window = j.value("window", 9);
    if (qs.window < 1) throw InputError("query file: window must be >= 1");

    const json& settings = require_field(j, "settings", "query file");
    for (Setting s : kSettings) {
        const std::string key(setting_key(s));
        if (!settings.contains(key)) throw InputError("query file: missing setting " + key);
        const json& pairs = require_field(settings[key], "pairs", "query file");
        if (!pairs.is_array() || pairs.size() != 4)
            throw InputError("query file: setting " + key + " must list exactly 4 pairs");
        int plus = 0;
        for (std::size_t k = 0; k < 4; ++k) {
            const json& p = pairs[k];
            WordPair& pair = qs.pairs[setting_index(s)][k];
            pair.first = require_field(p, "first", "query pair").get<std::string>();
            pair.second = require_field(p, "second", "query pair").get<std::string>();
            pair.sign = require_field(p, "sign", "query pair").get<int>();
            if (pair.sign != 1 && pair.sign != -1)
                throw InputError("query file: pair sign must be +1 or -1");
            if (pair.first.empty() || pair.second.empty())
                throw InputError("query file: pair words must be non-empty");
            if (pair.sign == 1) ++plus;
        }
        if (plus != 2)
            throw InputError("query file: setting " + key +
                             " must have exactly two +1 and two -1 pairs");
    }
    return qs;
}

QuerySet load_query(const std::filesystem::path& path) {
    try {
        return query_from_json(load_json_file(path));
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

json solution_to_json(const ModelSolution& solution) {
    json families = json::object();
    for (Setting s : kSettings) {
        const SpectralFamily& family = solution.family(s);
        json eigs = json::array();
        for (const Vec4& v : family.eigenvectors) eigs.push_back(vec4_to_json(v));
        json f{{"eigenvectors", std::move(eigs)},
               {"outcomes", json(family.outcomes)}};
        if (std::any_of(family.phases_deg.begin(), family.phases_deg.end(),
                        [](const auto& p) { return p.has_value(); })) {
            json phases = json::array();
            for (const auto& p : family.phases_deg) phases.push_back(p.value_or(0.0));
            f["phases_deg"] = std::move(phases);
        }
        families[std::string(setting_key(s))] = std::move(f);
    }
    json j{{"state", vec4_to_json(solution.state)},
           {"families", std::move(families)},
           {"provenance", std::string(provenance_key(solution.provenance))}};
    if (!solution.corrections.empty()) j["corrections"] = solution.corrections;
    return j;
}

ModelSolution solution_from_json(const json& j) {
    if (!j.is_object()) throw InputError("solution file: expected a JSON object");
    ModelSolution solution;
    solution.state = vec4_from_json(require_field(j, "state", "solution file"));
    solution.provenance =
        parse_provenance(require_field(j, "provenance", "solution file").get<std::string>());
    if (j.contains("corrections"))
        solution.corrections = j["corrections"].get<std::vector<std::string>>();

    const json& families = require_field(j, "families", "solution file");
    for (Setting s : kSettings) {
        const std::string key(setting_key(s));
        if (!families.contains(key)) throw InputError("solution file: missing family " + key);
        const json& f = families[key];
        SpectralFamily& family = solution.family(s);
        family.setting = s;

        const json& eigs = require_field(f, "eigenvectors", "solution family");
        if (!eigs.is_array() || eigs.size() != 4)
            throw InputError("solution file: family " + key + " must list 4 eigenvectors");
        for (std::size_t k = 0; k < 4; ++k) family.eigenvectors[k] = vec4_from_json(eigs[k]);

        const json& outs = require_field(f, "outcomes", "solution family");
        if (!outs.is_array() || outs.size() != 4)
            throw InputError("solution file: family " + key + " must list 4 outcomes");
        for (std::size_t k = 0; k < 4; ++k)
            family.outcomes[k] = require_finite(outs[k].get<double>(), "solution outcome");

        if (f.contains("phases_deg")) {
            const json& phases = f["phases_deg"];
            if (!phases.is_array() || phases.size() != 4)
                throw InputError("solution file: phases_deg must list 4 values");
            for (std::size_t k = 0; k < 4; ++k)
                family.phases_deg[k] = require_finite(phases[k].get<double>(), "phase");
        }
    }
    return solution;
}

ModelSolution load_solution(const std::filesystem::path& path) {
    try {
        return solution_from_json(load_json_file(path));
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

void save_solution(const ModelSolution& solution, const std::filesystem::path& path) {
    write_text_file(path, canonical_dump(solution_to_json(solution)));
}

Vec4 load_state(const std::filesystem::path& path) {
    try {
        return vec4_from_json(load_json_file(path));
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

namespace {

json side_marginal_to_json(const SideMarginal& m) {
    return json{{"p_first", m.p_first}, {"p_second", m.p_second}, {"deviation", m.deviation}};
}

} // namespace

json chsh_report_to_json(const ChshReport& report, const std::string& suite_name) {
    json e = json::object();
    for (Setting s : kSettings)
        e[std::string(setting_key(s))] = report.expectation(s);
    return json{{"name", suite_name},
                {"E", std::move(e)},
                {"S", report.statistic},
                {"classification", std::string(classification_key(report.classification))},
                {"tsirelson_bound", tsirelson_bound()},
                {"marginal_diagnostic",
                 json{{"A", side_marginal_to_json(report.marginals.a)},
                      {"Ap", side_marginal_to_json(report.marginals.ap)},
                      {"B", side_marginal_to_json(report.marginals.b)},
                      {"Bp", side_marginal_to_json(report.marginals.bp)}}}};
}

json schmidt_to_json(const SchmidtReport& report) {
    return json{{"singular_values", json::array({report.singular_values[0],
                                                 report.singular_values[1]})},
                {"det_abs", std::abs(report.determinant)},
                {"verdict", report.verdict == StateKind::Product ? "Product" : "Entangled"},
                {"entropy_bits", report.entropy_bits}};
}

json measurement_report_to_json(const MeasurementReport& report) {
    json eigs = json::array();
    for (const SchmidtReport& r : report.eigenstates) eigs.push_back(json{{"schmidt", schmidt_to_json(r)}});
    return json{{"verdict", report.verdict == MeasurementKind::ProductMeasurement
                                ? "ProductMeasurement"
                                : "EntangledMeasurement"},
                {"product_count", report.product_count},
                {"eigenstates", std::move(eigs)}};
}

json verification_to_json(const VerificationReport& report, const ToleranceProfile& profile,
                          std::string_view profile_name) {
    json pairs = json::array();
    for (auto [i, j] : kOrthPairs) pairs.push_back(json::array({i, j}));

    json families = json::object();
    for (Setting s : kSettings) {
        const FamilyVerification& fv = report.family(s);
        families[std::string(setting_key(s))] =
            json{{"labels", fv.labels},
                 {"normalization_residuals", fv.normalization_residuals},
                 {"orthogonality_residuals", fv.orthogonality_residuals},
                 {"born_residuals", fv.born_residuals},
                 {"normalization_pass", fv.normalization_pass},
                 {"orthogonality_pass", fv.orthogonality_pass},
                 {"born_pass", fv.born_pass},
                 {"pass", fv.pass()}};
    }
    return json{{"pass", report.pass},
                {"profile", std::string(profile_name)},
                {"tolerances",
                 json{{"normalization", profile.normalization},
                      {"orthogonality", profile.orthogonality},
                      {"born", profile.born}}},
                {"bookkeeping",
                 json{{"equations_per_family", VerificationReport::kEquationsPerFamily},
                      {"variables_per_family", VerificationReport::kVariablesPerFamily}}},
                {"orthogonality_pair_order", std::move(pairs)},
                {"state_norm_residual", report.state_norm_residual},
                {"state_pass", report.state_pass},
                {"families", std::move(families)}};
}

std::string render_chsh_text(const ChshReport& report, const ExperimentSuite& suite) {
    std::ostringstream out;
    char line[160];

    out << "suite: " << suite.name << " (" << mode_key(suite.mode);
    if (suite.window) out << ", window " << *suite.window;
    out << ")\n";
    for (Setting s : kSettings) {
        std::snprintf(line, sizeof line, "  E(%-4s) = %+.6f\n",
                      std::string(setting_display(s)).c_str(), report.expectation(s));
        out << line;
    }
    std::snprintf(line, sizeof line, "  S = %.6f  (%.2f at two decimals)\n", report.statistic,
                  report.statistic);
    out << line;
    std::snprintf(line, sizeof line, "  classification: %s  (classical bound 2, quantum bound %.6f)\n",
                  std::string(classification_key(report.classification)).c_str(),
                  tsirelson_bound());
    out << line;

    out << "  marginal deviations (0 = no-signaling):\n";
    const auto render_side = [&](const char* name, const SideMarginal& m) {
        std::snprintf(line, sizeof line, "    %-3s: |%.4f - %.4f| = %.4f\n", name, m.p_first,
                      m.p_second, m.deviation);
        out << line;
    };
    render_side("A", report.marginals.a);
    render_side("A'", report.marginals.ap);
    render_side("B", report.marginals.b);
    render_side("B'", report.marginals.bp);
    return out.str();
}

std::string render_verification_text(const VerificationReport& report,
                                     const ToleranceProfile& profile,
                                     std::string_view profile_name) {
    std::ostringstream out;
    char line[240];

    out << "profile " << profile_name;
    std::snprintf(line, sizeof line, " (normalization <= %g, orthogonality <= %g, born <= %g)\n",
                  profile.normalization, profile.orthogonality, profile.born);
    out << line;
    std::snprintf(line, sizeof line,
                  "conditions per family: 4 unit-norm + 6 orthogonality + 4 data-fit"
                  " = %d real equations in %d unknowns\n",
                  VerificationReport::kEquationsPerFamily,
                  VerificationReport::kVariablesPerFamily);
    out << line;
    std::snprintf(line, sizeof line, "state norm residual %.3e [%s]\n",
                  report.state_norm_residual, report.state_pass ? "pass" : "FAIL");
    out << line;

    for (Setting s : kSettings) {
        const FamilyVerification& fv = report.family(s);
        out << "family " << setting_display(s) << ":\n";
        std::snprintf(line, sizeof line, "  normalization max residual %.3e [%s]\n",
                      fv.max_normalization(), fv.normalization_pass ? "pass" : "FAIL");
        out << line;
        std::snprintf(line, sizeof line, "  orthogonality max residual %.3e [%s]\n",
                      fv.max_orthogonality(), fv.orthogonality_pass ? "pass" : "FAIL");
        out << line;
        std::snprintf(line, sizeof line, "  born          max residual %.3e [%s]\n",
                      fv.max_born(), fv.born_pass ? "pass" : "FAIL");
        out << line;
        if (!fv.orthogonality_pass) {
            for (std::size_t n = 0; n < kOrthPairs.size(); ++n) {
                if (fv.orthogonality_residuals[n] <= profile.orthogonality) continue;
                const auto [i, j] = kOrthPairs[n];
                std::snprintf(line, sizeof line, "    |<%s|%s>| = %.4f exceeds %g\n",
                              fv.labels[static_cast<std::size_t>(i)].c_str(),
                              fv.labels[static_cast<std::size_t>(j)].c_str(),
                              fv.orthogonality_residuals[n], profile.orthogonality);
                out << line;
            }
        }
        if (!fv.born_pass) {
            for (std::size_t k = 0; k < 4; ++k) {
                if (fv.born_residuals[k] <= profile.born) continue;
                std::snprintf(line, sizeof line, "    born residual %.4f on \"%s\" exceeds %g\n",
                              fv.born_residuals[k], fv.labels[k].c_str(), profile.born);
                out << line;
            }
        }
    }
    out << "overall: " << (report.pass ? "PASS" : "FAIL") << "\n";
    return out.str();
}

std::vector<TokenStream> load_corpus_dir(const std::filesystem::path& dir, bool parallel) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw InputError("corpus directory not found: " + dir.string());

    std::vector<fs::path> paths;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".txt")
            paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end());

    std::vector<TokenStream> docs(paths.size());
    std::exception_ptr failure;
    const auto n = static_cast<std::int64_t>(paths.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            const auto& p = paths[static_cast<std::size_t>(i)];
            docs[static_cast<std::size_t>(i)] =
                tokenize(read_text_file(p), p.filename().string());
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return docs;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw InputError("I/O error reading file: " + path.string());
    return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot open file for writing: " + path.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw InputError("I/O error writing file: " + path.string());
}

json load_json_file(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw InputError("malformed JSON in " + path.string());
    return j;
}

} // namespace qcorpus
