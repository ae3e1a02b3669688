#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcorpus/chsh.hpp"
#include "qcorpus/counting.hpp"
#include "qcorpus/entanglement.hpp"
#include "qcorpus/solver.hpp"

namespace qcorpus {

using json = nlohmann::json;

// Canonical serialization: keys sorted, 2-space indent, floats printed at 17
// significant digits (round-trip exact). Identical values produce identical
// bytes.
std::string canonical_dump(const json& j);

// Complex numbers serialize as [re, im] everywhere.
json complex_to_json(const Complex& z);
Complex complex_from_json(const json& j);

json vec4_to_json(const Vec4& v);
Vec4 vec4_from_json(const json& j);

// Experiment files: { name, mode, window?, tables: { "AB": [cell x4], ... } }.
// A cell is { label, count?, probability?, sign }; when any probability in a
// table is omitted, all four are derived from the counts.
json experiment_to_json(const ExperimentSuite& suite);
ExperimentSuite experiment_from_json(const json& j);
ExperimentSuite load_experiment(const std::filesystem::path& path);
void save_experiment(const ExperimentSuite& suite, const std::filesystem::path& path);

// Query files: { mode, window, settings: { "AB": { pairs: [ {first, second,
// sign} x4 ] }, ... } }.
QuerySet query_from_json(const json& j);
QuerySet load_query(const std::filesystem::path& path);

// Solution files: { state, families: { "AB": { eigenvectors, outcomes,
// phases_deg? }, ... }, provenance, corrections? }.
json solution_to_json(const ModelSolution& solution);
ModelSolution solution_from_json(const json& j);
ModelSolution load_solution(const std::filesystem::path& path);
void save_solution(const ModelSolution& solution, const std::filesystem::path& path);

// A bare unit-state file: [[re, im] x4].
Vec4 load_state(const std::filesystem::path& path);

// Report serialization.
json chsh_report_to_json(const ChshReport& report, const std::string& suite_name);
json schmidt_to_json(const SchmidtReport& report);
json measurement_report_to_json(const MeasurementReport& report);
json verification_to_json(const VerificationReport& report, const ToleranceProfile& profile,
                          std::string_view profile_name);

// Human-readable renderings used by the CLI.
std::string render_chsh_text(const ChshReport& report, const ExperimentSuite& suite);
std::string render_verification_text(const VerificationReport& report,
                                     const ToleranceProfile& profile,
                                     std::string_view profile_name);

// Reads every regular *.txt file directly under `dir` (sorted by filename)
// and tokenizes it. Tokenization runs in parallel when `parallel` is set.
std::vector<TokenStream> load_corpus_dir(const std::filesystem::path& dir, bool parallel = true);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view contents);
json load_json_file(const std::filesystem::path& path);

} // namespace qcorpus
