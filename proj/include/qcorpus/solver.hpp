#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qcorpus/amplitudes.hpp"
#include "qcorpus/chsh.hpp"
#include "qcorpus/spectral.hpp"

namespace qcorpus {

enum class Provenance { PaperQuoted, ConstructiveSolve, AnsatzSolve };

std::string_view provenance_key(Provenance p);
Provenance parse_provenance(std::string_view key);

// A pre-measurement state together with one spectral family per setting.
// `corrections` carries free-text notes about transcription fixes applied to
// quoted solutions; it is preserved verbatim through files.
struct ModelSolution {
    Vec4 state;
    std::array<SpectralFamily, 4> families{}; // indexed by Setting
    Provenance provenance = Provenance::ConstructiveSolve;
    std::vector<std::string> corrections;

    SpectralFamily& family(Setting s) { return families[setting_index(s)]; }
    const SpectralFamily& family(Setting s) const { return families[setting_index(s)]; }
};

// Residuals of one family against the three model conditions: unit norms,
// mutual orthogonality, and Born-rule agreement with the observed
// frequencies.
struct FamilyVerification {
    Setting setting = Setting::AB;
    std::array<std::string, 4> labels{};
    std::array<double, 4> normalization_residuals{};
    std::array<double, 6> orthogonality_residuals{}; // kOrthPairs order
    std::array<double, 4> born_residuals{};
    bool normalization_pass = false;
    bool orthogonality_pass = false;
    bool born_pass = false;

    bool pass() const { return normalization_pass && orthogonality_pass && born_pass; }
    double max_normalization() const;
    double max_orthogonality() const;
    double max_born() const;
};

struct VerificationReport {
    std::array<FamilyVerification, 4> families{}; // indexed by Setting
    double state_norm_residual = 0.0;
    bool state_pass = false;
    bool pass = false;

    // Real-equation bookkeeping per family: 4 unit-norm + 6 complex
    // orthogonality (12 real) + 4 data-fit, over 4 moduli + 4 phases per
    // eigenvector.
    static constexpr int kEquationsPerFamily = 20;
    static constexpr int kVariablesPerFamily = 32;

    const FamilyVerification& family(Setting s) const { return families[setting_index(s)]; }
};

// (0, 1/sqrt2, -1/sqrt2, 0): the maximally entangled pre-measurement state.
Vec4 singlet_state();

// Born probabilities of the family's eigenvectors at `state`, in outcome
// order. Checks `state` and the family at the profile.
std::array<double, 4> forward_probabilities(const Vec4& state, const SpectralFamily& family,
                                            const ToleranceProfile& profile);

// Builds an orthonormal family whose Born probabilities at `state` equal
// `target`, for any unit state and any probability 4-tuple. Works by
// reflecting the canonical basis: with q = (sqrt mu_k) and phi the phase of
// <q|state>, the Householder reflection through w = q - e^{-i phi} state maps
// q onto the dephased state, so the reflected basis columns (times e^{i phi})
// see the state with coordinates of modulus sqrt(mu_k).
SpectralFamily solve_constructive(const Vec4& state, const std::array<double, 4>& target,
                                  Setting setting = Setting::AB,
                                  const std::array<double, 4>& outcomes = {1.0, -1.0, -1.0,
                                                                           1.0});

// Optional placement of the two product eigenvectors among the target's zero
// slots; defaults follow index order.
struct AnsatzHints {
    std::optional<int> minus_e3_slot; // slot receiving (0, 0, 0, -1)
    std::optional<int> e0_slot;       // slot receiving (1, 0, 0, 0)
};

// Structured solution shape for the singlet state and targets with at least
// two zero entries: zero-probability outcomes receive product basis vectors,
// nonzero ones an orthogonal middle-subspace pair (0,B,C,0) / (0,-C,B,0) with
// (B-C)^2/2 equal to the designated probability. Throws SolveError
// ("ansatz inapplicable; use solve_constructive") when fewer than two target
// entries vanish, or when `state` is not the singlet.
SpectralFamily solve_ansatz(const Vec4& state, const std::array<double, 4>& target,
                            const AnsatzHints& hints = {}, Setting setting = Setting::AB,
                            const std::array<double, 4>& outcomes = {1.0, -1.0, -1.0, 1.0});

// Total: never throws on bad solutions; failures land in the report.
VerificationReport verify_solution(const ModelSolution& solution, const ExperimentSuite& suite,
                                   const ToleranceProfile& profile);

// CHSH statistic recomputed from the model's own Born probabilities.
ChshReport model_chsh(const ModelSolution& solution,
                      const ToleranceProfile& profile = kStrict);

} // namespace qcorpus
