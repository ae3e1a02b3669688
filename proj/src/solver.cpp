#include "qcorpus/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcorpus/errors.hpp"

namespace qcorpus {

namespace {

constexpr double kZeroEps = 1e-12;

void check_target(const std::array<double, 4>& target) {
    double sum = 0.0;
    for (double mu : target) {
        if (!std::isfinite(mu) || mu < 0.0)
            throw std::invalid_argument("solver target: probabilities must be finite and >= 0");
        sum += mu;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("solver target: probabilities sum to " + std::to_string(sum) +
                                    ", expected 1");
}

void check_state(const Vec4& state) {
    if (!is_finite(state) || !is_normalized(state, 1e-9))
        throw std::invalid_argument("solver state: expected a unit vector");
}

void check_outcomes(const std::array<double, 4>& outcomes) {
    int plus = 0;
    for (double lambda : outcomes) {
        if (lambda != 1.0 && lambda != -1.0)
            throw std::invalid_argument("solver outcomes: values must be +1 or -1");
        if (lambda > 0) ++plus;
    }
    if (plus != 2)
        throw std::invalid_argument("solver outcomes: expected exactly two +1 and two -1");
}

Vec4 canonical_basis(std::size_t k) {
    Vec4 e;
    e[k] = 1.0;
    return e;
}

} // namespace

std::string_view provenance_key(Provenance p) {
    switch (p) {
    case Provenance::PaperQuoted: return "PaperQuoted";
    case Provenance::ConstructiveSolve: return "ConstructiveSolve";
    case Provenance::AnsatzSolve: return "AnsatzSolve";
    }
    return "ConstructiveSolve";
}

Provenance parse_provenance(std::string_view key) {
    if (key == "PaperQuoted") return Provenance::PaperQuoted;
    if (key == "ConstructiveSolve") return Provenance::ConstructiveSolve;
    if (key == "AnsatzSolve") return Provenance::AnsatzSolve;
    throw InputError("unknown provenance \"" + std::string(key) + "\"");
}

double FamilyVerification::max_normalization() const {
    return *std::max_element(normalization_residuals.begin(), normalization_residuals.end());
}

double FamilyVerification::max_orthogonality() const {
    return *std::max_element(orthogonality_residuals.begin(), orthogonality_residuals.end());
}

double FamilyVerification::max_born() const {
    return *std::max_element(born_residuals.begin(), born_residuals.end());
}

Vec4 singlet_state() {
    const double r = 1.0 / std::sqrt(2.0);
    return {0.0, r, -r, 0.0};
}

std::array<double, 4> forward_probabilities(const Vec4& state, const SpectralFamily& family,
                                            const ToleranceProfile& profile) {
    require_orthonormal(family, profile);
    std::array<double, 4> probs{};
    for (std::size_t k = 0; k < 4; ++k)
        probs[k] = born_probability(family.eigenvectors[k], state, profile.normalization);
    return probs;
}

SpectralFamily solve_constructive(const Vec4& state, const std::array<double, 4>& target,
                                  Setting setting, const std::array<double, 4>& outcomes) {
    check_state(state);
    check_target(target);
    check_outcomes(outcomes);

    Vec4 q;
    for (std::size_t k = 0; k < 4; ++k) q[k] = std::sqrt(target[k]);

    // Dephase the state so that <q|state'> is real and non-negative; the
    // reflection through w = q - state' then swaps q and state'.
    const Complex overlap = inner_product(q, state);
    const double phi = std::abs(overlap) == 0.0 ? 0.0 : std::arg(overlap);
    const Complex backward{std::cos(phi), -std::sin(phi)};
    const Complex forward{std::cos(phi), std::sin(phi)};

    const Vec4 dephased = backward * state;
    const Vec4 w = q - dephased;
    const double w_norm2 = squared_norm(w);

    SpectralFamily family;
    family.setting = setting;
    family.outcomes = outcomes;
    if (std::sqrt(w_norm2) <= 1e-14) {
        for (std::size_t k = 0; k < 4; ++k)
            family.eigenvectors[k] = forward * canonical_basis(k);
        return family;
    }
    for (std::size_t k = 0; k < 4; ++k) {
        const Complex coeff = 2.0 * std::conj(w[k]) / w_norm2; // <w|e_k> scaled
        family.eigenvectors[k] = forward * (canonical_basis(k) - coeff * w);
    }
    return family;
}

SpectralFamily solve_ansatz(const Vec4& state, const std::array<double, 4>& target,
                            const AnsatzHints& hints, Setting setting,
                            const std::array<double, 4>& outcomes) {
    check_state(state);
    check_target(target);
    check_outcomes(outcomes);

    if (norm(state - singlet_state()) > 1e-9)
        throw SolveError("ansatz inapplicable; use solve_constructive "
                         "(requires the singlet pre-measurement state)");

    std::vector<std::size_t> zero_slots;
    std::vector<std::size_t> live_slots;
    for (std::size_t k = 0; k < 4; ++k)
        (target[k] <= kZeroEps ? zero_slots : live_slots).push_back(k);

    if (zero_slots.size() < 2)
        throw SolveError("ansatz inapplicable; use solve_constructive "
                         "(target needs at least two zero entries)");

    SpectralFamily family;
    family.setting = setting;
    family.outcomes = outcomes;

    // Middle-subspace pair for the observed outcomes: (0,B,C,0) sees the
    // singlet with probability (B-C)^2/2, its orthogonal partner (0,-C,B,0)
    // with the complement.
    double big = 0.0;
    double small = 0.0;
    std::size_t designated = 0;
    std::size_t partner = 0;
    if (live_slots.size() == 2) {
        designated = live_slots[0];
        partner = live_slots[1];
        big = target[designated];
        small = target[partner];
    } else { // one live slot carrying probability 1; the partner lands on a zero slot later
        designated = live_slots[0];
        big = target[designated];
        small = 0.0;
    }
    const double u = std::sqrt(2.0 * big);
    const double v = std::sqrt(2.0 * small);
    // Branch with B >= 0 and B - C = +sqrt(2 mu); the sign of B + C is the
    // remaining freedom and is fixed by which probability dominates.
    const double s = big >= small ? -1.0 : 1.0;
    const double middle_b = 0.5 * (u + s * v);
    const double middle_c = 0.5 * (s * v - u);
    const Vec4 designated_vec{0.0, middle_b, middle_c, 0.0};
    const Vec4 partner_vec{0.0, -middle_c, middle_b, 0.0};

    family.eigenvectors[designated] = designated_vec;

    // Product eigenvectors go to zero-probability slots (both basis
    // directions are Born-null at the singlet), by index order unless hints
    // place them.
    std::vector<std::size_t> open = zero_slots;
    auto take = [&open](std::size_t slot) {
        const auto it = std::find(open.begin(), open.end(), slot);
        if (it == open.end())
            throw std::invalid_argument(
                "ansatz hints: slot " + std::to_string(slot) +
                " is not an unassigned zero-probability outcome");
        open.erase(it);
    };

    std::size_t minus_e3_slot;
    if (hints.minus_e3_slot) {
        minus_e3_slot = static_cast<std::size_t>(*hints.minus_e3_slot);
        take(minus_e3_slot);
    } else {
        minus_e3_slot = open.front();
        open.erase(open.begin());
    }
    std::size_t e0_slot;
    if (hints.e0_slot) {
        e0_slot = static_cast<std::size_t>(*hints.e0_slot);
        take(e0_slot);
    } else {
        e0_slot = open.front();
        open.erase(open.begin());
    }
    family.eigenvectors[minus_e3_slot] = Vec4{0.0, 0.0, 0.0, -1.0};
    family.eigenvectors[e0_slot] = Vec4{1.0, 0.0, 0.0, 0.0};

    if (live_slots.size() == 2) {
        family.eigenvectors[partner] = partner_vec;
    } else {
        // Three zero targets: the remaining zero slot completes the middle
        // subspace with the partner vector.
        family.eigenvectors[open.front()] = partner_vec;
    }
    return family;
}

VerificationReport verify_solution(const ModelSolution& solution, const ExperimentSuite& suite,
                                   const ToleranceProfile& profile) {
    VerificationReport report;
    report.state_norm_residual = std::abs(squared_norm(solution.state) - 1.0);
    report.state_pass = report.state_norm_residual <= profile.normalization;

    bool all = report.state_pass;
    for (Setting s : kSettings) {
        const SpectralFamily& family = solution.family(s);
        const CoincidenceTable& table = suite.table(s);
        FamilyVerification& fv = report.families[setting_index(s)];
        fv.setting = s;

        for (std::size_t k = 0; k < 4; ++k) {
            fv.labels[k] = table.cells[k].label;
            fv.normalization_residuals[k] =
                std::abs(squared_norm(family.eigenvectors[k]) - 1.0);
            const double p = std::norm(inner_product(family.eigenvectors[k], solution.state));
            fv.born_residuals[k] = std::abs(p - table.cells[k].probability);
        }
        for (std::size_t n = 0; n < kOrthPairs.size(); ++n) {
            const auto [i, j] = kOrthPairs[n];
            fv.orthogonality_residuals[n] =
                std::abs(inner_product(family.eigenvectors[static_cast<std::size_t>(i)],
                                       family.eigenvectors[static_cast<std::size_t>(j)]));
        }
        fv.normalization_pass = fv.max_normalization() <= profile.normalization;
        fv.orthogonality_pass = fv.max_orthogonality() <= profile.orthogonality;
        fv.born_pass = fv.max_born() <= profile.born;
        all = all && fv.pass();
    }
    report.pass = all;
    return report;
}

ChshReport model_chsh(const ModelSolution& solution, const ToleranceProfile& profile) {
    ExperimentSuite model;
    model.name = "model";
    model.mode = Mode::Direct;
    for (Setting s : kSettings) {
        const SpectralFamily& family = solution.family(s);
        const std::array<double, 4> probs =
            forward_probabilities(solution.state, family, profile);
        CoincidenceTable& table = model.table(s);
        table.setting = s;
        for (std::size_t k = 0; k < 4; ++k) {
            table.cells[k].label = std::string(setting_key(s)) + "." + std::to_string(k + 1);
            table.cells[k].probability = probs[k];
            table.cells[k].sign = family.outcomes[k] > 0 ? 1 : -1;
        }
    }
    // Quoted-profile solutions reproduce the data only to ~1e-2 per outcome, so
    // the model tables may miss unit sum by up to four Born residuals.
    const double sum_tol = std::max(1e-9, 4.0 * profile.born + 1e-12);
    return chsh_statistic(model, sum_tol);
}

} // namespace qcorpus
