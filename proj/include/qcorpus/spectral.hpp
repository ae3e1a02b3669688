#pragma once

#include <array>
#include <optional>
#include <utility>

#include "qcorpus/amplitudes.hpp"
#include "qcorpus/setting.hpp"

namespace qcorpus {

// A four-outcome measurement as an orthonormal eigenbasis with outcome
// values. `phases_deg` carries optional per-eigenvector global phases; they
// are metadata only and never enter any computation (the Born rule ignores
// them).
struct SpectralFamily {
    Setting setting = Setting::AB;
    std::array<Vec4, 4> eigenvectors{};
    std::array<double, 4> outcomes{1.0, -1.0, -1.0, 1.0};
    std::array<std::optional<double>, 4> phases_deg{};
};

// Index pairs for the six orthogonality constraints, in fixed order.
inline constexpr std::array<std::pair<int, int>, 6> kOrthPairs{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

// max over | ||v_i||^2 - 1 | and |<v_i|v_j>|.
double orthonormality_residual(const SpectralFamily& family);

// Throws std::invalid_argument naming the offending vector or pair.
void require_orthonormal(const SpectralFamily& family, const ToleranceProfile& profile);

} // namespace qcorpus
