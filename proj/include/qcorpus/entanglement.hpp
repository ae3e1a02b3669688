#pragma once

#include <array>

#include "qcorpus/amplitudes.hpp"
#include "qcorpus/spectral.hpp"

namespace qcorpus {

// 2x2 complex matrix, row major.
struct Mat2 {
    std::array<Complex, 4> m{};

    Complex& at(int r, int c) { return m[static_cast<std::size_t>(2 * r + c)]; }
    const Complex& at(int r, int c) const { return m[static_cast<std::size_t>(2 * r + c)]; }
};

// 4x4 self-adjoint operator, row major.
struct HermitianOperator4 {
    std::array<Complex, 16> m{};

    Complex& at(int r, int c) { return m[static_cast<std::size_t>(4 * r + c)]; }
    const Complex& at(int r, int c) const { return m[static_cast<std::size_t>(4 * r + c)]; }
};

enum class StateKind { Product, Entangled };
enum class MeasurementKind { ProductMeasurement, EntangledMeasurement };

// Schmidt data of one composite vector. A unit vector is a product of two
// factor-space vectors exactly when the reshaped 2x2 coefficient matrix has
// zero determinant; the smaller singular value obeys
// s2^2 = (1 - sqrt(1 - 4 |det|^2)) / 2.
struct SchmidtReport {
    std::array<double, 2> singular_values{}; // descending
    Complex determinant{};                   // v0 v4 - v1 v2 of the reshaped matrix
    StateKind verdict = StateKind::Product;
    double entropy_bits = 0.0; // -sum w_i log2 w_i over normalized Schmidt weights
};

struct MeasurementReport {
    MeasurementKind verdict = MeasurementKind::ProductMeasurement;
    std::array<SchmidtReport, 4> eigenstates{};
    int product_count = 0;
};

// Coefficient matrix [[v0, v1], [v2, v3]] of the tensor-basis expansion; a
// tensor product x (x) y reshapes to the rank-1 outer product of x and y.
Mat2 reshape_to_matrix(const Vec4& v);

// v0 v3 - v1 v2.
Complex reshaped_determinant(const Vec4& v);

// Product/entangled test via the closed-form 2x2 singular values. Requires v
// normalized at profile.normalization; verdict uses profile.product_det.
SchmidtReport product_test(const Vec4& v, const ToleranceProfile& profile);

// Entangled measurement iff at least one eigenvector is entangled. Requires
// the family orthonormal at the profile.
MeasurementReport classify_measurement(const SpectralFamily& family,
                                       const ToleranceProfile& profile);

// E = sum_k lambda_k |v_k><v_k|. Requires the family orthonormal.
HermitianOperator4 build_operator(const SpectralFamily& family,
                                  const ToleranceProfile& profile);

Vec4 apply(const HermitianOperator4& op, const Vec4& v);

// max |op(i,j) - conj(op(j,i))|.
double hermiticity_residual(const HermitianOperator4& op);

// Re <state| op |state>.
double expectation_value(const HermitianOperator4& op, const Vec4& state);

} // namespace qcorpus
