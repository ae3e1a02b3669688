#include "qcorpus/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcorpus {

namespace {

double entropy_term(double w) { return w > 0.0 ? -w * std::log2(w) : 0.0; }

} // namespace

Mat2 reshape_to_matrix(const Vec4& v) {
    Mat2 m;
    m.at(0, 0) = v[0];
    m.at(0, 1) = v[1];
    m.at(1, 0) = v[2];
    m.at(1, 1) = v[3];
    return m;
}

Complex reshaped_determinant(const Vec4& v) { return v[0] * v[3] - v[1] * v[2]; }

SchmidtReport product_test(const Vec4& v, const ToleranceProfile& profile) {
    if (!is_finite(v)) throw std::invalid_argument("product_test: non-finite input");
    if (!is_normalized(v, profile.normalization))
        throw std::invalid_argument("product_test: input not normalized within tolerance");

    SchmidtReport report;
    report.determinant = reshaped_determinant(v);

    // Closed-form singular values of the reshaped 2x2 matrix M:
    // s^2 solve x^2 - tr(M*M) x + |det M|^2 = 0.
    const double t = squared_norm(v);
    const double d = std::norm(report.determinant);
    const double disc = std::sqrt(std::max(0.0, t * t - 4.0 * d));
    const double s1sq = std::max(0.0, 0.5 * (t + disc));
    const double s2sq = std::max(0.0, 0.5 * (t - disc));
    report.singular_values = {std::sqrt(s1sq), std::sqrt(s2sq)};

    const double w1 = s1sq / t;
    const double w2 = s2sq / t;
    report.entropy_bits = std::clamp(entropy_term(w1) + entropy_term(w2), 0.0, 1.0);

    report.verdict = std::abs(report.determinant) <= profile.product_det ? StateKind::Product
                                                                         : StateKind::Entangled;
    return report;
}

MeasurementReport classify_measurement(const SpectralFamily& family,
                                       const ToleranceProfile& profile) {
    require_orthonormal(family, profile);

    MeasurementReport report;
    report.product_count = 0;
    for (std::size_t k = 0; k < 4; ++k) {
        report.eigenstates[k] = product_test(family.eigenvectors[k], profile);
        if (report.eigenstates[k].verdict == StateKind::Product) ++report.product_count;
    }
    report.verdict = report.product_count == 4 ? MeasurementKind::ProductMeasurement
                                               : MeasurementKind::EntangledMeasurement;
    return report;
}

HermitianOperator4 build_operator(const SpectralFamily& family, const ToleranceProfile& profile) {
    require_orthonormal(family, profile);

    HermitianOperator4 op;
    for (std::size_t k = 0; k < 4; ++k) {
        const Vec4& v = family.eigenvectors[k];
        const double lambda = family.outcomes[k];
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                op.at(r, c) += lambda * v[static_cast<std::size_t>(r)] *
                               std::conj(v[static_cast<std::size_t>(c)]);
    }
    return op;
}

Vec4 apply(const HermitianOperator4& op, const Vec4& v) {
    Vec4 out;
    for (int r = 0; r < 4; ++r) {
        Complex acc{};
        for (int c = 0; c < 4; ++c) acc += op.at(r, c) * v[static_cast<std::size_t>(c)];
        out[static_cast<std::size_t>(r)] = acc;
    }
    return out;
}

double hermiticity_residual(const HermitianOperator4& op) {
    double worst = 0.0;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            worst = std::max(worst, std::abs(op.at(r, c) - std::conj(op.at(c, r))));
    return worst;
}

double expectation_value(const HermitianOperator4& op, const Vec4& state) {
    return inner_product(state, apply(op, state)).real();
}

} // namespace qcorpus
