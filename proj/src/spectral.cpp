#include "qcorpus/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qcorpus {

double orthonormality_residual(const SpectralFamily& family) {
    double worst = 0.0;
    for (const Vec4& v : family.eigenvectors)
        worst = std::max(worst, std::abs(squared_norm(v) - 1.0));
    for (auto [i, j] : kOrthPairs) {
        const Complex ip = inner_product(family.eigenvectors[static_cast<std::size_t>(i)],
                                         family.eigenvectors[static_cast<std::size_t>(j)]);
        worst = std::max(worst, std::abs(ip));
    }
    return worst;
}

void require_orthonormal(const SpectralFamily& family, const ToleranceProfile& profile) {
    for (std::size_t k = 0; k < 4; ++k) {
        if (!is_finite(family.eigenvectors[k]))
            throw std::invalid_argument("spectral family: eigenvector " + std::to_string(k) +
                                        " is not finite");
        const double r = std::abs(squared_norm(family.eigenvectors[k]) - 1.0);
        if (r > profile.normalization)
            throw std::invalid_argument("spectral family: eigenvector " + std::to_string(k) +
                                        " norm residual " + std::to_string(r) +
                                        " exceeds tolerance");
    }
    for (auto [i, j] : kOrthPairs) {
        const double r = std::abs(inner_product(family.eigenvectors[static_cast<std::size_t>(i)],
                                                family.eigenvectors[static_cast<std::size_t>(j)]));
        if (r > profile.orthogonality)
            throw std::invalid_argument("spectral family: eigenvectors " + std::to_string(i) +
                                        " and " + std::to_string(j) + " overlap by " +
                                        std::to_string(r));
    }
}

} // namespace qcorpus
