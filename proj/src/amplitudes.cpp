#include "qcorpus/amplitudes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcorpus {

Vec4 operator+(const Vec4& u, const Vec4& v) {
    return {u[0] + v[0], u[1] + v[1], u[2] + v[2], u[3] + v[3]};
}

Vec4 operator-(const Vec4& u, const Vec4& v) {
    return {u[0] - v[0], u[1] - v[1], u[2] - v[2], u[3] - v[3]};
}

Vec4 operator*(Complex s, const Vec4& v) { return {s * v[0], s * v[1], s * v[2], s * v[3]}; }

Complex inner_product(const Vec2& u, const Vec2& v) {
    return std::conj(u[0]) * v[0] + std::conj(u[1]) * v[1];
}

Complex inner_product(const Vec4& u, const Vec4& v) {
    Complex acc{};
    for (std::size_t k = 0; k < 4; ++k) acc += std::conj(u[k]) * v[k];
    return acc;
}

double squared_norm(const Vec2& v) { return std::norm(v[0]) + std::norm(v[1]); }

double squared_norm(const Vec4& v) {
    return std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]) + std::norm(v[3]);
}

double norm(const Vec2& v) { return std::sqrt(squared_norm(v)); }
double norm(const Vec4& v) { return std::sqrt(squared_norm(v)); }

bool is_finite(const Vec2& v) {
    for (const Complex& z : v.c) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

bool is_finite(const Vec4& v) {
    for (const Complex& z : v.c) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

bool is_normalized(const Vec2& v, double tol) { return std::abs(squared_norm(v) - 1.0) <= tol; }
bool is_normalized(const Vec4& v, double tol) { return std::abs(squared_norm(v) - 1.0) <= tol; }

Vec4 tensor_product(const Vec2& x, const Vec2& y) {
    return {x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1]};
}

Vec4 phase_rotated(const Vec4& v, double theta_rad) {
    return Complex{std::cos(theta_rad), std::sin(theta_rad)} * v;
}

double born_probability(const Vec4& eigvec, const Vec4& state, double norm_tol) {
    if (!is_finite(eigvec) || !is_finite(state))
        throw std::invalid_argument("born_probability: non-finite input");
    if (!is_normalized(eigvec, norm_tol))
        throw std::invalid_argument("born_probability: eigenvector not normalized within tolerance");
    if (!is_normalized(state, norm_tol))
        throw std::invalid_argument("born_probability: state not normalized within tolerance");

    const double p = std::norm(inner_product(eigvec, state));
    // Cauchy-Schwarz bounds p by the product of squared norms, so with the
    // norm checks passed anything above this slack is a genuine violation.
    const double slack = (2.0 + norm_tol) * norm_tol + 1e-12;
    if (p > 1.0 + slack)
        throw std::invalid_argument("born_probability: overlap exceeds 1 beyond tolerance");
    return std::clamp(p, 0.0, 1.0);
}

} // namespace qcorpus
