#pragma once

#include <array>
#include <complex>
#include <cstddef>

namespace qcorpus {

using Complex = std::complex<double>;

// Tolerances used by norm, orthogonality, Born-residual and product-state
// checks. Strict values suit solver output; quoted values accept vectors
// printed to two or three decimals (0.15^2 + 0.99^2 = 1.0026, and two-decimal
// rounding perturbs the reshaped determinant by up to ~0.015).
struct ToleranceProfile {
    double normalization; // | ||v||^2 - 1 |
    double orthogonality; // |<v_i|v_j>| for i != j
    double born;          // | |<v|p>|^2 - mu |
    double product_det;   // |v0 v3 - v1 v2| at or below which a state is a product
};

inline constexpr ToleranceProfile kStrict{1e-12, 1e-12, 1e-10, 1e-9};
inline constexpr ToleranceProfile kQuoted{1e-2, 1e-2, 1e-2, 2e-2};

// Vector in the 2-dimensional factor space of one side.
struct Vec2 {
    std::array<Complex, 2> c{};

    Vec2() = default;
    Vec2(Complex c0, Complex c1) : c{c0, c1} {}

    Complex& operator[](std::size_t i) { return c[i]; }
    const Complex& operator[](std::size_t i) const { return c[i]; }
};

// Vector in the 4-dimensional composite space. Component order follows the
// canonical tensor basis: (x1 y1, x1 y2, x2 y1, x2 y2).
struct Vec4 {
    std::array<Complex, 4> c{};

    Vec4() = default;
    Vec4(Complex c0, Complex c1, Complex c2, Complex c3) : c{c0, c1, c2, c3} {}

    Complex& operator[](std::size_t i) { return c[i]; }
    const Complex& operator[](std::size_t i) const { return c[i]; }
};

Vec4 operator+(const Vec4& u, const Vec4& v);
Vec4 operator-(const Vec4& u, const Vec4& v);
Vec4 operator*(Complex s, const Vec4& v);

// <u|v> = sum conj(u_k) v_k; conjugate-linear in the first argument.
Complex inner_product(const Vec2& u, const Vec2& v);
Complex inner_product(const Vec4& u, const Vec4& v);

double squared_norm(const Vec2& v);
double squared_norm(const Vec4& v);
double norm(const Vec2& v);
double norm(const Vec4& v);

bool is_finite(const Vec2& v);
bool is_finite(const Vec4& v);

// True when | ||v||^2 - 1 | <= tol.
bool is_normalized(const Vec2& v, double tol);
bool is_normalized(const Vec4& v, double tol);

// Kronecker product in the canonical component order.
Vec4 tensor_product(const Vec2& x, const Vec2& y);

// e^{i theta} v.
Vec4 phase_rotated(const Vec4& v, double theta_rad);

// |<eigvec|state>|^2, clamped to [0,1] when the excess is attributable to the
// allowed norm slack. Throws std::invalid_argument when either vector fails
// the norm check at `norm_tol` or the overlap exceeds what that slack permits.
double born_probability(const Vec4& eigvec, const Vec4& state, double norm_tol);

} // namespace qcorpus
