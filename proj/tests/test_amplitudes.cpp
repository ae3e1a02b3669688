#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qcorpus/amplitudes.hpp"
#include "qcorpus/solver.hpp"

#include "helpers.hpp"

using namespace qcorpus;
using qcorpus::testing::random_probabilities;
using qcorpus::testing::random_unit_vec2;
using qcorpus::testing::random_unit_vec4;

TEST_CASE("inner product basics") {
    const Vec4 e0{1.0, 0.0, 0.0, 0.0};
    CHECK(inner_product(e0, e0) == Complex{1.0, 0.0});

    // Orthogonal middle-subspace pair, printed to two decimals.
    const Vec4 u{0.0, 0.15, -0.99, 0.0};
    const Vec4 v{0.0, 0.99, 0.15, 0.0};
    CHECK(std::abs(inner_product(u, v)) == 0.0);

    const Vec4 w{0.0, 0.0, 0.0, -1.0};
    CHECK(std::abs(inner_product(w, singlet_state())) == 0.0);
}

TEST_CASE("inner product conjugate symmetry") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const Vec4 u = random_unit_vec4(rng);
        const Vec4 v = random_unit_vec4(rng);
        const Complex lhs = inner_product(u, v);
        const Complex rhs = std::conj(inner_product(v, u));
        CHECK(std::abs(lhs - rhs) <= 1e-15);
    }
}

TEST_CASE("tensor product component order") {
    const Vec2 one{1.0, 0.0};
    const Vec2 two{0.0, 1.0};

    Vec4 t = tensor_product(one, one);
    CHECK(t[0] == Complex{1.0, 0.0});
    CHECK(t[1] == Complex{});
    CHECK(t[2] == Complex{});
    CHECK(t[3] == Complex{});

    t = tensor_product(two, one);
    CHECK(t[2] == Complex{1.0, 0.0});
    CHECK(std::norm(t[0]) + std::norm(t[1]) + std::norm(t[3]) == 0.0);

    const double r = 1.0 / std::sqrt(2.0);
    t = tensor_product(Vec2{r, r}, one);
    CHECK(t[0].real() == doctest::Approx(r));
    CHECK(t[2].real() == doctest::Approx(r));
    CHECK(std::norm(t[1]) + std::norm(t[3]) == 0.0);
}

TEST_CASE("tensor product norm is multiplicative") {
    std::mt19937_64 rng(12);
    std::normal_distribution<double> g;
    for (int i = 0; i < 200; ++i) {
        const Vec2 x{{g(rng), g(rng)}, {g(rng), g(rng)}};
        const Vec2 y{{g(rng), g(rng)}, {g(rng), g(rng)}};
        CHECK(norm(tensor_product(x, y)) == doctest::Approx(norm(x) * norm(y)).epsilon(1e-12));
    }
}

TEST_CASE("born probabilities against the singlet") {
    const Vec4 p = singlet_state();

    CHECK(born_probability(Vec4{0.0, 0.0, 0.0, -1.0}, p, kStrict.normalization) == 0.0);

    // Quoted two-decimal eigenvector: reproduces the 0.6526 frequency to 1e-2.
    const Vec4 hw{0.0, 0.15, -0.99, 0.0};
    CHECK(std::abs(born_probability(hw, p, kQuoted.normalization) - 0.6526) <= 0.01);

    std::mt19937_64 rng(13);
    for (int i = 0; i < 50; ++i) {
        const Vec4 v = random_unit_vec4(rng);
        CHECK(born_probability(v, v, kStrict.normalization) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("born probability rejects non-normalized input") {
    const Vec4 p = singlet_state();
    const Vec4 big{0.0, 1.1, 0.0, 0.0};
    CHECK_THROWS_AS(born_probability(big, p, kStrict.normalization), std::invalid_argument);
    CHECK_THROWS_AS(born_probability(p, big, kQuoted.normalization), std::invalid_argument);
    const Vec4 bad{Complex{std::nan(""), 0.0}, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(born_probability(bad, p, kQuoted.normalization), std::invalid_argument);
    CHECK_FALSE(is_finite(bad));
}

TEST_CASE("completeness: probabilities over an orthonormal family sum to 1") {
    std::mt19937_64 rng(14);
    for (int i = 0; i < 100; ++i) {
        const Vec4 state = random_unit_vec4(rng);
        const SpectralFamily family =
            solve_constructive(random_unit_vec4(rng), random_probabilities(rng));
        double sum = 0.0;
        for (const Vec4& v : family.eigenvectors)
            sum += born_probability(v, state, kStrict.normalization);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("global phase invariance of the born rule") {
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    for (int i = 0; i < 200; ++i) {
        const Vec4 v = random_unit_vec4(rng);
        const Vec4 p = random_unit_vec4(rng);
        const double base = born_probability(v, p, kStrict.normalization);
        const double rotated = born_probability(phase_rotated(v, angle(rng)), p, 1e-10);
        CHECK(std::abs(base - rotated) <= 1e-14);
    }
}

TEST_CASE("cauchy-schwarz") {
    std::mt19937_64 rng(16);
    std::normal_distribution<double> g;
    for (int i = 0; i < 500; ++i) {
        Vec4 u;
        Vec4 v;
        for (std::size_t k = 0; k < 4; ++k) {
            u[k] = {g(rng), g(rng)};
            v[k] = {g(rng), g(rng)};
        }
        CHECK(std::norm(inner_product(u, v)) <=
              squared_norm(u) * squared_norm(v) * (1.0 + 1e-12) + 1e-300);
    }
}
