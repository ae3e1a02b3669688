#pragma once

#include <array>
#include <random>

#include "qcorpus/amplitudes.hpp"
#include "qcorpus/chsh.hpp"

namespace qcorpus::testing {

inline Complex random_complex(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    return {g(rng), g(rng)};
}

inline Vec2 random_unit_vec2(std::mt19937_64& rng) {
    Vec2 v;
    double n = 0.0;
    do {
        v = {random_complex(rng), random_complex(rng)};
        n = norm(v);
    } while (n < 1e-6);
    return {v[0] / n, v[1] / n};
}

inline Vec4 random_unit_vec4(std::mt19937_64& rng) {
    Vec4 v;
    double n = 0.0;
    do {
        v = {random_complex(rng), random_complex(rng), random_complex(rng), random_complex(rng)};
        n = norm(v);
    } while (n < 1e-6);
    return Complex{1.0 / n, 0.0} * v;
}

inline std::array<double, 4> random_probabilities(std::mt19937_64& rng) {
    std::exponential_distribution<double> e(1.0);
    std::array<double, 4> p{};
    double sum = 0.0;
    for (double& x : p) {
        x = e(rng) + 1e-12;
        sum += x;
    }
    for (double& x : p) x /= sum;
    return p;
}

inline CoincidenceTable make_table(Setting s, const std::array<double, 4>& probs,
                                   const std::array<int, 4>& signs = {1, -1, -1, 1}) {
    CoincidenceTable t;
    t.setting = s;
    for (std::size_t k = 0; k < 4; ++k) {
        t.cells[k].label = std::string(setting_key(s)) + "." + std::to_string(k + 1);
        t.cells[k].probability = probs[k];
        t.cells[k].sign = signs[k];
    }
    return t;
}

inline ExperimentSuite make_suite(const std::array<std::array<double, 4>, 4>& probs,
                                  std::string name = "suite") {
    ExperimentSuite suite;
    suite.name = std::move(name);
    suite.mode = Mode::Direct;
    for (Setting s : kSettings) suite.table(s) = make_table(s, probs[setting_index(s)]);
    return suite;
}

} // namespace qcorpus::testing
