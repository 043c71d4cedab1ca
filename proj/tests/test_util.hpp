#pragma once

#include <entx/linalg.hpp>

#include <random>

namespace testutil {

inline entx::ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    entx::ComplexMatrix m(rows, cols);
    for (auto& z : m.data) {
        z = entx::cplx(gauss(rng), gauss(rng));
    }
    return m;
}

inline entx::ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
    auto g = random_matrix(n, n, rng);
    entx::ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
        }
    }
    return h;
}

inline entx::ComplexVector random_state_vector(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    entx::ComplexVector v(dim);
    for (auto& z : v) {
        z = entx::cplx(gauss(rng), gauss(rng));
    }
    const double n = entx::vec_norm(v);
    for (auto& z : v) {
        z /= n;
    }
    return v;
}

// random probability vector, ascending
inline std::vector<double> random_prob_vector(std::size_t n, std::mt19937_64& rng) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> v(n);
    double s = 0;
    for (auto& x : v) {
        x = expo(rng);
        s += x;
    }
    for (auto& x : v) {
        x /= s;
    }
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace testutil
