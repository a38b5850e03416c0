#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qbell/linalg.h"
#include "qbell/rng.h"
#include "qbell/states.h"

namespace qbell::test_util {

inline PureState random_pure(std::size_t n, Rng &rng) {
    std::vector<Complex> amps(std::size_t{1} << n);
    double norm = 0;
    for (auto &z : amps) {
        z = {rng.gaussian(), rng.gaussian()};
        norm += std::norm(z);
    }
    for (auto &z : amps) {
        z /= std::sqrt(norm);
    }
    return PureState::from_amplitudes(n, std::move(amps));
}

inline DensityMatrix random_density(std::size_t n, std::size_t rank, Rng &rng) {
    std::vector<double> weights;
    std::vector<PureState> states;
    double total = 0;
    for (std::size_t k = 0; k < rank; k++) {
        weights.push_back(rng.uniform() + 0.05);
        total += weights.back();
        states.push_back(random_pure(n, rng));
    }
    for (auto &w : weights) {
        w /= total;
    }
    return mix(weights, states);
}

inline ComplexMatrix single_pauli(char symbol) {
    const Complex i{0, 1};
    switch (symbol) {
        case 'x':
            return ComplexMatrix::from_rows({{0, 1}, {1, 0}});
        case 'y':
            return ComplexMatrix::from_rows({{0, -i}, {i, 0}});
        case 'z':
            return ComplexMatrix::from_rows({{1, 0}, {0, -1}});
        default:
            return ComplexMatrix::identity(2);
    }
}

/// Dense operator for a string like "xyiz", site 1 leftmost.
inline ComplexMatrix dense_pauli(const std::string &symbols) {
    ComplexMatrix out = ComplexMatrix::identity(1);
    for (char c : symbols) {
        out = kron(out, single_pauli(c));
    }
    return out;
}

/// Tr(rho op), real part.
inline double trace_product(const ComplexMatrix &rho, const ComplexMatrix &op) {
    Complex acc = 0;
    for (std::size_t r = 0; r < rho.rows(); r++) {
        for (std::size_t c = 0; c < rho.cols(); c++) {
            acc += rho(r, c) * op(c, r);
        }
    }
    return acc.real();
}

/// sigma . v
inline ComplexMatrix sigma_dot(const std::array<double, 3> &v) {
    return single_pauli('x') * Complex{v[0]} + single_pauli('y') * Complex{v[1]} + single_pauli('z') * Complex{v[2]};
}

/// Brute-force partial trace over the sites not in `keep` (ascending, 1-based).
inline ComplexMatrix brute_partial_trace(const ComplexMatrix &rho, std::size_t n, const std::vector<std::size_t> &keep) {
    std::size_t dim = std::size_t{1} << n;
    std::size_t da = std::size_t{1} << keep.size();
    ComplexMatrix out(da, da);
    auto project = [&](std::size_t index) {
        std::size_t a = 0;
        for (std::size_t site : keep) {
            a = (a << 1) | ((index >> (n - site)) & 1);
        }
        return a;
    };
    auto rest = [&](std::size_t index) {
        std::size_t mask = 0;
        for (std::size_t site : keep) {
            mask |= std::size_t{1} << (n - site);
        }
        return index & ~mask;
    };
    for (std::size_t i = 0; i < dim; i++) {
        for (std::size_t j = 0; j < dim; j++) {
            if (rest(i) == rest(j)) {
                out(project(i), project(j)) += rho(i, j);
            }
        }
    }
    return out;
}

}  // namespace qbell::test_util
