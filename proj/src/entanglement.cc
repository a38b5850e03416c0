#include "qbell/entanglement.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qbell/error.h"

namespace qbell {

namespace {

constexpr double kRadicandTolerance = 1e-9;

/// Eigenvalues of rho at or below this are treated as numerical zeros.
constexpr double kRankCutoff = 1e-12;

double checked_sqrt(double radicand, const char *what) {
    if (radicand < -kRadicandTolerance) {
        throw DomainError(std::string(what) + ": radicand " + std::to_string(radicand) + " is negative");
    }
    return std::sqrt(std::max(0.0, radicand));
}

ComplexMatrix spin_flip() {
    // sigma_y (x) sigma_y
    return ComplexMatrix::from_rows({
        {0, 0, 0, -1},
        {0, 0, 1, 0},
        {0, 1, 0, 0},
        {-1, 0, 0, 0},
    });
}

void require_bits(const std::string &bits, std::size_t length, const char *name) {
    if (bits.size() != length) {
        throw ValidationError(std::string(name) + " must have " + std::to_string(length) + " bits, got " +
                              std::to_string(bits.size()));
    }
    if (bits.find_first_not_of("01") != std::string::npos) {
        throw ValidationError(std::string(name) + " may only contain 0 and 1");
    }
}

}  // namespace

double concurrence_pure(const PureState &psi, const Bipartition &cut) {
    return generalized_concurrence(psi, cut, 1);
}

double generalized_concurrence(const PureState &psi, const Bipartition &cut, std::size_t delta) {
    if (delta < 1) {
        throw DomainError("generalized concurrence needs delta >= 1");
    }
    double p = purity(reduced_density(psi, cut));
    return checked_sqrt(2 * (1 - std::ldexp(p, static_cast<int>(delta) - 1)), "generalized concurrence");
}

WoottersReport wootters_concurrence(const DensityMatrix &rho) {
    if (rho.n_sites() != 2) {
        throw ValidationError("Wootters concurrence is defined for 2 qubits, got " + std::to_string(rho.n_sites()));
    }
    auto yy = spin_flip();
    auto tilde = yy * rho.matrix().conjugate() * yy;

    // Restrict to the support of rho. With V the kept eigenvectors and P their eigenvalues,
    // sqrt(P) V^dagger rho_tilde V sqrt(P) carries the non-zero eigenvalues of
    // sqrt(rho) rho_tilde sqrt(rho), without square roots of rounding noise.
    auto eig = hermitian_eig(rho.matrix());
    std::vector<std::size_t> support;
    for (std::size_t k = 0; k < 4; k++) {
        if (eig.eigenvalues[k] > kRankCutoff) {
            support.push_back(k);
        }
    }
    std::size_t r = support.size();
    ComplexMatrix basis(4, r);
    for (std::size_t j = 0; j < r; j++) {
        double scale = std::sqrt(eig.eigenvalues[support[j]]);
        for (std::size_t i = 0; i < 4; i++) {
            basis(i, j) = eig.eigenvectors(i, support[j]) * scale;
        }
    }
    auto m = basis.adjoint() * tilde * basis;
    m = (m + m.adjoint()) * Complex{0.5};
    std::vector<double> values(4, 0.0);
    if (r > 0) {
        auto reduced = hermitian_eig(m).eigenvalues;
        std::copy(reduced.begin(), reduced.end(), values.begin());
    }

    WoottersReport out;
    for (std::size_t i = 0; i < 4; i++) {
        out.xi[i] = std::sqrt(std::max(0.0, values[i]));
    }
    out.margin = out.xi[0] - out.xi[1] - out.xi[2] - out.xi[3];
    out.concurrence = std::max(0.0, out.margin);
    return out;
}

double f_alpha(std::size_t alpha, double c) {
    if (alpha < 2) {
        throw DomainError("f_alpha needs alpha >= 2");
    }
    if (!(c >= 0 && c <= 1 + 1e-12)) {
        throw DomainError("f_alpha needs a concurrence in [0, 1], got " + std::to_string(c));
    }
    double c2 = c * c;
    double scale = std::ldexp(1.0, static_cast<int>(alpha) - 2);  // 2^(alpha-2)
    double linear = std::sqrt(2 * scale) * c;                   // 2^((alpha-1)/2) c
    if (alpha % 2 == 0) {
        return c2 <= 1 / scale ? std::sqrt(1 + scale * c2) : linear;
    }
    return c2 <= 1 / (1 + scale) ? std::sqrt(1 + (scale - 1) * c2) : linear;
}

std::pair<double, double> lambda_from_concurrence(double c) {
    if (!(c >= 0 && c <= 1)) {
        throw DomainError("concurrence must lie in [0, 1], got " + std::to_string(c));
    }
    double r = std::sqrt(1 - c * c);
    return {(1 + r) / 2, (1 - r) / 2};
}

void TheoremFamilySpec::validate() const {
    if (alpha < 2 || alpha > n) {
        throw ValidationError("theorem family needs 2 <= alpha <= n");
    }
    require_bits(u_bits, n - alpha, "u");
    require_bits(v_bits, alpha - 1, "v");
    if (std::abs(lambda_plus * lambda_plus + lambda_minus * lambda_minus - 1) > 1e-12) {
        throw ValidationError("theorem family needs lambda_+^2 + lambda_-^2 = 1");
    }
}

PureState theorem_state(const TheoremFamilySpec &spec) {
    spec.validate();
    std::size_t prefix = 0;
    for (char ch : spec.u_bits) {
        prefix = (prefix << 1) | static_cast<std::size_t>(ch - '0');
    }
    std::size_t v = 0;
    for (char ch : spec.v_bits) {
        v = (v << 1) | static_cast<std::size_t>(ch - '0');
    }
    std::size_t v_tilde = v ^ ((std::size_t{1} << (spec.alpha - 1)) - 1);
    std::size_t block = prefix << spec.alpha;

    std::vector<Complex> amps(std::size_t{1} << spec.n);
    amps[block | (v << 1) | 1] = spec.lambda_plus;
    amps[block | (v_tilde << 1)] = spec.lambda_minus;
    return PureState::from_amplitudes(spec.n, std::move(amps));
}

double mixed_bound(std::span<const double> weights, std::span<const PureState> states, std::size_t alpha) {
    // Validates weights and shapes.
    (void)mix(weights, states);
    double acc = 0;
    for (std::size_t i = 0; i < states.size(); i++) {
        std::size_t n = states[i].n_sites();
        if (n < 2) {
            throw ValidationError("mixed bound needs states on at least 2 sites");
        }
        double c = concurrence_pure(states[i], Bipartition(n, {n}));
        acc += weights[i] * f_alpha(alpha, std::min(c, 1.0));
    }
    return 2 * acc;
}

}  // namespace qbell
