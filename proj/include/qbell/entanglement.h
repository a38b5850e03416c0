#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <utility>

#include "qbell/states.h"

namespace qbell {

/// sqrt(2 (1 - Tr rho_A^2)) for the reduced state on cut.subsystem_a().
double concurrence_pure(const PureState &psi, const Bipartition &cut);

/// sqrt(2 (1 - 2^(delta-1) Tr rho_A^2)). delta = 1 is concurrence_pure. Throws DomainError when
/// delta < 1 or the radicand is below -1e-9; small negative radicands are clamped to zero.
double generalized_concurrence(const PureState &psi, const Bipartition &cut, std::size_t delta);

struct WoottersReport {
    /// Eigenvalues of sqrt(sqrt(rho) rho_tilde sqrt(rho)), descending.
    std::array<double, 4> xi{};
    /// xi_1 - xi_2 - xi_3 - xi_4, before clamping at zero.
    double margin = 0;
    /// max(0, margin).
    double concurrence = 0;
};

/// Two-qubit mixed-state concurrence with rho_tilde = (sy (x) sy) conj(rho) (sy (x) sy).
/// Eigenvalues of rho at or below 1e-12 are treated as zero, so rank-deficient inputs such as pure
/// states do not pick up square roots of rounding noise. Throws ValidationError unless rho has 2
/// sites.
WoottersReport wootters_concurrence(const DensityMatrix &rho);

/// Concurrence-to-violation map for the two-branch family on alpha entangled qubits.
/// Throws DomainError for alpha < 2 or c outside [0, 1 + 1e-12].
double f_alpha(std::size_t alpha, double c);

/// (lambda_+^2, lambda_-^2) = ((1 + sqrt(1 - c^2)) / 2, (1 - sqrt(1 - c^2)) / 2).
/// Throws DomainError for c outside [0, 1].
std::pair<double, double> lambda_from_concurrence(double c);

/// |u> (x) (lambda_+ |v> (x) |1> + lambda_- |v~> (x) |0>), with v~ the bitwise complement of v and
/// the final site as subsystem A.
struct TheoremFamilySpec {
    std::size_t n = 2;
    std::size_t alpha = 2;
    /// n - alpha characters over {0, 1}, sites 1..n-alpha.
    std::string u_bits;
    /// alpha - 1 characters over {0, 1}, sites n-alpha+1..n-1.
    std::string v_bits;
    double lambda_plus = 0;
    double lambda_minus = 0;

    /// Throws ValidationError on wrong bit-string lengths, non-binary characters, alpha outside
    /// 2..n or lambda_+^2 + lambda_-^2 off 1 by more than 1e-12.
    void validate() const;
};

PureState theorem_state(const TheoremFamilySpec &spec);

/// 2 sum_i p_i f_alpha(C(psi_i)), with each concurrence taken across the last site. An upper
/// bound on the maximal violation of the mixture.
double mixed_bound(std::span<const double> weights, std::span<const PureState> states, std::size_t alpha);

}  // namespace qbell
