#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qbell/linalg.h"

namespace qbell {

/// Site k (1-based) of an n-qubit register is bit (n - k) of the basis index, so site 1 is the
/// leftmost tensor factor. |0> = (1, 0)^T, |1> = (0, 1)^T.
inline constexpr std::size_t site_bit(std::size_t n_sites, std::size_t site) {
    return n_sites - site;
}

/// Normalized state vector of length 2^n.
class PureState {
   public:
    /// Validates length 2^n. Inputs whose norm is within 1e-10 of 1 are stored as given; norms off
    /// by less than 1e-6 are rescaled (see input_norm()); anything else throws ValidationError.
    static PureState from_amplitudes(std::size_t n_sites, std::vector<Complex> amplitudes);

    std::size_t n_sites() const { return n_sites_; }
    std::size_t dim() const { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    Complex amplitude(std::size_t index) const { return amplitudes_[index]; }

    /// Norm of the amplitudes that were passed in. Differs from 1 when the input was rescaled.
    double input_norm() const { return input_norm_; }

   private:
    PureState(std::size_t n, std::vector<Complex> amps, double input_norm)
        : n_sites_(n), amplitudes_(std::move(amps)), input_norm_(input_norm) {
    }

    std::size_t n_sites_ = 0;
    std::vector<Complex> amplitudes_;
    double input_norm_ = 1;
};

/// Unit-trace Hermitian PSD matrix on n qubits.
class DensityMatrix {
   public:
    /// Full validation: Hermitian within 1e-10, trace 1 within 1e-10, eigenvalues >= -1e-9.
    static DensityMatrix from_matrix(std::size_t n_sites, ComplexMatrix matrix);

    std::size_t n_sites() const { return n_sites_; }
    std::size_t dim() const { return matrix_.rows(); }
    const ComplexMatrix &matrix() const { return matrix_; }

   private:
    friend DensityMatrix unchecked_density(std::size_t n_sites, ComplexMatrix matrix);

    DensityMatrix(std::size_t n, ComplexMatrix m) : n_sites_(n), matrix_(std::move(m)) {
    }

    std::size_t n_sites_ = 0;
    ComplexMatrix matrix_;
};

/// Subsystem A of an n-site register, 1-based sites in ascending order. B is the complement.
class Bipartition {
   public:
    /// Throws ValidationError unless `sites` is non-empty, duplicate-free, within 1..n and a strict
    /// subset of the register.
    Bipartition(std::size_t n_sites, std::vector<std::size_t> sites);

    std::size_t n_sites() const { return n_sites_; }
    const std::vector<std::size_t> &subsystem_a() const { return sites_a_; }
    std::vector<std::size_t> subsystem_b() const;
    std::size_t size_a() const { return sites_a_.size(); }

   private:
    std::size_t n_sites_;
    std::vector<std::size_t> sites_a_;
};

DensityMatrix density_from_pure(const PureState &psi);

/// Convex combination of projectors. Weights must be non-negative and sum to 1 within 1e-10.
DensityMatrix mix(std::span<const double> weights, std::span<const PureState> states);

/// Trusted constructor for matrices that are density matrices by construction (e.g. thermal
/// states). Only checks shape.
DensityMatrix unchecked_density(std::size_t n_sites, ComplexMatrix matrix);

/// Reduced state on `keep.subsystem_a()`, sites kept in ascending order.
DensityMatrix partial_trace(const DensityMatrix &rho, const Bipartition &keep);

/// Same as partial_trace(density_from_pure(psi), keep) without forming the 2^n x 2^n projector.
DensityMatrix reduced_density(const PureState &psi, const Bipartition &keep);

/// Relabels sites: new site k carries old site order[k-1]. `order` must be a permutation of 1..n.
PureState permute_sites(const PureState &psi, std::span<const std::size_t> order);
DensityMatrix permute_sites(const DensityMatrix &rho, std::span<const std::size_t> order);

double purity(const DensityMatrix &rho);

/// Eigenvalues of rho, descending, with values in [-1e-9, 0) clamped to 0.
std::vector<double> spectrum(const DensityMatrix &rho);

/// Shannon entropy (nats) of a probability vector; entries below 1e-14 contribute nothing.
double shannon_entropy(std::span<const double> probabilities);

/// Renyi entropy (nats) of a probability vector; order 1 (within 1e-12) gives Shannon.
double renyi_entropy_of_spectrum(std::span<const double> probabilities, double order);

/// -Tr rho ln rho in nats.
double von_neumann_entropy(const DensityMatrix &rho);

/// (1/(1-order)) ln Tr rho^order in nats. Throws DomainError for order <= 0.
double renyi_entropy(const DensityMatrix &rho, double order);

}  // namespace qbell
