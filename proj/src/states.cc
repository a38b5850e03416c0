#include "qbell/states.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "qbell/error.h"

namespace qbell {

namespace {

constexpr double kNormExactTolerance = 1e-10;
constexpr double kNormRescaleTolerance = 1e-6;
constexpr double kDensityTolerance = 1e-10;
constexpr double kNegativeEigenvalueTolerance = 1e-9;
constexpr double kEntropyCutoff = 1e-14;

std::size_t dim_for(std::size_t n_sites) {
    if (n_sites == 0 || n_sites > kMaxDenseQubits) {
        throw CapacityError("qubit count " + std::to_string(n_sites) + " outside 1.." +
                            std::to_string(kMaxDenseQubits));
    }
    return std::size_t{1} << n_sites;
}

void require_permutation(std::span<const std::size_t> order, std::size_t n) {
    if (order.size() != n) {
        throw ValidationError("site permutation has " + std::to_string(order.size()) + " entries, expected " +
                              std::to_string(n));
    }
    std::vector<bool> seen(n + 1, false);
    for (std::size_t s : order) {
        if (s < 1 || s > n || seen[s]) {
            throw ValidationError("site permutation is not a permutation of 1.." + std::to_string(n));
        }
        seen[s] = true;
    }
}

/// For each new basis index, the old basis index it came from.
std::vector<std::size_t> permuted_indices(std::size_t n, std::span<const std::size_t> order) {
    std::size_t dim = std::size_t{1} << n;
    std::vector<std::size_t> old_of_new(dim);
    for (std::size_t j = 0; j < dim; j++) {
        std::size_t i = 0;
        for (std::size_t k = 1; k <= n; k++) {
            if ((j >> site_bit(n, k)) & 1) {
                i |= std::size_t{1} << site_bit(n, order[k - 1]);
            }
        }
        old_of_new[j] = i;
    }
    return old_of_new;
}

/// Splits each full index into (index within A, index within B), each big-endian in site order.
struct SplitIndex {
    std::vector<std::size_t> a;
    std::vector<std::size_t> b;
};

SplitIndex split_indices(const Bipartition &cut) {
    std::size_t n = cut.n_sites();
    std::size_t dim = std::size_t{1} << n;
    auto sites_a = cut.subsystem_a();
    auto sites_b = cut.subsystem_b();
    SplitIndex out{std::vector<std::size_t>(dim), std::vector<std::size_t>(dim)};
    for (std::size_t i = 0; i < dim; i++) {
        std::size_t ia = 0;
        for (std::size_t s : sites_a) {
            ia = (ia << 1) | ((i >> site_bit(n, s)) & 1);
        }
        std::size_t ib = 0;
        for (std::size_t s : sites_b) {
            ib = (ib << 1) | ((i >> site_bit(n, s)) & 1);
        }
        out.a[i] = ia;
        out.b[i] = ib;
    }
    return out;
}

}  // namespace

PureState PureState::from_amplitudes(std::size_t n_sites, std::vector<Complex> amplitudes) {
    std::size_t dim = dim_for(n_sites);
    if (amplitudes.size() != dim) {
        throw ValidationError("pure state on " + std::to_string(n_sites) + " qubits needs " + std::to_string(dim) +
                              " amplitudes, got " + std::to_string(amplitudes.size()));
    }
    double norm_sq = 0;
    for (const auto &z : amplitudes) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw ValidationError("pure state has a non-finite amplitude");
        }
        norm_sq += std::norm(z);
    }
    double norm = std::sqrt(norm_sq);
    if (norm == 0) {
        throw ValidationError("pure state normalization: amplitude vector is zero");
    }
    double deviation = std::abs(norm - 1);
    if (deviation >= kNormRescaleTolerance) {
        throw ValidationError("pure state normalization: norm " + std::to_string(norm) +
                              " deviates from 1 by more than 1e-6");
    }
    if (deviation > kNormExactTolerance) {
        for (auto &z : amplitudes) {
            z /= norm;
        }
    }
    return PureState(n_sites, std::move(amplitudes), norm);
}

DensityMatrix DensityMatrix::from_matrix(std::size_t n_sites, ComplexMatrix matrix) {
    std::size_t dim = dim_for(n_sites);
    if (matrix.rows() != dim || matrix.cols() != dim) {
        throw ValidationError("density matrix on " + std::to_string(n_sites) + " qubits must be " +
                              std::to_string(dim) + "x" + std::to_string(dim));
    }
    double deviation = matrix.hermitian_deviation();
    if (deviation > kDensityTolerance) {
        throw ValidationError("density matrix is not Hermitian (deviation " + std::to_string(deviation) + ")");
    }
    Complex tr = matrix.trace();
    if (std::abs(tr - Complex{1}) > kDensityTolerance) {
        throw ValidationError("density matrix trace is " + std::to_string(tr.real()) + ", expected 1");
    }
    auto eig = hermitian_eig(matrix);
    if (eig.eigenvalues.back() < -kNegativeEigenvalueTolerance) {
        throw ValidationError("density matrix has negative eigenvalue " + std::to_string(eig.eigenvalues.back()));
    }
    return DensityMatrix(n_sites, std::move(matrix));
}

DensityMatrix unchecked_density(std::size_t n_sites, ComplexMatrix matrix) {
    std::size_t dim = dim_for(n_sites);
    if (matrix.rows() != dim || matrix.cols() != dim) {
        throw ValidationError("density matrix on " + std::to_string(n_sites) + " qubits must be " +
                              std::to_string(dim) + "x" + std::to_string(dim));
    }
    return DensityMatrix(n_sites, std::move(matrix));
}

Bipartition::Bipartition(std::size_t n_sites, std::vector<std::size_t> sites)
    : n_sites_(n_sites), sites_a_(std::move(sites)) {
    if (sites_a_.empty()) {
        throw ValidationError("bipartition: subsystem A is empty");
    }
    std::sort(sites_a_.begin(), sites_a_.end());
    if (std::adjacent_find(sites_a_.begin(), sites_a_.end()) != sites_a_.end()) {
        throw ValidationError("bipartition: duplicate site in subsystem A");
    }
    if (sites_a_.front() < 1 || sites_a_.back() > n_sites_) {
        throw ValidationError("bipartition: site index outside 1.." + std::to_string(n_sites_));
    }
    if (sites_a_.size() >= n_sites_) {
        throw ValidationError("bipartition: subsystem A must be a strict subset of the register");
    }
}

std::vector<std::size_t> Bipartition::subsystem_b() const {
    std::vector<std::size_t> out;
    for (std::size_t s = 1; s <= n_sites_; s++) {
        if (!std::binary_search(sites_a_.begin(), sites_a_.end(), s)) {
            out.push_back(s);
        }
    }
    return out;
}

DensityMatrix density_from_pure(const PureState &psi) {
    std::size_t dim = psi.dim();
    auto amps = psi.amplitudes();
    ComplexMatrix m(dim, dim);
    for (std::size_t r = 0; r < dim; r++) {
        for (std::size_t c = 0; c < dim; c++) {
            m(r, c) = amps[r] * std::conj(amps[c]);
        }
    }
    return unchecked_density(psi.n_sites(), std::move(m));
}

DensityMatrix mix(std::span<const double> weights, std::span<const PureState> states) {
    if (weights.size() != states.size() || states.empty()) {
        throw ValidationError("mix: need one weight per state and at least one state");
    }
    double total = 0;
    for (double w : weights) {
        if (!(w >= 0)) {
            throw ValidationError("mix: weights must be non-negative");
        }
        total += w;
    }
    if (std::abs(total - 1) > kDensityTolerance) {
        throw ValidationError("mix: weights sum to " + std::to_string(total) + ", expected 1");
    }
    std::size_t n = states[0].n_sites();
    std::size_t dim = states[0].dim();
    ComplexMatrix m(dim, dim);
    for (std::size_t k = 0; k < states.size(); k++) {
        if (states[k].n_sites() != n) {
            throw ValidationError("mix: states have different qubit counts");
        }
        auto amps = states[k].amplitudes();
        for (std::size_t r = 0; r < dim; r++) {
            Complex ar = weights[k] * amps[r];
            for (std::size_t c = 0; c < dim; c++) {
                m(r, c) += ar * std::conj(amps[c]);
            }
        }
    }
    return unchecked_density(n, std::move(m));
}

DensityMatrix partial_trace(const DensityMatrix &rho, const Bipartition &keep) {
    if (keep.n_sites() != rho.n_sites()) {
        throw ValidationError("partial_trace: bipartition is for " + std::to_string(keep.n_sites()) +
                              " sites, state has " + std::to_string(rho.n_sites()));
    }
    std::size_t n = rho.n_sites();
    std::size_t dim_a = std::size_t{1} << keep.size_a();
    std::size_t dim_b = std::size_t{1} << (n - keep.size_a());
    auto split = split_indices(keep);

    // full_index[ia][ib]
    std::vector<std::size_t> full_index(dim_a * dim_b);
    for (std::size_t i = 0; i < split.a.size(); i++) {
        full_index[split.a[i] * dim_b + split.b[i]] = i;
    }
    const auto &m = rho.matrix();
    ComplexMatrix out(dim_a, dim_a);
    for (std::size_t r = 0; r < dim_a; r++) {
        for (std::size_t c = 0; c < dim_a; c++) {
            Complex acc = 0;
            for (std::size_t b = 0; b < dim_b; b++) {
                acc += m(full_index[r * dim_b + b], full_index[c * dim_b + b]);
            }
            out(r, c) = acc;
        }
    }
    return unchecked_density(keep.size_a(), std::move(out));
}

DensityMatrix reduced_density(const PureState &psi, const Bipartition &keep) {
    if (keep.n_sites() != psi.n_sites()) {
        throw ValidationError("reduced_density: bipartition is for " + std::to_string(keep.n_sites()) +
                              " sites, state has " + std::to_string(psi.n_sites()));
    }
    std::size_t n = psi.n_sites();
    std::size_t dim_a = std::size_t{1} << keep.size_a();
    std::size_t dim_b = std::size_t{1} << (n - keep.size_a());
    auto split = split_indices(keep);

    // Reshape psi into a dim_a x dim_b matrix M; rho_A = M M^dagger.
    std::vector<Complex> reshaped(dim_a * dim_b);
    auto amps = psi.amplitudes();
    for (std::size_t i = 0; i < amps.size(); i++) {
        reshaped[split.a[i] * dim_b + split.b[i]] = amps[i];
    }
    ComplexMatrix out(dim_a, dim_a);
    for (std::size_t r = 0; r < dim_a; r++) {
        for (std::size_t c = r; c < dim_a; c++) {
            Complex acc = 0;
            for (std::size_t b = 0; b < dim_b; b++) {
                acc += reshaped[r * dim_b + b] * std::conj(reshaped[c * dim_b + b]);
            }
            out(r, c) = acc;
            out(c, r) = std::conj(acc);
        }
        out(r, r) = out(r, r).real();
    }
    return unchecked_density(keep.size_a(), std::move(out));
}

PureState permute_sites(const PureState &psi, std::span<const std::size_t> order) {
    require_permutation(order, psi.n_sites());
    auto old_of_new = permuted_indices(psi.n_sites(), order);
    std::vector<Complex> amps(psi.dim());
    for (std::size_t j = 0; j < amps.size(); j++) {
        amps[j] = psi.amplitude(old_of_new[j]);
    }
    return PureState::from_amplitudes(psi.n_sites(), std::move(amps));
}

DensityMatrix permute_sites(const DensityMatrix &rho, std::span<const std::size_t> order) {
    require_permutation(order, rho.n_sites());
    auto old_of_new = permuted_indices(rho.n_sites(), order);
    std::size_t dim = rho.dim();
    ComplexMatrix m(dim, dim);
    for (std::size_t r = 0; r < dim; r++) {
        for (std::size_t c = 0; c < dim; c++) {
            m(r, c) = rho.matrix()(old_of_new[r], old_of_new[c]);
        }
    }
    return unchecked_density(rho.n_sites(), std::move(m));
}

double purity(const DensityMatrix &rho) {
    // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
    double s = 0;
    for (const auto &z : rho.matrix().entries()) {
        s += std::norm(z);
    }
    return s;
}

std::vector<double> spectrum(const DensityMatrix &rho) {
    auto values = hermitian_eig(rho.matrix()).eigenvalues;
    for (auto &v : values) {
        if (v < 0 && v >= -kNegativeEigenvalueTolerance) {
            v = 0;
        }
    }
    return values;
}

double shannon_entropy(std::span<const double> probabilities) {
    double s = 0;
    for (double p : probabilities) {
        if (p > kEntropyCutoff) {
            s -= p * std::log(p);
        }
    }
    return s;
}

double renyi_entropy_of_spectrum(std::span<const double> probabilities, double order) {
    if (!(order > 0)) {
        throw DomainError("Renyi entropy order must be positive, got " + std::to_string(order));
    }
    if (std::abs(order - 1) <= 1e-12) {
        return shannon_entropy(probabilities);
    }
    double s = 0;
    for (double p : probabilities) {
        if (p > kEntropyCutoff) {
            s += std::pow(p, order);
        }
    }
    return std::log(s) / (1 - order);
}

double von_neumann_entropy(const DensityMatrix &rho) {
    return shannon_entropy(spectrum(rho));
}

double renyi_entropy(const DensityMatrix &rho, double order) {
    if (!(order > 0)) {
        throw DomainError("Renyi entropy order must be positive, got " + std::to_string(order));
    }
    return renyi_entropy_of_spectrum(spectrum(rho), order);
}

}  // namespace qbell
