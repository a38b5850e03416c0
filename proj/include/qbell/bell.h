#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "qbell/linalg.h"
#include "qbell/pauli.h"
#include "qbell/states.h"

namespace qbell {

using Vec3 = std::array<double, 3>;

/// Which Bell operator to build.
///   Full:    B_k = B_{k-1} (x) (A_k + A'_k)/2 + B'_{k-1} (x) (A_k - A'_k)/2, with B'_k obtained by
///            exchanging every primed and unprimed vector.
///   Reduced: B_1 (x) A_2 ... A_{n-1} (x) (A_n + A'_n)/2 + B'_1 (x) A'_2 ... A'_{n-1} (x) (A_n - A'_n)/2.
/// In both, B_1 = 2 b.sigma and B'_1 = 2 b'.sigma.
enum class BellForm { Full, Reduced };

/// Measurement directions: b, b' on site 1 and (a[k-2], a_prime[k-2]) on site k = 2..n.
struct BellSettings {
    Vec3 b{};
    Vec3 b_prime{};
    std::vector<Vec3> a;
    std::vector<Vec3> a_prime;

    std::size_t n_sites() const { return a.size() + 1; }

    /// Throws ValidationError unless a and a_prime have equal, non-zero length and every vector has
    /// unit norm within 1e-12.
    void validate() const;
};

struct BellBoundReport {
    /// Eigenvalues of R^T R, descending.
    std::array<double, 3> gram_eigenvalues{};
    /// 2 sqrt(u1^2 + u2^2).
    double gamma_bound = 0;
    std::size_t pivot = 0;
    std::vector<std::size_t> site_order;
};

BellBoundReport bell_bound(const GeneralizedRMatrix &r);

/// pivot 0 means the last site; an empty order means ascending non-pivot sites.
BellBoundReport bell_bound(const CorrelationTensor &t, std::size_t pivot = 0, std::vector<std::size_t> site_order = {});
BellBoundReport bell_bound(const PureState &psi, std::size_t pivot = 0, std::vector<std::size_t> site_order = {});
BellBoundReport bell_bound(const DensityMatrix &rho, std::size_t pivot = 0, std::vector<std::size_t> site_order = {});

/// Dense 2^n x 2^n operator. Throws CapacityError beyond kMaxDenseQubits.
ComplexMatrix build_bell_operator(const BellSettings &s, BellForm form);

/// Real part of Tr(rho op). Throws ValidationError on a dimension mismatch or an imaginary part above
/// 1e-10.
double bell_expectation(const DensityMatrix &rho, const ComplexMatrix &op);

/// Same value as bell_expectation on the dense operator, computed by contracting the operator's
/// coefficient tensor against the correlation tensor.
double bell_expectation(const CorrelationTensor &t, const BellSettings &s, BellForm form);

struct OptimizerConfig {
    std::size_t restarts = 64;
    std::size_t max_iterations = 500;
    double tolerance = 1e-9;
    std::uint64_t seed = 0;

    /// Throws ValidationError unless restarts >= 1, max_iterations >= 1 and tolerance > 0.
    void validate() const;
};

struct OptimizerResult {
    double gamma_star = 0;
    BellSettings best;
    std::size_t restarts_used = 0;
    /// True when the winning restart stopped on the tolerance rather than the iteration cap.
    bool converged = false;
    std::size_t best_restart = 0;
};

/// Alternating ascent over the measurement directions. The objective is affine in each single
/// vector, so each step replaces one vector by its normalized gradient. Restart r draws its
/// starting directions from Rng(seed ^ r); the best value wins, ties going to the lowest restart.
OptimizerResult maximize_bell(const CorrelationTensor &t, BellForm form, const OptimizerConfig &cfg = {});
OptimizerResult maximize_bell(const PureState &psi, BellForm form, const OptimizerConfig &cfg = {});
OptimizerResult maximize_bell(const DensityMatrix &rho, BellForm form, const OptimizerConfig &cfg = {});

}  // namespace qbell
