#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbell/linalg.h"
#include "qbell/pauli.h"
#include "qbell/states.h"

namespace qbell {

// ---------------------------------------------------------------------------------------------
// Two-qubit XY model in a non-uniform field.

struct XyParams {
    double J = 1;
    double gamma_tilde = 0;
    double B = 0;
    double delta = 0;

    /// Throws ValidationError unless J >= 0, B >= 0 and gamma_tilde, delta lie in [0, 1].
    void validate() const;
};

/// diag(-2B, 2B delta, -2B delta, 2B) with -J gamma_tilde coupling |00> and |11> and -J coupling
/// |01> and |10>. Equivalently -(J/2)(1+g) XX - (J/2)(1-g) YY - B(1-d) Z(x)I - B(1+d) I(x)Z, i.e.
/// the (1 + delta) field term sits on site 2.
ComplexMatrix xy_hamiltonian(const XyParams &p);

/// sqrt(4B^2 + J^2 gamma_tilde^2) and sqrt(J^2 + 4B^2 delta^2).
double xy_lambda1(const XyParams &p);
double xy_lambda2(const XyParams &p);

struct XyEigenpair {
    /// "1+", "1-", "2+" or "2-".
    std::string label;
    PureState state;
    double energy;
};

struct XyEigensystem {
    std::vector<XyEigenpair> pairs;
    /// Set when lambda1 or lambda2 vanishes. The affected block is returned in the computational
    /// basis (|00>, |11> or |01>, |10>) rather than the closed form.
    bool degenerate = false;
};

/// Closed-form eigenvectors, ordered 1+, 1-, 2+, 2-.
XyEigensystem xy_eigensystem(const XyParams &p);

/// Looks up one eigenvector by label. Throws ValidationError for an unknown label.
XyEigenpair xy_eigenstate(const XyParams &p, const std::string &label);

/// exp(-H/T) / Z. Throws DomainError for T <= 0.
DensityMatrix xy_thermal(const XyParams &p, double T);

/// Temperature where the Wootters concurrence of the thermal state drops to zero. Scans a log grid
/// over [1e-6 s, 100 s] with s = max(J, B, 1e-12), then bisects the highest sign change of the
/// Wootters margin to relative width 1e-10. Empty when the concurrence is zero on the whole grid.
std::optional<double> xy_critical_temperature(const XyParams &p);

// ---------------------------------------------------------------------------------------------
// Wen-Plaquette model.

/// sites = 4: index 0..3 selects one of the four degenerate torus ground states.
/// sites = 6: index 1 or 2 selects G1 or G2.
PureState wen_plaquette_states(std::size_t sites, std::size_t index);

/// The (lambda_+, lambda_-) family through G1 (which = 1) or G2 (which = 2). Throws
/// ValidationError unless lp^2 + lm^2 = 1 within 1e-10.
PureState wen_plaquette_6_family(std::size_t which, double lp, double lm);

struct WenHamiltonian {
    std::size_t rows = 0;
    std::size_t cols = 0;
    /// labeling[r * cols + c] is the 1-based site at lattice cell (r, c).
    std::vector<std::size_t> labeling;
    /// One X Y X Y string per plaquette.
    std::vector<PauliString> terms;
    ComplexMatrix matrix;
    double ground_energy = 0;
    /// True when the row-major layout already hosts the listed ground states.
    bool row_major = true;
};

/// Plaquette terms s_x(r,c) s_y(r,c+1) s_x(r+1,c+1) s_y(r+1,c) on a periodic rows x cols torus.
/// The site labeling is row-major when that places every listed ground state in the lowest
/// eigenspace; otherwise the first lexicographic labeling that does is used. Supports 2x2 and
/// 2x3; throws ValidationError for any other geometry.
WenHamiltonian wen_plaquette_hamiltonian(std::size_t rows, std::size_t cols);

/// H_WP applied to a state without forming the matrix.
std::vector<Complex> apply_terms(const std::vector<PauliString> &terms, std::span<const Complex> psi);

// ---------------------------------------------------------------------------------------------
// 2n-qubit family: sum over a in {0,1}^n of c_a |a>_A |a>_B with region A = sites 1..n and
// region B = sites n+1..2n. c_a = lp / sqrt(2^(n-1)) when the last bit of a is 0 and
// lm / sqrt(2^(n-1)) otherwise.

inline constexpr std::size_t kMaxGhz2nHalf = 5;

/// Throws ValidationError for n < 2 or lp^2 + lm^2 off 1 by more than 1e-10, CapacityError for
/// n > 5.
PureState ghz2n_state(std::size_t n, double lp, double lm);

/// (n - 1) ln 2 - lp^2 ln lp^2 - lm^2 ln lm^2.
double ghz2n_entropy(std::size_t n, double lp, double lm);

// ---------------------------------------------------------------------------------------------
// Toric code on a cylinder and on a disk with holes, through their reduced spectra.

struct CylinderSpec {
    std::size_t n_L = 1;
    std::complex<double> alpha00 = 1;
    std::complex<double> alpha01 = 0;

    /// 2^(n_L - 1).
    std::size_t n_q() const;

    /// Throws ValidationError unless n_L >= 1 and |alpha00|^2 + |alpha01|^2 = 1 within 1e-12.
    void validate() const;

    /// (|a00 + a01|^2 / 2, |a00 - a01|^2 / 2).
    std::pair<double, double> p() const;
};

/// Largest n_L for which cylinder_spectrum materializes its 2^n_L eigenvalues.
inline constexpr std::size_t kMaxCylinderSpectrum = 24;

/// p1 / N_q and p2 / N_q, each N_q times, p1 block first.
std::vector<double> cylinder_spectrum(const CylinderSpec &spec);

/// n_L ln 2 - (ln 2 - ln(p1^a + p2^a) / (1 - a)); order 1 uses the Shannon limit. Throws
/// DomainError for order <= 0.
double cylinder_renyi(const CylinderSpec &spec, double order);

/// Inverts purity = (p1^2 + p2^2) / 2^(n_L - 1) for (p1, p2) with p1 >= p2. Throws DomainError
/// when the discriminant is below -1e-12.
std::pair<double, double> cylinder_p_from_purity(std::size_t n_L, double purity);

/// n_L ln 2, the same for every Renyi order.
double disk_entropy(std::size_t n_L);

}  // namespace qbell
