#include "qbell/models.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qbell/entanglement.h"
#include "qbell/error.h"

namespace qbell {

namespace {

constexpr double kLn2 = std::numbers::ln2;

std::size_t basis_index(const std::string &bits) {
    return std::stoul(bits, nullptr, 2);
}

PureState from_terms(std::size_t n, const std::vector<std::pair<const char *, double>> &terms) {
    std::vector<Complex> amps(std::size_t{1} << n);
    for (const auto &[bits, coefficient] : terms) {
        amps[basis_index(bits)] += coefficient;
    }
    return PureState::from_amplitudes(n, std::move(amps));
}

void require_unit_pair(double lp, double lm, double tolerance) {
    if (std::abs(lp * lp + lm * lm - 1) > tolerance) {
        throw ValidationError("lambda_+^2 + lambda_-^2 must equal 1");
    }
}

double thermal_margin(const XyParams &p, double T) {
    return wootters_concurrence(xy_thermal(p, T)).margin;
}

}  // namespace

void XyParams::validate() const {
    if (!(J >= 0) || !(B >= 0)) {
        throw ValidationError("XY model needs J >= 0 and B >= 0");
    }
    if (!(gamma_tilde >= 0 && gamma_tilde <= 1) || !(delta >= 0 && delta <= 1)) {
        throw ValidationError("XY model needs gamma_tilde and delta in [0, 1]");
    }
}

ComplexMatrix xy_hamiltonian(const XyParams &p) {
    p.validate();
    double b = p.B;
    double bd = p.B * p.delta;
    return ComplexMatrix::from_rows({
        {-2 * b, 0, 0, -p.J * p.gamma_tilde},
        {0, 2 * bd, -p.J, 0},
        {0, -p.J, -2 * bd, 0},
        {-p.J * p.gamma_tilde, 0, 0, 2 * b},
    });
}

double xy_lambda1(const XyParams &p) {
    return std::sqrt(4 * p.B * p.B + p.J * p.J * p.gamma_tilde * p.gamma_tilde);
}

double xy_lambda2(const XyParams &p) {
    return std::sqrt(p.J * p.J + 4 * p.B * p.B * p.delta * p.delta);
}

XyEigensystem xy_eigensystem(const XyParams &p) {
    p.validate();
    XyEigensystem out;
    auto make = [](std::size_t i, double x, std::size_t j, double y) {
        std::vector<Complex> amps(4);
        amps[i] = x;
        amps[j] = y;
        return PureState::from_amplitudes(2, std::move(amps));
    };

    double l1 = xy_lambda1(p);
    if (l1 > 0) {
        double two_b = 2 * p.B;
        double lo = std::sqrt((l1 - two_b) / (2 * l1));
        double hi = std::sqrt((l1 + two_b) / (2 * l1));
        out.pairs.push_back({"1+", make(0, -lo, 3, hi), l1});
        out.pairs.push_back({"1-", make(0, hi, 3, lo), -l1});
    } else {
        out.degenerate = true;
        out.pairs.push_back({"1+", make(0, 1, 3, 0), 0});
        out.pairs.push_back({"1-", make(0, 0, 3, 1), 0});
    }

    double l2 = xy_lambda2(p);
    if (l2 > 0) {
        double two_bd = 2 * p.B * p.delta;
        double lo = std::sqrt((l2 - two_bd) / (2 * l2));
        double hi = std::sqrt((l2 + two_bd) / (2 * l2));
        out.pairs.push_back({"2+", make(1, -hi, 2, lo), l2});
        out.pairs.push_back({"2-", make(1, lo, 2, hi), -l2});
    } else {
        out.degenerate = true;
        out.pairs.push_back({"2+", make(1, 1, 2, 0), 0});
        out.pairs.push_back({"2-", make(1, 0, 2, 1), 0});
    }
    return out;
}

XyEigenpair xy_eigenstate(const XyParams &p, const std::string &label) {
    for (auto &pair : xy_eigensystem(p).pairs) {
        if (pair.label == label) {
            return pair;
        }
    }
    throw ValidationError("unknown XY eigenstate '" + label + "'; expected 1+, 1-, 2+ or 2-");
}

DensityMatrix xy_thermal(const XyParams &p, double T) {
    if (!(T > 0)) {
        throw DomainError("temperature must be positive");
    }
    auto eig = hermitian_eig(xy_hamiltonian(p));
    double e0 = eig.eigenvalues.back();
    std::vector<double> weights(4);
    double z = 0;
    for (std::size_t k = 0; k < 4; k++) {
        weights[k] = std::exp(-(eig.eigenvalues[k] - e0) / T);
        z += weights[k];
    }
    ComplexMatrix rho(4, 4);
    for (std::size_t k = 0; k < 4; k++) {
        double w = weights[k] / z;
        for (std::size_t r = 0; r < 4; r++) {
            for (std::size_t c = 0; c < 4; c++) {
                rho(r, c) += w * eig.eigenvectors(r, k) * std::conj(eig.eigenvectors(c, k));
            }
        }
    }
    return unchecked_density(2, std::move(rho));
}

std::optional<double> xy_critical_temperature(const XyParams &p) {
    p.validate();
    constexpr std::size_t kGridPoints = 400;
    constexpr double kPositiveGuard = 1e-12;
    double s = std::max({p.J, p.B, 1e-12});
    double log_lo = std::log(1e-6 * s);
    double log_hi = std::log(100 * s);

    std::vector<double> grid(kGridPoints);
    std::vector<double> margin(kGridPoints);
    for (std::size_t i = 0; i < kGridPoints; i++) {
        grid[i] = std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(i) / (kGridPoints - 1));
        margin[i] = thermal_margin(p, grid[i]);
    }
    std::optional<std::size_t> bracket;
    for (std::size_t i = 0; i + 1 < kGridPoints; i++) {
        if (margin[i] > kPositiveGuard && margin[i + 1] <= kPositiveGuard) {
            bracket = i;
        }
    }
    if (!bracket) {
        return std::nullopt;
    }
    double lo = grid[*bracket];
    double hi = grid[*bracket + 1];
    while (hi - lo > 1e-10 * hi) {
        double mid = 0.5 * (lo + hi);
        if (thermal_margin(p, mid) > 0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

PureState wen_plaquette_states(std::size_t sites, std::size_t index) {
    const double r2 = 1 / std::sqrt(2.0);
    if (sites == 4) {
        switch (index) {
            case 0:
                return from_terms(4, {{"0000", r2}, {"1111", r2}});
            case 1:
                return from_terms(4, {{"1010", r2}, {"0101", r2}});
            case 2:
                return from_terms(4, {{"0011", r2}, {"1100", -r2}});
            case 3:
                return from_terms(4, {{"1001", r2}, {"0110", -r2}});
            default:
                throw ValidationError("4-site Wen-Plaquette ground state index must be 0..3");
        }
    }
    if (sites == 6) {
        if (index != 1 && index != 2) {
            throw ValidationError("6-site Wen-Plaquette ground state index must be 1 or 2");
        }
        return wen_plaquette_6_family(index, r2, r2);
    }
    throw ValidationError("Wen-Plaquette states exist for 4 or 6 sites");
}

PureState wen_plaquette_6_family(std::size_t which, double lp, double lm) {
    require_unit_pair(lp, lm, 1e-10);
    const double a = lp / std::sqrt(2.0);
    const double b = lm / std::sqrt(2.0);
    if (which == 1) {
        return from_terms(6, {{"111000", -a}, {"001110", a}, {"100011", b}, {"010101", b}});
    }
    if (which == 2) {
        return from_terms(6, {{"000111", -a}, {"110001", a}, {"011100", b}, {"101010", b}});
    }
    throw ValidationError("6-site Wen-Plaquette family index must be 1 or 2");
}

std::vector<Complex> apply_terms(const std::vector<PauliString> &terms, std::span<const Complex> psi) {
    std::vector<Complex> out(psi.size());
    for (const auto &term : terms) {
        add_pauli_action(term, psi, out);
    }
    return out;
}

WenHamiltonian wen_plaquette_hamiltonian(std::size_t rows, std::size_t cols) {
    if (rows != 2 || (cols != 2 && cols != 3)) {
        throw ValidationError("Wen-Plaquette Hamiltonian supports 2x2 and 2x3 tori");
    }
    const std::size_t n = rows * cols;
    std::vector<PureState> listed;
    if (n == 4) {
        for (std::size_t i = 0; i < 4; i++) {
            listed.push_back(wen_plaquette_states(4, i));
        }
    } else {
        listed.push_back(wen_plaquette_states(6, 1));
        listed.push_back(wen_plaquette_states(6, 2));
    }

    auto terms_for = [&](const std::vector<std::size_t> &labeling) {
        auto site = [&](std::size_t r, std::size_t c) { return labeling[(r % rows) * cols + (c % cols)]; };
        std::vector<PauliString> terms;
        for (std::size_t r = 0; r < rows; r++) {
            for (std::size_t c = 0; c < cols; c++) {
                std::vector<Pauli> symbols(n, Pauli::I);
                symbols[site(r, c) - 1] = Pauli::X;
                symbols[site(r, c + 1) - 1] = Pauli::Y;
                symbols[site(r + 1, c + 1) - 1] = Pauli::X;
                symbols[site(r + 1, c) - 1] = Pauli::Y;
                terms.emplace_back(std::move(symbols));
            }
        }
        return terms;
    };
    auto dense = [&](const std::vector<PauliString> &terms) {
        std::size_t dim = std::size_t{1} << n;
        ComplexMatrix h(dim, dim);
        std::vector<Complex> e(dim);
        for (std::size_t col = 0; col < dim; col++) {
            std::fill(e.begin(), e.end(), Complex{0});
            e[col] = 1;
            auto image = apply_terms(terms, e);
            for (std::size_t row = 0; row < dim; row++) {
                h(row, col) = image[row];
            }
        }
        return h;
    };

    std::vector<std::size_t> labeling(n);
    for (std::size_t i = 0; i < n; i++) {
        labeling[i] = i + 1;
    }
    // Every labeling gives a unitarily equivalent Hamiltonian, so the ground energy is fixed.
    auto row_major_terms = terms_for(labeling);
    auto row_major_matrix = dense(row_major_terms);
    double e0 = hermitian_eig(row_major_matrix).eigenvalues.back();

    auto hosts_ground_states = [&](const std::vector<PauliString> &terms) {
        for (const auto &psi : listed) {
            auto image = apply_terms(terms, psi.amplitudes());
            double residual = 0;
            for (std::size_t j = 0; j < image.size(); j++) {
                residual += std::norm(image[j] - e0 * psi.amplitude(j));
            }
            if (std::sqrt(residual) > 1e-9) {
                return false;
            }
        }
        return true;
    };

    WenHamiltonian out;
    out.rows = rows;
    out.cols = cols;
    out.ground_energy = e0;
    if (hosts_ground_states(row_major_terms)) {
        out.labeling = labeling;
        out.terms = std::move(row_major_terms);
        out.matrix = std::move(row_major_matrix);
        return out;
    }
    out.row_major = false;
    while (std::next_permutation(labeling.begin(), labeling.end())) {
        auto terms = terms_for(labeling);
        if (hosts_ground_states(terms)) {
            out.labeling = labeling;
            out.matrix = dense(terms);
            out.terms = std::move(terms);
            return out;
        }
    }
    throw Error("no site labeling places the listed ground states in the lowest eigenspace");
}

PureState ghz2n_state(std::size_t n, double lp, double lm) {
    if (n < 2) {
        throw ValidationError("2n-qubit family needs n >= 2");
    }
    if (n > kMaxGhz2nHalf) {
        throw CapacityError("2n-qubit family limited to n <= " + std::to_string(kMaxGhz2nHalf));
    }
    require_unit_pair(lp, lm, 1e-10);
    double scale = 1 / std::sqrt(std::ldexp(1.0, static_cast<int>(n) - 1));
    std::vector<Complex> amps(std::size_t{1} << (2 * n));
    for (std::size_t a = 0; a < (std::size_t{1} << n); a++) {
        amps[(a << n) | a] = ((a & 1) ? lm : lp) * scale;
    }
    return PureState::from_amplitudes(2 * n, std::move(amps));
}

double ghz2n_entropy(std::size_t n, double lp, double lm) {
    double probabilities[2] = {lp * lp, lm * lm};
    return static_cast<double>(n - 1) * kLn2 + shannon_entropy(probabilities);
}

std::size_t CylinderSpec::n_q() const {
    return std::size_t{1} << (n_L - 1);
}

void CylinderSpec::validate() const {
    if (n_L < 1) {
        throw ValidationError("cylinder needs n_L >= 1");
    }
    if (std::abs(std::norm(alpha00) + std::norm(alpha01) - 1) > 1e-12) {
        throw ValidationError("cylinder coefficients must satisfy |a00|^2 + |a01|^2 = 1");
    }
}

std::pair<double, double> CylinderSpec::p() const {
    return {std::norm(alpha00 + alpha01) / 2, std::norm(alpha00 - alpha01) / 2};
}

std::vector<double> cylinder_spectrum(const CylinderSpec &spec) {
    spec.validate();
    if (spec.n_L > kMaxCylinderSpectrum) {
        throw CapacityError("cylinder spectrum limited to n_L <= " + std::to_string(kMaxCylinderSpectrum));
    }
    auto [p1, p2] = spec.p();
    double nq = static_cast<double>(spec.n_q());
    std::vector<double> out(2 * spec.n_q(), p2 / nq);
    std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(spec.n_q()), p1 / nq);
    return out;
}

double cylinder_renyi(const CylinderSpec &spec, double order) {
    spec.validate();
    auto [p1, p2] = spec.p();
    double probabilities[2] = {p1, p2};
    return static_cast<double>(spec.n_L) * kLn2 - (kLn2 - renyi_entropy_of_spectrum(probabilities, order));
}

std::pair<double, double> cylinder_p_from_purity(std::size_t n_L, double purity) {
    if (n_L < 1) {
        throw ValidationError("cylinder needs n_L >= 1");
    }
    double disc = 1 - 2 * (1 - std::ldexp(purity, static_cast<int>(n_L) - 1));
    if (disc < -1e-12) {
        throw DomainError("purity " + std::to_string(purity) + " is below the cylinder minimum 2^-n_L");
    }
    double root = std::sqrt(std::max(0.0, disc));
    return {(1 + root) / 2, (1 - root) / 2};
}

double disk_entropy(std::size_t n_L) {
    return static_cast<double>(n_L) * kLn2;
}

}  // namespace qbell
