#include "qbell/bell.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "qbell/error.h"
#include "qbell/rng.h"

namespace qbell {

namespace {

constexpr double kUnitTolerance = 1e-12;

ComplexMatrix sigma_dot(const Vec3 &v) {
    return ComplexMatrix::from_rows({
        {Complex{v[2], 0}, Complex{v[0], -v[1]}},
        {Complex{v[0], v[1]}, Complex{-v[2], 0}},
    });
}

Vec3 half_sum(const Vec3 &a, const Vec3 &b) {
    return {(a[0] + b[0]) / 2, (a[1] + b[1]) / 2, (a[2] + b[2]) / 2};
}

Vec3 half_diff(const Vec3 &a, const Vec3 &b) {
    return {(a[0] - b[0]) / 2, (a[1] - b[1]) / 2, (a[2] - b[2]) / 2};
}

Vec3 scaled(const Vec3 &v, double s) {
    return {v[0] * s, v[1] * s, v[2] * s};
}

double norm(const Vec3 &v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

/// c (x) v for a coefficient tensor c; the new site is the least significant digit.
std::vector<double> outer(const std::vector<double> &c, const Vec3 &v) {
    std::vector<double> out(c.size() * 3);
    for (std::size_t i = 0; i < c.size(); i++) {
        out[3 * i] = c[i] * v[0];
        out[3 * i + 1] = c[i] * v[1];
        out[3 * i + 2] = c[i] * v[2];
    }
    return out;
}

void add_to(std::vector<double> &acc, const std::vector<double> &x, double scale) {
    for (std::size_t i = 0; i < acc.size(); i++) {
        acc[i] += scale * x[i];
    }
}

/// Flat layout used by the optimizer: slot 0 = b, 1 = b', 2(k-1) = a_k, 2(k-1)+1 = a'_k.
std::vector<double> coefficient_tensor(const std::vector<Vec3> &v, BellForm form) {
    std::size_t n = v.size() / 2;
    std::vector<double> c{2 * v[0][0], 2 * v[0][1], 2 * v[0][2]};
    std::vector<double> cp{2 * v[1][0], 2 * v[1][1], 2 * v[1][2]};
    if (form == BellForm::Full) {
        for (std::size_t k = 2; k <= n; k++) {
            Vec3 s = half_sum(v[2 * (k - 1)], v[2 * (k - 1) + 1]);
            Vec3 d = half_diff(v[2 * (k - 1)], v[2 * (k - 1) + 1]);
            auto next = outer(c, s);
            add_to(next, outer(cp, d), 1);
            auto next_p = outer(cp, s);
            add_to(next_p, outer(c, d), -1);
            c = std::move(next);
            cp = std::move(next_p);
        }
        return c;
    }
    for (std::size_t k = 2; k < n; k++) {
        c = outer(c, v[2 * (k - 1)]);
        cp = outer(cp, v[2 * (k - 1) + 1]);
    }
    Vec3 s = half_sum(v[2 * (n - 1)], v[2 * (n - 1) + 1]);
    Vec3 d = half_diff(v[2 * (n - 1)], v[2 * (n - 1) + 1]);
    auto out = outer(c, s);
    add_to(out, outer(cp, d), 1);
    return out;
}

double contract(const CorrelationTensor &t, const std::vector<Vec3> &v, BellForm form) {
    auto c = coefficient_tensor(v, form);
    double acc = 0;
    for (std::size_t i = 0; i < c.size(); i++) {
        acc += c[i] * t.values[i];
    }
    return acc;
}

std::vector<Vec3> flatten(const BellSettings &s) {
    std::vector<Vec3> v{s.b, s.b_prime};
    for (std::size_t k = 0; k < s.a.size(); k++) {
        v.push_back(s.a[k]);
        v.push_back(s.a_prime[k]);
    }
    return v;
}

BellSettings unflatten(const std::vector<Vec3> &v) {
    BellSettings s;
    s.b = v[0];
    s.b_prime = v[1];
    for (std::size_t i = 2; i < v.size(); i += 2) {
        s.a.push_back(v[i]);
        s.a_prime.push_back(v[i + 1]);
    }
    return s;
}

struct RestartOutcome {
    double value;
    std::vector<Vec3> vectors;
    bool converged;
};

RestartOutcome ascend(const CorrelationTensor &t, BellForm form, const OptimizerConfig &cfg, std::uint64_t seed) {
    std::size_t n = t.n_sites;
    Rng rng(seed);
    std::vector<Vec3> v(2 * n);
    for (auto &x : v) {
        x = rng.unit_vector();
    }
    double value = contract(t, v, form);
    for (std::size_t iter = 0; iter < cfg.max_iterations; iter++) {
        for (auto &slot : v) {
            // Affine in this one vector: value(x) = g.x + value(0).
            slot = {0, 0, 0};
            double offset = contract(t, v, form);
            Vec3 g;
            for (int j = 0; j < 3; j++) {
                slot = {0, 0, 0};
                slot[j] = 1;
                g[j] = contract(t, v, form) - offset;
            }
            double len = norm(g);
            if (len > 0) {
                slot = scaled(g, 1 / len);
            } else {
                slot = {0, 0, 1};
            }
        }
        double next = contract(t, v, form);
        double gain = next - value;
        value = next;
        if (gain < cfg.tolerance) {
            return {value, std::move(v), true};
        }
    }
    return {value, std::move(v), false};
}

}  // namespace

void BellSettings::validate() const {
    if (a.empty() || a.size() != a_prime.size()) {
        throw ValidationError("Bell settings need one (a, a') pair for each of sites 2..n");
    }
    auto check = [](const Vec3 &v, const std::string &name) {
        if (std::abs(norm(v) - 1) > kUnitTolerance) {
            throw ValidationError("Bell setting " + name + " is not a unit vector");
        }
    };
    check(b, "b");
    check(b_prime, "b'");
    for (std::size_t k = 0; k < a.size(); k++) {
        check(a[k], "a_" + std::to_string(k + 2));
        check(a_prime[k], "a'_" + std::to_string(k + 2));
    }
}

BellBoundReport bell_bound(const GeneralizedRMatrix &r) {
    BellBoundReport out;
    out.gram_eigenvalues = symmetric_eigenvalues(r_gram(r));
    double u1 = std::max(0.0, out.gram_eigenvalues[0]);
    double u2 = std::max(0.0, out.gram_eigenvalues[1]);
    out.gamma_bound = 2 * std::sqrt(u1 + u2);
    out.pivot = r.pivot();
    out.site_order = r.site_order();
    return out;
}

BellBoundReport bell_bound(const CorrelationTensor &t, std::size_t pivot, std::vector<std::size_t> site_order) {
    if (pivot == 0) {
        pivot = t.n_sites;
    }
    return bell_bound(generalized_r_matrix(t, pivot, std::move(site_order)));
}

BellBoundReport bell_bound(const PureState &psi, std::size_t pivot, std::vector<std::size_t> site_order) {
    return bell_bound(correlation_tensor(psi), pivot, std::move(site_order));
}

BellBoundReport bell_bound(const DensityMatrix &rho, std::size_t pivot, std::vector<std::size_t> site_order) {
    return bell_bound(correlation_tensor(rho), pivot, std::move(site_order));
}

ComplexMatrix build_bell_operator(const BellSettings &s, BellForm form) {
    s.validate();
    std::size_t n = s.n_sites();
    if (n > kMaxDenseQubits) {
        throw CapacityError("dense Bell operator limited to " + std::to_string(kMaxDenseQubits) + " qubits");
    }
    ComplexMatrix b = sigma_dot(s.b) * Complex{2};
    ComplexMatrix bp = sigma_dot(s.b_prime) * Complex{2};
    if (form == BellForm::Full) {
        for (std::size_t k = 0; k < s.a.size(); k++) {
            auto sum = sigma_dot(half_sum(s.a[k], s.a_prime[k]));
            auto diff = sigma_dot(half_diff(s.a[k], s.a_prime[k]));
            auto next = kron(b, sum) + kron(bp, diff);
            auto next_p = kron(bp, sum) - kron(b, diff);
            b = std::move(next);
            bp = std::move(next_p);
        }
        return b;
    }
    for (std::size_t k = 0; k + 1 < s.a.size(); k++) {
        b = kron(b, sigma_dot(s.a[k]));
        bp = kron(bp, sigma_dot(s.a_prime[k]));
    }
    auto sum = sigma_dot(half_sum(s.a.back(), s.a_prime.back()));
    auto diff = sigma_dot(half_diff(s.a.back(), s.a_prime.back()));
    return kron(b, sum) + kron(bp, diff);
}

double bell_expectation(const DensityMatrix &rho, const ComplexMatrix &op) {
    if (op.rows() != rho.dim() || op.cols() != rho.dim()) {
        throw ValidationError("Bell operator is " + std::to_string(op.rows()) + "x" + std::to_string(op.cols()) +
                              " but the state has dimension " + std::to_string(rho.dim()));
    }
    const auto &m = rho.matrix();
    Complex acc = 0;
    for (std::size_t r = 0; r < rho.dim(); r++) {
        for (std::size_t c = 0; c < rho.dim(); c++) {
            acc += m(r, c) * op(c, r);
        }
    }
    if (std::abs(acc.imag()) > 1e-10) {
        throw ValidationError("Tr(rho B) has imaginary part " + std::to_string(acc.imag()) +
                              "; operator is not Hermitian");
    }
    return acc.real();
}

double bell_expectation(const CorrelationTensor &t, const BellSettings &s, BellForm form) {
    s.validate();
    if (s.n_sites() != t.n_sites) {
        throw ValidationError("Bell settings cover " + std::to_string(s.n_sites()) + " sites but the state has " +
                              std::to_string(t.n_sites));
    }
    return contract(t, flatten(s), form);
}

void OptimizerConfig::validate() const {
    if (restarts < 1) {
        throw ValidationError("optimizer needs at least one restart");
    }
    if (max_iterations < 1) {
        throw ValidationError("optimizer needs at least one iteration");
    }
    if (!(tolerance > 0)) {
        throw ValidationError("optimizer tolerance must be positive");
    }
}

OptimizerResult maximize_bell(const CorrelationTensor &t, BellForm form, const OptimizerConfig &cfg) {
    cfg.validate();
    if (t.n_sites < 2) {
        throw ValidationError("Bell optimization needs at least 2 sites");
    }
    OptimizerResult result;
    bool have_best = false;
    std::vector<Vec3> best_vectors;
    for (std::size_t r = 0; r < cfg.restarts; r++) {
        auto outcome = ascend(t, form, cfg, cfg.seed ^ static_cast<std::uint64_t>(r));
        if (!have_best || outcome.value > result.gamma_star + cfg.tolerance) {
            have_best = true;
            result.gamma_star = outcome.value;
            result.converged = outcome.converged;
            result.best_restart = r;
            best_vectors = std::move(outcome.vectors);
        }
    }
    result.best = unflatten(best_vectors);
    result.restarts_used = cfg.restarts;
    return result;
}

OptimizerResult maximize_bell(const PureState &psi, BellForm form, const OptimizerConfig &cfg) {
    return maximize_bell(correlation_tensor(psi), form, cfg);
}

OptimizerResult maximize_bell(const DensityMatrix &rho, BellForm form, const OptimizerConfig &cfg) {
    return maximize_bell(correlation_tensor(rho), form, cfg);
}

}  // namespace qbell
