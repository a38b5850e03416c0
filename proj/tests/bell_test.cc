#include "qbell/bell.h"

#include <numbers>

#include "gtest/gtest.h"
#include "qbell/entanglement.h"
#include "qbell/error.h"
#include "qbell/models.h"
#include "test_util.h"

using namespace qbell;

namespace {

const double kSqrt2 = std::numbers::sqrt2;

BellSettings random_settings(std::size_t n, Rng &rng) {
    BellSettings s;
    s.b = rng.unit_vector();
    s.b_prime = rng.unit_vector();
    for (std::size_t k = 1; k < n; k++) {
        s.a.push_back(rng.unit_vector());
        s.a_prime.push_back(rng.unit_vector());
    }
    return s;
}

Vec3 half_sum(const Vec3 &a, const Vec3 &b, double sign) {
    return {(a[0] + sign * b[0]) / 2, (a[1] + sign * b[1]) / 2, (a[2] + sign * b[2]) / 2};
}

/// B_1 = 2 b.s, B_k = B_{k-1} (x) s_k + B'_{k-1} (x) d_k, B'_k = B'_{k-1} (x) s_k - B_{k-1} (x) d_k.
ComplexMatrix recursive_operator(const BellSettings &s) {
    auto b = test_util::sigma_dot(s.b) * Complex{2};
    auto bp = test_util::sigma_dot(s.b_prime) * Complex{2};
    for (std::size_t k = 0; k < s.a.size(); k++) {
        auto sum = test_util::sigma_dot(half_sum(s.a[k], s.a_prime[k], 1));
        auto diff = test_util::sigma_dot(half_sum(s.a[k], s.a_prime[k], -1));
        auto next = kron(b, sum) + kron(bp, diff);
        auto next_prime = kron(bp, sum) - kron(b, diff);
        b = next;
        bp = next_prime;
    }
    return b;
}

/// 2 b.s (x) a_2.s (x) ... (x) s_n + 2 b'.s (x) a'_2.s (x) ... (x) d_n.
ComplexMatrix reduced_operator(const BellSettings &s) {
    auto first = test_util::sigma_dot(s.b) * Complex{2};
    auto second = test_util::sigma_dot(s.b_prime) * Complex{2};
    std::size_t last = s.a.size() - 1;
    for (std::size_t k = 0; k < last; k++) {
        first = kron(first, test_util::sigma_dot(s.a[k]));
        second = kron(second, test_util::sigma_dot(s.a_prime[k]));
    }
    first = kron(first, test_util::sigma_dot(half_sum(s.a[last], s.a_prime[last], 1)));
    second = kron(second, test_util::sigma_dot(half_sum(s.a[last], s.a_prime[last], -1)));
    return first + second;
}

PureState singlet() {
    return PureState::from_amplitudes(2, {0, kSqrt2 / 2, -kSqrt2 / 2, 0});
}

PureState ghz3() {
    return PureState::from_amplitudes(3, {kSqrt2 / 2, 0, 0, 0, 0, 0, 0, kSqrt2 / 2});
}

}  // namespace

TEST(bell, settings_validation) {
    BellSettings s;
    ASSERT_THROW(s.validate(), ValidationError);
    s.b = {0, 0, 1};
    s.b_prime = {1, 0, 0};
    s.a = {{0, 0, 1}};
    s.a_prime = {{0, 0, 1}};
    ASSERT_NO_THROW(s.validate());
    s.a_prime = {{0, 0, 2}};
    ASSERT_THROW(s.validate(), ValidationError);
    s.a_prime = {};
    ASSERT_THROW(s.validate(), ValidationError);
}

TEST(bell, operators_match_explicit_constructions) {
    Rng rng(1);
    for (std::size_t n = 2; n <= 4; n++) {
        for (int t = 0; t < 3; t++) {
            auto s = random_settings(n, rng);
            auto full = build_bell_operator(s, BellForm::Full);
            auto reduced = build_bell_operator(s, BellForm::Reduced);
            ASSERT_LT(max_abs_diff(full, recursive_operator(s)), 1e-12);
            ASSERT_LT(max_abs_diff(reduced, reduced_operator(s)), 1e-12);
            ASSERT_LT(full.hermitian_deviation(), 1e-12);
            ASSERT_LT(reduced.hermitian_deviation(), 1e-12);
        }
    }
}

TEST(bell, forms_agree_on_two_qubits) {
    Rng rng(2);
    auto s = random_settings(2, rng);
    ASSERT_LT(max_abs_diff(build_bell_operator(s, BellForm::Full), build_bell_operator(s, BellForm::Reduced)), 1e-14);
}

TEST(bell, chsh_settings_on_singlet) {
    BellSettings s;
    double r = kSqrt2 / 2;
    s.b = {r, 0, r};
    s.b_prime = {-r, 0, r};
    s.a = {{0, 0, 1}};
    s.a_prime = {{1, 0, 0}};
    double value = bell_expectation(density_from_pure(singlet()), build_bell_operator(s, BellForm::Full));
    // The singlet anticorrelates every axis, so these settings give the negative extreme.
    ASSERT_NEAR(value, -2 * kSqrt2, 1e-12);
}

TEST(bell, equal_primed_settings_collapse_to_product) {
    Rng rng(3);
    auto s = random_settings(3, rng);
    s.b_prime = s.b;
    s.a_prime = s.a;
    auto op = build_bell_operator(s, BellForm::Reduced);
    auto product = kron(kron(test_util::sigma_dot(s.b), test_util::sigma_dot(s.a[0])), test_util::sigma_dot(s.a[1]));
    ASSERT_LT(max_abs_diff(op, product * Complex{2}), 1e-12);

    // On a product state the value factorizes into per-site Bloch projections.
    auto zero = PureState::from_amplitudes(3, {1, 0, 0, 0, 0, 0, 0, 0});
    double value = bell_expectation(density_from_pure(zero), op);
    ASSERT_NEAR(value, 2 * s.b[2] * s.a[0][2] * s.a[1][2], 1e-12);
}

TEST(bell, tensor_contraction_matches_dense_expectation) {
    Rng rng(4);
    for (std::size_t n = 2; n <= 5; n++) {
        auto rho = test_util::random_density(n, 2, rng);
        auto t = correlation_tensor(rho);
        for (auto form : {BellForm::Full, BellForm::Reduced}) {
            auto s = random_settings(n, rng);
            ASSERT_NEAR(bell_expectation(t, s, form), bell_expectation(rho, build_bell_operator(s, form)), 1e-12);
        }
    }
}

TEST(bell, expectation_validation) {
    auto rho = density_from_pure(singlet());
    ASSERT_THROW(bell_expectation(rho, ComplexMatrix::identity(8)), ValidationError);
    ComplexMatrix skew(4, 4);
    skew(0, 1) = Complex{0, 1};
    skew(1, 0) = Complex{0, 1};
    auto plus = PureState::from_amplitudes(2, {0.5, 0.5, 0.5, 0.5});
    ASSERT_THROW(bell_expectation(density_from_pure(plus), skew), ValidationError);
}

TEST(bell, tsirelson_bound_for_recursive_operator) {
    Rng rng(5);
    for (std::size_t n = 2; n <= 4; n++) {
        double limit = std::pow(2.0, (static_cast<double>(n) + 1) / 2);
        for (int t = 0; t < 25; t++) {
            auto rho = density_from_pure(test_util::random_pure(n, rng));
            double value = bell_expectation(rho, build_bell_operator(random_settings(n, rng), BellForm::Full));
            ASSERT_LE(std::abs(value), limit * (1 + 1e-9));
        }
    }
}

TEST(bell, bound_examples) {
    ASSERT_NEAR(bell_bound(wen_plaquette_states(4, 0)).gamma_bound, 4 * kSqrt2, 1e-10);
    for (std::size_t n = 2; n <= 5; n++) {
        std::vector<Complex> amps(std::size_t{1} << n, 0);
        amps[0] = 1;
        auto report = bell_bound(PureState::from_amplitudes(n, amps));
        ASSERT_NEAR(report.gamma_bound, 2, 1e-12);
        ASSERT_NEAR(report.gram_eigenvalues[0], 1, 1e-12);
        ASSERT_NEAR(report.gram_eigenvalues[1], 0, 1e-12);
    }
    double lp = 0.6;
    double lm = 0.8;
    auto swapped = bell_bound(wen_plaquette_6_family(1, lp, lm), 1, {6, 2, 3, 4, 5});
    double c2 = 16 * lp * lp * lm * lm;
    ASSERT_NEAR(swapped.gram_eigenvalues[0], std::max(4.0, 1 + c2), 1e-10);
    ASSERT_NEAR(swapped.gram_eigenvalues[2], std::min(4.0, 1 + c2), 1e-10);
    ASSERT_EQ(swapped.pivot, 1u);
    ASSERT_EQ(swapped.site_order, (std::vector<std::size_t>{6, 2, 3, 4, 5}));
}

TEST(bell, bound_invariant_under_non_pivot_permutation) {
    Rng rng(6);
    auto psi = test_util::random_pure(4, rng);
    double a = bell_bound(psi, 4, {1, 2, 3}).gamma_bound;
    double b = bell_bound(psi, 4, {3, 1, 2}).gamma_bound;
    ASSERT_NEAR(a, b, 1e-12);
}

TEST(bell, optimizer_examples) {
    OptimizerConfig cfg;
    cfg.tolerance = 1e-13;
    ASSERT_NEAR(maximize_bell(singlet(), BellForm::Reduced, cfg).gamma_star, 2 * kSqrt2, 1e-8);
    ASSERT_NEAR(bell_bound(singlet()).gamma_bound, 2 * kSqrt2, 1e-12);
    auto zero = PureState::from_amplitudes(2, {1, 0, 0, 0});
    ASSERT_NEAR(maximize_bell(zero, BellForm::Reduced, cfg).gamma_star, 2, 1e-8);
    ASSERT_NEAR(maximize_bell(ghz3(), BellForm::Full, cfg).gamma_star, 4, 1e-8);
}

TEST(bell, optimizer_settings_reproduce_gamma_star) {
    Rng rng(7);
    auto rho = test_util::random_density(3, 2, rng);
    auto result = maximize_bell(rho, BellForm::Full);
    ASSERT_NO_THROW(result.best.validate());
    ASSERT_NEAR(bell_expectation(rho, build_bell_operator(result.best, BellForm::Full)), result.gamma_star, 1e-12);
    ASSERT_EQ(result.restarts_used, 64u);
    ASSERT_LT(result.best_restart, 64u);
}

TEST(bell, optimizer_is_deterministic) {
    Rng rng(8);
    auto psi = test_util::random_pure(3, rng);
    OptimizerConfig cfg;
    cfg.seed = 42;
    cfg.restarts = 8;
    auto a = maximize_bell(psi, BellForm::Reduced, cfg);
    auto b = maximize_bell(psi, BellForm::Reduced, cfg);
    ASSERT_EQ(a.gamma_star, b.gamma_star);
    ASSERT_EQ(a.best_restart, b.best_restart);
    ASSERT_EQ(a.best.b, b.best.b);
}

TEST(bell, optimizer_validation) {
    OptimizerConfig cfg;
    cfg.restarts = 0;
    ASSERT_THROW(maximize_bell(singlet(), BellForm::Full, cfg), ValidationError);
    cfg = {};
    cfg.tolerance = 0;
    ASSERT_THROW(maximize_bell(singlet(), BellForm::Full, cfg), ValidationError);
}

TEST(bell, lemma_equality_on_two_qubits) {
    Rng rng(9);
    OptimizerConfig cfg;
    cfg.tolerance = 1e-12;
    for (int t = 0; t < 40; t++) {
        auto psi = test_util::random_pure(2, rng);
        ASSERT_NEAR(maximize_bell(psi, BellForm::Reduced, cfg).gamma_star, bell_bound(psi).gamma_bound, 1e-6);
    }
}

TEST(bell, lemma_upper_bound_on_more_qubits) {
    Rng rng(10);
    for (int t = 0; t < 15; t++) {
        std::size_t n = 3 + static_cast<std::size_t>(t % 3);
        auto psi = test_util::random_pure(n, rng);
        ASSERT_LE(maximize_bell(psi, BellForm::Reduced).gamma_star, bell_bound(psi).gamma_bound + 1e-6);
    }
}

TEST(bell, theorem_family_on_linear_branch) {
    // Away from the weakly entangled corner (alpha >= 3, lambda_+ <= 0.3) the recursive operator
    // reaches 2 f_alpha; that corner is covered by the acceptance run.
    for (std::size_t alpha = 2; alpha <= 5; alpha++) {
        for (double lp : {0.5, 0.6, std::numbers::sqrt2 / 2}) {
            TheoremFamilySpec spec{alpha, alpha, "", std::string(alpha - 1, '0'), lp, std::sqrt(1 - lp * lp)};
            auto psi = theorem_state(spec);
            double c = concurrence_pure(psi, Bipartition(alpha, {alpha}));
            ASSERT_NEAR(maximize_bell(psi, BellForm::Full).gamma_star, 2 * f_alpha(alpha, c), 1e-4)
                << "alpha " << alpha << " lambda " << lp;
        }
    }
}
