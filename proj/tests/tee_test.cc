#include "qbell/tee.h"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "qbell/bell.h"
#include "qbell/error.h"
#include "qbell/models.h"

using namespace qbell;

namespace {

const double kLn2 = std::numbers::ln2;

/// Bound with site 1 as pivot and site 6 moved to the front of the non-pivot order.
double swapped_bound(const PureState &psi) {
    return bell_bound(psi, 1, {6, 2, 3, 4, 5}).gamma_bound;
}

}  // namespace

TEST(tee, lambda_from_gamma_examples) {
    auto [a, b] = lambda_from_gamma(6);
    ASSERT_NEAR(a, 0.5, 1e-15);
    ASSERT_NEAR(b, 0.5, 1e-15);
    auto [c, d] = lambda_from_gamma(2 * std::sqrt(5.0));
    ASSERT_NEAR(c, 1, 1e-7);
    ASSERT_NEAR(d, 0, 1e-7);
    ASSERT_EQ(gamma_domain_max(), 6);
    ASSERT_NEAR(gamma_domain_min(), 2 * std::sqrt(5.0), 1e-15);
    ASSERT_THROW(lambda_from_gamma(4), DomainError);
    ASSERT_THROW(lambda_from_gamma(6.5), DomainError);
}

TEST(tee, lambda_from_gamma_round_trip) {
    // The site-swapped bound equals 2 sqrt(5 + 4 C^2) only for C^2 >= 3/4, i.e. gamma >= 4 sqrt(2).
    double low = 4 * std::numbers::sqrt2;
    for (int k = 0; k <= 20; k++) {
        double gamma = low + (gamma_domain_max() - low) * k / 20;
        auto [lp2, lm2] = lambda_from_gamma(gamma);
        ASSERT_NEAR(lp2 + lm2, 1, 1e-15);
        auto psi = wen_plaquette_6_family(1, std::sqrt(lp2), std::sqrt(lm2));
        ASSERT_NEAR(swapped_bound(psi), gamma, 1e-9);
    }
}

TEST(tee, entropy_examples) {
    ASSERT_NEAR(entropy_from_gamma(6, 1), kLn2, 1e-12);
    ASSERT_NEAR(entropy_from_gamma(6, 2), 2 * kLn2, 1e-12);
    ASSERT_THROW(entropy_from_gamma(6, 3), DomainError);
    ASSERT_THROW(entropy_from_gamma(3, 1), DomainError);
}

TEST(tee, entropy_pipeline_matches_reduced_state) {
    for (double lp : {0.6, 0.65, 0.7, 0.75}) {
        double lm = std::sqrt(1 - lp * lp);
        auto psi = wen_plaquette_6_family(1, lp, lm);
        double gamma = swapped_bound(psi);
        ASSERT_NEAR(entropy_from_gamma(gamma, 1), von_neumann_entropy(reduced_density(psi, Bipartition(6, {6}))), 1e-9);
        ASSERT_NEAR(entropy_from_gamma(gamma, 2), von_neumann_entropy(reduced_density(psi, Bipartition(6, {5, 6}))),
                    1e-9);
    }
}

TEST(tee, area_law_fit_examples) {
    AreaLawPoint points[] = {{4, kLn2}, {6, 2 * kLn2}};
    auto fit = area_law_fit(points);
    ASSERT_NEAR(fit.s_tee, kLn2, 1e-12);
    ASSERT_NEAR(fit.d_quasi, 4, 1e-9);
    ASSERT_NEAR(fit.slope_alpha, kLn2 / 2, 1e-12);
    ASSERT_NEAR(fit.residual, 0, 1e-24);

    for (double c : {-1.0, 0.0, 3.5}) {
        AreaLawPoint shifted[] = {{4, c}, {6, c + kLn2}};
        ASSERT_NEAR(area_law_fit(shifted).slope_alpha, kLn2 / 2, 1e-12);
    }
}

TEST(tee, area_law_fit_least_squares) {
    AreaLawPoint line[] = {{1, 0.5}, {2, 1.5}, {5, 4.5}};
    auto fit = area_law_fit(line);
    ASSERT_NEAR(fit.slope_alpha, 1, 1e-12);
    ASSERT_NEAR(fit.s_tee, 0.5, 1e-12);
    ASSERT_NEAR(fit.residual, 0, 1e-20);

    AreaLawPoint noisy[] = {{0, 0}, {1, 1}, {2, 0}};
    auto rough = area_law_fit(noisy);
    ASSERT_NEAR(rough.slope_alpha, 0, 1e-12);
    ASSERT_NEAR(rough.s_tee, -1.0 / 3, 1e-12);
    ASSERT_NEAR(rough.residual, 2.0 / 3, 1e-12);
}

TEST(tee, area_law_fit_errors) {
    AreaLawPoint one[] = {{4, 1}};
    ASSERT_THROW(area_law_fit(one), ValidationError);
    AreaLawPoint same[] = {{4, 1}, {4, 2}};
    ASSERT_THROW(area_law_fit(same), ValidationError);
}
