#include "qbell/states.h"

#include <numbers>

#include "gtest/gtest.h"
#include "qbell/error.h"
#include "qbell/models.h"
#include "test_util.h"

using namespace qbell;

namespace {

const double kLn2 = std::numbers::ln2;
const double kHalf = std::numbers::sqrt2 / 2;

PureState bell_state() {
    return PureState::from_amplitudes(2, {kHalf, 0, 0, kHalf});
}

DensityMatrix half_identity() {
    double values[] = {0.5, 0.5};
    return DensityMatrix::from_matrix(1, ComplexMatrix::diagonal(values));
}

}  // namespace

TEST(states, from_amplitudes) {
    auto zero = PureState::from_amplitudes(1, {1, 0});
    ASSERT_EQ(zero.amplitude(0), Complex(1));
    ASSERT_EQ(zero.input_norm(), 1);
    ASSERT_NEAR(bell_state().input_norm(), 1, 1e-15);

    ASSERT_THROW(PureState::from_amplitudes(2, {1, 0, 0, 1}), ValidationError);
    ASSERT_THROW(PureState::from_amplitudes(2, {0, 0, 0, 0}), ValidationError);
    ASSERT_THROW(PureState::from_amplitudes(2, {1, 0, 0}), ValidationError);
}

TEST(states, from_amplitudes_rescales_small_deviation) {
    auto psi = PureState::from_amplitudes(1, {1 + 1e-8, 0});
    ASSERT_NEAR(psi.input_norm(), 1 + 1e-8, 1e-15);
    ASSERT_NEAR(std::abs(psi.amplitude(0)), 1, 1e-15);
}

TEST(states, density_from_pure) {
    auto rho = density_from_pure(PureState::from_amplitudes(1, {1, 0}));
    double values[] = {1, 0};
    ASSERT_EQ(rho.matrix(), ComplexMatrix::diagonal(values));

    Rng rng(1);
    auto p = density_from_pure(test_util::random_pure(3, rng)).matrix();
    ASSERT_LT(max_abs_diff(p * p, p), 1e-12);
    ASSERT_NEAR(purity(density_from_pure(bell_state())), 1, 1e-12);
}

TEST(states, density_validation) {
    double not_unit[] = {0.5, 0.6};
    ASSERT_THROW(DensityMatrix::from_matrix(1, ComplexMatrix::diagonal(not_unit)), ValidationError);
    double negative[] = {1.5, -0.5};
    ASSERT_ANY_THROW(DensityMatrix::from_matrix(1, ComplexMatrix::diagonal(negative)));
    auto non_hermitian = ComplexMatrix::from_rows({{0.5, 0.1}, {0, 0.5}});
    ASSERT_THROW(DensityMatrix::from_matrix(1, non_hermitian), ValidationError);
}

TEST(states, mix) {
    auto zero = PureState::from_amplitudes(1, {1, 0});
    auto one = PureState::from_amplitudes(1, {0, 1});
    std::vector<PureState> states = {zero, one};
    double halves[] = {0.5, 0.5};
    ASSERT_LT(max_abs_diff(mix(halves, states).matrix(), half_identity().matrix()), 1e-15);

    double single[] = {1};
    std::vector<PureState> just_zero = {zero};
    ASSERT_EQ(mix(single, just_zero).matrix(), density_from_pure(zero).matrix());

    double bad[] = {0.5, 0.6};
    ASSERT_THROW(mix(bad, states), ValidationError);
    std::vector<PureState> mismatched = {zero, bell_state()};
    ASSERT_THROW(mix(halves, mismatched), ValidationError);
}

TEST(states, mix_of_xy_eigenstates_matches_thermal) {
    XyParams p{1, 0.5, 0.3, 0.4};
    double t = 0.7;
    auto system = xy_eigensystem(p);
    std::vector<double> weights;
    std::vector<PureState> states;
    double z = 0;
    for (const auto &pair : system.pairs) {
        weights.push_back(std::exp(-pair.energy / t));
        z += weights.back();
        states.push_back(pair.state);
    }
    for (auto &w : weights) {
        w /= z;
    }
    ASSERT_LT(max_abs_diff(mix(weights, states).matrix(), xy_thermal(p, t).matrix()), 1e-12);
}

TEST(states, bipartition_validation) {
    ASSERT_THROW(Bipartition(3, {}), ValidationError);
    ASSERT_THROW(Bipartition(3, {1, 2, 3}), ValidationError);
    ASSERT_THROW(Bipartition(3, {1, 1}), ValidationError);
    ASSERT_THROW(Bipartition(3, {4}), ValidationError);
    ASSERT_THROW(Bipartition(3, {0}), ValidationError);
    Bipartition cut(4, {3, 1});
    ASSERT_EQ(cut.subsystem_b(), (std::vector<std::size_t>{2, 4}));
}

TEST(states, partial_trace_examples) {
    auto zz = density_from_pure(PureState::from_amplitudes(2, {1, 0, 0, 0}));
    double zero[] = {1, 0};
    ASSERT_LT(max_abs_diff(partial_trace(zz, Bipartition(2, {1})).matrix(), ComplexMatrix::diagonal(zero)), 1e-15);
    auto bell = density_from_pure(bell_state());
    ASSERT_LT(max_abs_diff(partial_trace(bell, Bipartition(2, {1})).matrix(), half_identity().matrix()), 1e-15);
}

TEST(states, partial_trace_of_wen_family) {
    double lp = 0.8;
    double lm = 0.6;
    auto psi = wen_plaquette_6_family(1, lp, lm);
    double expected[] = {lp * lp, lm * lm};
    auto last = reduced_density(psi, Bipartition(6, {6}));
    // lambda_+ multiplies the |...0> terms of the family.
    ASSERT_LT(max_abs_diff(last.matrix(), ComplexMatrix::diagonal(expected)), 1e-12);
    auto pair = reduced_density(psi, Bipartition(6, {5, 6}));
    ASSERT_NEAR(purity(pair), (std::pow(lp, 4) + std::pow(lm, 4)) / 2, 1e-12);
    ASSERT_NEAR(von_neumann_entropy(last), -lp * lp * std::log(lp * lp) - lm * lm * std::log(lm * lm), 1e-12);
}

TEST(states, partial_trace_matches_brute_force) {
    Rng rng(2);
    for (std::size_t n : {3, 4}) {
        for (int t = 0; t < 20; t++) {
            auto rho = t % 2 ? test_util::random_density(n, 3, rng) : density_from_pure(test_util::random_pure(n, rng));
            std::vector<std::size_t> keep;
            for (std::size_t site = 1; site <= n; site++) {
                if ((t + site) % 3 != 0) {
                    keep.push_back(site);
                }
            }
            if (keep.size() == n) {
                keep.pop_back();
            }
            auto got = partial_trace(rho, Bipartition(n, keep));
            ASSERT_LT(max_abs_diff(got.matrix(), test_util::brute_partial_trace(rho.matrix(), n, keep)), 1e-12);
            ASSERT_NEAR(got.matrix().trace().real(), 1, 1e-10);
        }
    }
}

TEST(states, reduced_density_matches_partial_trace) {
    Rng rng(3);
    auto psi = test_util::random_pure(4, rng);
    Bipartition cut(4, {2, 4});
    ASSERT_LT(max_abs_diff(reduced_density(psi, cut).matrix(), partial_trace(density_from_pure(psi), cut).matrix()),
              1e-12);
}

TEST(states, purity_and_entropy_examples) {
    ASSERT_NEAR(purity(half_identity()), 0.5, 1e-15);
    ASSERT_NEAR(von_neumann_entropy(half_identity()), kLn2, 1e-15);
    ASSERT_NEAR(von_neumann_entropy(density_from_pure(bell_state())), 0, 1e-12);
    ASSERT_NEAR(renyi_entropy(half_identity(), 2), kLn2, 1e-15);
    ASSERT_THROW(renyi_entropy(half_identity(), 0), DomainError);
    ASSERT_THROW(renyi_entropy(half_identity(), -1), DomainError);
}

TEST(states, renyi_of_cylinder_spectrum) {
    CylinderSpec spec{3, 1, 0};
    auto spectrum = cylinder_spectrum(spec);
    ASSERT_NEAR(renyi_entropy_of_spectrum(spectrum, 2), 3 * kLn2, 1e-12);
}

TEST(states, entropy_is_symmetric_for_pure_states) {
    Rng rng(4);
    for (int t = 0; t < 10; t++) {
        auto psi = test_util::random_pure(4, rng);
        Bipartition cut(4, {1, 3});
        double sa = von_neumann_entropy(reduced_density(psi, cut));
        double sb = von_neumann_entropy(reduced_density(psi, Bipartition(4, cut.subsystem_b())));
        ASSERT_NEAR(sa, sb, 1e-9);
    }
}

TEST(states, renyi_is_non_increasing_and_continuous_at_one) {
    Rng rng(5);
    for (int t = 0; t < 10; t++) {
        auto rho = test_util::random_density(2, 2, rng);
        double previous = INFINITY;
        for (double order : {0.5, 1.0, 2.0, 3.0}) {
            double s = renyi_entropy(rho, order);
            ASSERT_LE(s, previous + 1e-12);
            previous = s;
        }
        double vn = von_neumann_entropy(rho);
        double below = renyi_entropy(rho, 1 - 1e-6);
        double above = renyi_entropy(rho, 1 + 1e-6);
        ASSERT_NEAR(below, vn, 1e-4);
        ASSERT_NEAR(above, vn, 1e-4);
        ASSERT_GE(below + 1e-12, above);
    }
}

TEST(states, permute_sites) {
    auto psi = PureState::from_amplitudes(3, {0, 1, 0, 0, 0, 0, 0, 0});  // |001>
    std::size_t order[] = {3, 1, 2};
    auto moved = permute_sites(psi, order);
    ASSERT_EQ(moved.amplitude(4), Complex(1));  // |100>
    auto rho = permute_sites(density_from_pure(psi), order);
    ASSERT_EQ(rho.matrix()(4, 4), Complex(1));
}
