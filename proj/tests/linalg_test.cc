#include "qbell/linalg.h"

#include "gtest/gtest.h"
#include "qbell/error.h"
#include "test_util.h"

using namespace qbell;

namespace {

ComplexMatrix random_matrix(std::size_t n, Rng &rng) {
    ComplexMatrix m(n, n);
    for (auto &z : m.entries()) {
        z = {rng.gaussian(), rng.gaussian()};
    }
    return m;
}

ComplexMatrix random_hermitian(std::size_t n, Rng &rng) {
    auto m = random_matrix(n, rng);
    return (m + m.adjoint()) * Complex{0.5};
}

ComplexMatrix random_psd(std::size_t n, Rng &rng) {
    auto m = random_matrix(n, rng);
    return m * m.adjoint();
}

}  // namespace

TEST(linalg, kron_of_paulis) {
    auto zx = kron(test_util::single_pauli('z'), test_util::single_pauli('x'));
    auto expected = ComplexMatrix::from_rows({
        {0, 1, 0, 0},
        {1, 0, 0, 0},
        {0, 0, 0, -1},
        {0, 0, -1, 0},
    });
    ASSERT_EQ(zx, expected);
}

TEST(linalg, kron_is_associative) {
    Rng rng(1);
    for (int t = 0; t < 10; t++) {
        auto a = random_matrix(2, rng);
        auto b = random_matrix(3, rng);
        auto c = random_matrix(2, rng);
        ASSERT_LT(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))), 1e-12);
    }
}

TEST(linalg, kron_capacity) {
    ComplexMatrix big(kMaxDenseDim, 1);
    ASSERT_THROW(kron(big, ComplexMatrix(2, 1)), CapacityError);
}

TEST(linalg, matrix_rejects_bad_shapes) {
    ASSERT_THROW(ComplexMatrix(2, 2, std::vector<Complex>(3)), ValidationError);
    ASSERT_THROW(ComplexMatrix(1, 1, {Complex{std::nan(""), 0}}), ValidationError);
}

TEST(linalg, eig_diagonal) {
    double values[] = {1, 3, 2};
    auto eig = hermitian_eig(ComplexMatrix::diagonal(values));
    ASSERT_EQ(eig.eigenvalues, (std::vector<double>{3, 2, 1}));
}

TEST(linalg, eig_pauli_y) {
    auto eig = hermitian_eig(test_util::single_pauli('y'));
    ASSERT_NEAR(eig.eigenvalues[0], 1, 1e-14);
    ASSERT_NEAR(eig.eigenvalues[1], -1, 1e-14);
    ASSERT_LT(max_abs_diff(eig.reconstruct(), test_util::single_pauli('y')), 1e-14);
}

TEST(linalg, eig_random_reconstructs_and_preserves_trace) {
    Rng rng(2);
    for (std::size_t n : {2, 4, 8, 16}) {
        auto h = random_hermitian(n, rng);
        auto eig = hermitian_eig(h);
        double sum = 0;
        for (double v : eig.eigenvalues) {
            sum += v;
        }
        ASSERT_NEAR(sum, h.trace().real(), 1e-10);
        ASSERT_LT(max_abs_diff(eig.reconstruct(), h), 1e-10);
        ASSERT_TRUE(std::is_sorted(eig.eigenvalues.rbegin(), eig.eigenvalues.rend()));
        // Orthonormal eigenvectors.
        auto gram = eig.eigenvectors.adjoint() * eig.eigenvectors;
        ASSERT_LT(max_abs_diff(gram, ComplexMatrix::identity(n)), 1e-10);
    }
}

TEST(linalg, eig_rejects_non_hermitian) {
    auto m = ComplexMatrix::from_rows({{0, 1}, {0, 0}});
    ASSERT_THROW(hermitian_eig(m), ValidationError);
    ASSERT_THROW(hermitian_eig(ComplexMatrix(2, 3)), ValidationError);
}

TEST(linalg, sqrt_psd_examples) {
    ASSERT_LT(max_abs_diff(sqrt_psd(ComplexMatrix::identity(3)), ComplexMatrix::identity(3)), 1e-14);
    double in[] = {4, 9};
    double out[] = {2, 3};
    ASSERT_LT(max_abs_diff(sqrt_psd(ComplexMatrix::diagonal(in)), ComplexMatrix::diagonal(out)), 1e-14);
}

TEST(linalg, sqrt_psd_squares_back) {
    Rng rng(3);
    for (int t = 0; t < 10; t++) {
        auto m = random_psd(4, rng);
        auto root = sqrt_psd(m);
        ASSERT_LT(max_abs_diff(root * root, m), 1e-10);
        ASSERT_LT(root.hermitian_deviation(), 1e-12);
    }
}

TEST(linalg, sqrt_psd_of_sqrt_is_fourth_root) {
    Rng rng(4);
    auto m = random_psd(4, rng);
    auto fourth = sqrt_psd(sqrt_psd(m));
    auto back = fourth * fourth * fourth * fourth;
    ASSERT_LT(max_abs_diff(back, m), 1e-8);
}

TEST(linalg, sqrt_psd_rejects_negative) {
    double values[] = {1, -1e-3};
    ASSERT_THROW(sqrt_psd(ComplexMatrix::diagonal(values)), NotPsdError);
    double noise[] = {1, -1e-12};
    ASSERT_NO_THROW(sqrt_psd(ComplexMatrix::diagonal(noise)));
}

TEST(linalg, apply_matches_product) {
    Rng rng(5);
    auto m = random_matrix(4, rng);
    std::vector<Complex> v = {1, Complex{0, 1}, -2, 0.5};
    auto got = qbell::apply(m, v);
    ComplexMatrix column(4, 1, v);
    auto want = m * column;
    for (std::size_t i = 0; i < 4; i++) {
        ASSERT_LT(std::abs(got[i] - want(i, 0)), 1e-14);
    }
}
