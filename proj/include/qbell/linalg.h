#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qbell {

using Complex = std::complex<double>;

/// Largest qubit count for which dense 2^n x 2^n operators are built.
inline constexpr std::size_t kMaxDenseQubits = 12;
inline constexpr std::size_t kMaxDenseDim = std::size_t{1} << kMaxDenseQubits;

/// Dense complex matrix, row-major.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    /// Zero matrix.
    ComplexMatrix(std::size_t rows, std::size_t cols);
    /// Takes ownership of `entries`; throws ValidationError on a size mismatch or non-finite entry.
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const double> values);
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Complex> entries() const { return data_; }
    std::span<Complex> entries() { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix conjugate() const;
    Complex trace() const;

    /// Max row sum of |M - M^dagger|.
    double hermitian_deviation() const;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(Complex scale);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);

    bool operator==(const ComplexMatrix &other) const = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// Kronecker product. Throws CapacityError when either result dimension exceeds kMaxDenseDim.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Matrix-vector product.
std::vector<Complex> apply(const ComplexMatrix &m, std::span<const Complex> v);

double frobenius_norm(const ComplexMatrix &m);
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

/// Eigenvalues sorted descending; column k of `eigenvectors` belongs to eigenvalues[k].
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;

    /// V diag(lambda) V^dagger.
    ComplexMatrix reconstruct() const;
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Throws ValidationError if the matrix is not square or deviates from Hermitian by more than
/// 1e-10 (max row sum of |M - M^dagger|). Within a degenerate cluster the eigenvector basis is
/// arbitrary.
EigenDecomposition hermitian_eig(const ComplexMatrix &m);

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in [-1e-10, 0) are treated as
/// zero; anything lower throws NotPsdError.
ComplexMatrix sqrt_psd(const ComplexMatrix &m);

}  // namespace qbell
