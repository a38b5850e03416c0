#include "qbell/linalg.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qbell/error.h"

namespace qbell {

namespace {

constexpr double kHermitianTolerance = 1e-10;
constexpr double kPsdTolerance = 1e-10;
constexpr double kJacobiRelativeTolerance = 1e-13;
constexpr int kJacobiMaxSweeps = 100;

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ValidationError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                              std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                              std::to_string(b.cols()));
    }
}

double off_diagonal_norm(const ComplexMatrix &a) {
    double s = 0;
    for (std::size_t r = 0; r < a.rows(); r++) {
        for (std::size_t c = 0; c < a.cols(); c++) {
            if (r != c) {
                s += std::norm(a(r, c));
            }
        }
    }
    return std::sqrt(s);
}

double diagonal_norm(const ComplexMatrix &a) {
    double s = 0;
    for (std::size_t k = 0; k < a.rows(); k++) {
        s += std::norm(a(k, k));
    }
    return std::sqrt(s);
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) {
        throw ValidationError("ComplexMatrix: expected " + std::to_string(rows * cols) + " entries, got " +
                              std::to_string(data_.size()));
    }
    for (const auto &z : data_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw ValidationError("ComplexMatrix: non-finite entry");
        }
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t k = 0; k < n; k++) {
        m(k, k) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t k = 0; k < values.size(); k++) {
        m(k, k) = values[k];
    }
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    std::size_t n_rows = rows.size();
    std::size_t n_cols = n_rows == 0 ? 0 : rows.begin()->size();
    std::vector<Complex> data;
    data.reserve(n_rows * n_cols);
    for (const auto &row : rows) {
        if (row.size() != n_cols) {
            throw ValidationError("ComplexMatrix::from_rows: ragged rows");
        }
        data.insert(data.end(), row.begin(), row.end());
    }
    return ComplexMatrix(n_rows, n_cols, std::move(data));
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; r++) {
        for (std::size_t c = 0; c < cols_; c++) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix out = *this;
    for (auto &z : out.data_) {
        z = std::conj(z);
    }
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0;
    for (std::size_t k = 0; k < std::min(rows_, cols_); k++) {
        t += (*this)(k, k);
    }
    return t;
}

double ComplexMatrix::hermitian_deviation() const {
    if (!is_square()) {
        return INFINITY;
    }
    double worst = 0;
    for (std::size_t r = 0; r < rows_; r++) {
        double row_sum = 0;
        for (std::size_t c = 0; c < cols_; c++) {
            row_sum += std::abs((*this)(r, c) - std::conj((*this)(c, r)));
        }
        worst = std::max(worst, row_sum);
    }
    return worst;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    require_same_shape(*this, other, "operator+");
    for (std::size_t k = 0; k < data_.size(); k++) {
        data_[k] += other.data_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    require_same_shape(*this, other, "operator-");
    for (std::size_t k = 0; k < data_.size(); k++) {
        data_[k] -= other.data_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex scale) {
    for (auto &z : data_) {
        z *= scale;
    }
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw ValidationError("matrix product: inner dimensions differ (" + std::to_string(a.cols()) + " vs " +
                              std::to_string(b.rows()) + ")");
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); r++) {
        for (std::size_t k = 0; k < a.cols(); k++) {
            Complex ark = a(r, k);
            if (ark == Complex{0, 0}) {
                continue;
            }
            for (std::size_t c = 0; c < b.cols(); c++) {
                out(r, c) += ark * b(k, c);
            }
        }
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    std::size_t rows = a.rows() * b.rows();
    std::size_t cols = a.cols() * b.cols();
    if (rows > kMaxDenseDim || cols > kMaxDenseDim) {
        throw CapacityError("kron: result " + std::to_string(rows) + "x" + std::to_string(cols) +
                            " exceeds the dense limit of 2^" + std::to_string(kMaxDenseQubits));
    }
    ComplexMatrix out(rows, cols);
    for (std::size_t ar = 0; ar < a.rows(); ar++) {
        for (std::size_t ac = 0; ac < a.cols(); ac++) {
            Complex s = a(ar, ac);
            if (s == Complex{0, 0}) {
                continue;
            }
            for (std::size_t br = 0; br < b.rows(); br++) {
                for (std::size_t bc = 0; bc < b.cols(); bc++) {
                    out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
                }
            }
        }
    }
    return out;
}

std::vector<Complex> apply(const ComplexMatrix &m, std::span<const Complex> v) {
    if (m.cols() != v.size()) {
        throw ValidationError("apply: matrix has " + std::to_string(m.cols()) + " columns, vector has " +
                              std::to_string(v.size()) + " entries");
    }
    std::vector<Complex> out(m.rows());
    for (std::size_t r = 0; r < m.rows(); r++) {
        Complex acc = 0;
        for (std::size_t c = 0; c < m.cols(); c++) {
            acc += m(r, c) * v[c];
        }
        out[r] = acc;
    }
    return out;
}

double frobenius_norm(const ComplexMatrix &m) {
    double s = 0;
    for (const auto &z : m.entries()) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "max_abs_diff");
    double worst = 0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (std::size_t k = 0; k < ea.size(); k++) {
        worst = std::max(worst, std::abs(ea[k] - eb[k]));
    }
    return worst;
}

ComplexMatrix EigenDecomposition::reconstruct() const {
    const auto &v = eigenvectors;
    std::size_t n = v.rows();
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < eigenvalues.size(); k++) {
        for (std::size_t r = 0; r < n; r++) {
            Complex vr = v(r, k) * eigenvalues[k];
            for (std::size_t c = 0; c < n; c++) {
                out(r, c) += vr * std::conj(v(c, k));
            }
        }
    }
    return out;
}

EigenDecomposition hermitian_eig(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw ValidationError("hermitian_eig: matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    double deviation = m.hermitian_deviation();
    if (deviation > kHermitianTolerance) {
        throw ValidationError("hermitian_eig: matrix is not Hermitian (deviation " + std::to_string(deviation) + ")");
    }

    std::size_t n = m.rows();
    ComplexMatrix a = m;
    for (std::size_t k = 0; k < n; k++) {
        a(k, k) = a(k, k).real();
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    for (int sweep = 0; sweep < kJacobiMaxSweeps; sweep++) {
        double off = off_diagonal_norm(a);
        if (off == 0 || off < kJacobiRelativeTolerance * diagonal_norm(a)) {
            break;
        }
        for (std::size_t p = 0; p + 1 < n; p++) {
            for (std::size_t q = p + 1; q < n; q++) {
                Complex apq = a(p, q);
                double r = std::abs(apq);
                if (r == 0) {
                    continue;
                }
                // Phase rotation makes the (p, q) entry real, then a real Givens rotation zeroes it.
                Complex phase = apq / r;
                double app = a(p, p).real();
                double aqq = a(q, q).real();
                double theta = (aqq - app) / (2 * r);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1);
                double s = t * c;

                // U = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on columns (p, q).
                Complex u_qp = -s * std::conj(phase);
                Complex u_qq = c * std::conj(phase);
                for (std::size_t k = 0; k < n; k++) {
                    Complex akp = a(k, p);
                    Complex akq = a(k, q);
                    a(k, p) = akp * c + akq * u_qp;
                    a(k, q) = akp * s + akq * u_qq;
                }
                for (std::size_t k = 0; k < n; k++) {
                    Complex apk = a(p, k);
                    Complex aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(u_qp) * aqk;
                    a(q, k) = s * apk + std::conj(u_qq) * aqk;
                }
                a(p, q) = 0;
                a(q, p) = 0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; k++) {
                    Complex vkp = v(k, p);
                    Complex vkq = v(k, q);
                    v(k, p) = vkp * c + vkq * u_qp;
                    v(k, q) = vkp * s + vkq * u_qq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; k++) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; r++) {
            out.eigenvectors(r, k) = v(r, order[k]);
        }
    }
    return out;
}

ComplexMatrix sqrt_psd(const ComplexMatrix &m) {
    EigenDecomposition eig = hermitian_eig(m);
    for (auto &lambda : eig.eigenvalues) {
        if (lambda < -kPsdTolerance) {
            throw NotPsdError("sqrt_psd: eigenvalue " + std::to_string(lambda) + " is below -1e-10");
        }
        lambda = lambda < 0 ? 0.0 : std::sqrt(lambda);
    }
    ComplexMatrix root = eig.reconstruct();
    // Restore exact Hermitian symmetry lost to rounding.
    return (root + root.adjoint()) * Complex{0.5};
}

}  // namespace qbell
