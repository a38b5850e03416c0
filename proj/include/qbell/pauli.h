#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qbell/states.h"

namespace qbell {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_symbol(Pauli p);

/// Tensor product of single-site Paulis; symbols[k-1] acts on site k.
class PauliString {
   public:
    PauliString() = default;
    explicit PauliString(std::vector<Pauli> symbols) : symbols_(std::move(symbols)) {}

    /// Parses a word over {i, x, y, z} (case-insensitive). Throws ValidationError otherwise.
    static PauliString parse(std::string_view text);

    std::size_t size() const { return symbols_.size(); }
    Pauli operator[](std::size_t index) const { return symbols_[index]; }
    const std::vector<Pauli> &symbols() const { return symbols_; }
    std::string str() const;

   private:
    std::vector<Pauli> symbols_;
};

/// <psi|P|psi>, evaluated directly on the amplitudes.
double pauli_expectation(const PureState &psi, const PauliString &p);

/// Tr(rho P), evaluated directly on the matrix entries.
double pauli_expectation(const DensityMatrix &rho, const PauliString &p);

/// out += P psi, with psi and out amplitude vectors of length 2^n.
void add_pauli_action(const PauliString &p, std::span<const Complex> psi, std::span<Complex> out);

/// Largest register for which the full 3^n correlation tensor is built.
inline constexpr std::size_t kMaxTensorQubits = 10;

/// All 3^n correlators Tr(rho s_1 (x) ... (x) s_n) with s_k in {x, y, z}. Entry index is the
/// big-endian base-3 number of the symbols with x -> 0, y -> 1, z -> 2 (site 1 most significant).
struct CorrelationTensor {
    std::size_t n_sites = 0;
    std::vector<double> values;

    /// digits[k-1] in {0, 1, 2} is the symbol on site k.
    double at(const std::vector<int> &digits) const;
};

CorrelationTensor correlation_tensor(const PureState &psi);
CorrelationTensor correlation_tensor(const DensityMatrix &rho);

/// Correlators arranged as a 3^(n-1) x 3 matrix. The column is the symbol on the pivot site; the
/// row is the base-3 number of the other sites' symbols, taken in `site_order` with the first
/// listed site as the most significant digit.
class GeneralizedRMatrix {
   public:
    GeneralizedRMatrix(std::size_t n_sites, std::size_t pivot, std::vector<std::size_t> site_order,
                       std::vector<double> entries);

    std::size_t n_sites() const { return n_sites_; }
    std::size_t pivot() const { return pivot_; }
    const std::vector<std::size_t> &site_order() const { return site_order_; }
    std::size_t rows() const { return entries_.size() / 3; }
    double operator()(std::size_t row, std::size_t col) const { return entries_[row * 3 + col]; }
    const std::vector<double> &entries() const { return entries_; }

    /// Symbols of row `row` in site_order, e.g. "zyyzx".
    std::string row_label(std::size_t row) const;

   private:
    std::size_t n_sites_;
    std::size_t pivot_;
    std::vector<std::size_t> site_order_;
    std::vector<double> entries_;
};

/// Ascending list of every site except `pivot`.
std::vector<std::size_t> default_site_order(std::size_t n_sites, std::size_t pivot);

/// Throws ValidationError for n < 2, a pivot outside 1..n or an order that is not a permutation
/// of the non-pivot sites. An empty order means default_site_order.
GeneralizedRMatrix generalized_r_matrix(const CorrelationTensor &t, std::size_t pivot,
                                        std::vector<std::size_t> site_order = {});

using Matrix3 = std::array<std::array<double, 3>, 3>;

/// R^T R, contracted over the row multi-index.
Matrix3 r_gram(const GeneralizedRMatrix &r);

/// Eigenvalues of a real symmetric 3x3 matrix, descending.
std::array<double, 3> symmetric_eigenvalues(const Matrix3 &m);

}  // namespace qbell
