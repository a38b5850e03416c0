#include "qbell/pauli.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <string>

#include "qbell/error.h"

namespace qbell {

namespace {

constexpr Pauli kXyz[3] = {Pauli::X, Pauli::Y, Pauli::Z};

/// Action of a Pauli string on basis states: P|j> = phase(j) |j ^ flip>.
struct PauliAction {
    std::size_t flip = 0;
    std::size_t sign_mask = 0;
    Complex y_phase = 1;

    explicit PauliAction(const PauliString &p) {
        std::size_t n = p.size();
        int n_y = 0;
        for (std::size_t k = 1; k <= n; k++) {
            std::size_t bit = std::size_t{1} << site_bit(n, k);
            switch (p[k - 1]) {
                case Pauli::I:
                    break;
                case Pauli::X:
                    flip |= bit;
                    break;
                case Pauli::Y:
                    flip |= bit;
                    sign_mask |= bit;
                    n_y++;
                    break;
                case Pauli::Z:
                    sign_mask |= bit;
                    break;
            }
        }
        static constexpr Complex kPowersOfI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        y_phase = kPowersOfI[n_y % 4];
    }

    double sign(std::size_t j) const { return (std::popcount(j & sign_mask) & 1) ? -1.0 : 1.0; }
};

void require_length(std::size_t string_size, std::size_t n_sites) {
    if (string_size != n_sites) {
        throw ValidationError("Pauli string has length " + std::to_string(string_size) + " but the state has " +
                              std::to_string(n_sites) + " sites");
    }
}

void require_tensor_size(std::size_t n) {
    if (n > kMaxTensorQubits) {
        throw CapacityError("correlation tensor limited to " + std::to_string(kMaxTensorQubits) + " qubits");
    }
}

std::size_t pow3(std::size_t k) {
    std::size_t r = 1;
    while (k--) {
        r *= 3;
    }
    return r;
}

PauliString string_for_index(std::size_t n, std::size_t index) {
    std::vector<Pauli> symbols(n);
    for (std::size_t k = n; k-- > 0;) {
        symbols[k] = kXyz[index % 3];
        index /= 3;
    }
    return PauliString(std::move(symbols));
}

template <class State>
CorrelationTensor build_tensor(const State &s) {
    std::size_t n = s.n_sites();
    require_tensor_size(n);
    CorrelationTensor t{n, std::vector<double>(pow3(n))};
    for (std::size_t i = 0; i < t.values.size(); i++) {
        t.values[i] = pauli_expectation(s, string_for_index(n, i));
    }
    return t;
}

}  // namespace

char pauli_symbol(Pauli p) {
    static constexpr char kSymbols[4] = {'i', 'x', 'y', 'z'};
    return kSymbols[static_cast<int>(p)];
}

PauliString PauliString::parse(std::string_view text) {
    std::vector<Pauli> symbols;
    symbols.reserve(text.size());
    for (char ch : text) {
        switch (std::tolower(static_cast<unsigned char>(ch))) {
            case 'i':
                symbols.push_back(Pauli::I);
                break;
            case 'x':
                symbols.push_back(Pauli::X);
                break;
            case 'y':
                symbols.push_back(Pauli::Y);
                break;
            case 'z':
                symbols.push_back(Pauli::Z);
                break;
            default:
                throw ValidationError(std::string("Pauli symbol '") + ch + "' is not one of i, x, y, z");
        }
    }
    if (symbols.empty()) {
        throw ValidationError("Pauli string is empty");
    }
    return PauliString(std::move(symbols));
}

std::string PauliString::str() const {
    std::string out;
    for (Pauli p : symbols_) {
        out.push_back(pauli_symbol(p));
    }
    return out;
}

double pauli_expectation(const PureState &psi, const PauliString &p) {
    require_length(p.size(), psi.n_sites());
    PauliAction action(p);
    auto amps = psi.amplitudes();
    Complex acc = 0;
    for (std::size_t j = 0; j < amps.size(); j++) {
        acc += std::conj(amps[j ^ action.flip]) * amps[j] * action.sign(j);
    }
    return (acc * action.y_phase).real();
}

double pauli_expectation(const DensityMatrix &rho, const PauliString &p) {
    require_length(p.size(), rho.n_sites());
    PauliAction action(p);
    const auto &m = rho.matrix();
    Complex acc = 0;
    for (std::size_t j = 0; j < rho.dim(); j++) {
        acc += m(j, j ^ action.flip) * action.sign(j);
    }
    return (acc * action.y_phase).real();
}

void add_pauli_action(const PauliString &p, std::span<const Complex> psi, std::span<Complex> out) {
    if (psi.size() != (std::size_t{1} << p.size()) || out.size() != psi.size()) {
        throw ValidationError("Pauli string of length " + std::to_string(p.size()) +
                              " applied to a vector of the wrong length");
    }
    PauliAction action(p);
    for (std::size_t j = 0; j < psi.size(); j++) {
        out[j ^ action.flip] += action.y_phase * action.sign(j) * psi[j];
    }
}

double CorrelationTensor::at(const std::vector<int> &digits) const {
    std::size_t index = 0;
    for (int d : digits) {
        index = index * 3 + static_cast<std::size_t>(d);
    }
    return values[index];
}

CorrelationTensor correlation_tensor(const PureState &psi) {
    return build_tensor(psi);
}

CorrelationTensor correlation_tensor(const DensityMatrix &rho) {
    return build_tensor(rho);
}

GeneralizedRMatrix::GeneralizedRMatrix(std::size_t n_sites, std::size_t pivot, std::vector<std::size_t> site_order,
                                       std::vector<double> entries)
    : n_sites_(n_sites), pivot_(pivot), site_order_(std::move(site_order)), entries_(std::move(entries)) {
}

std::string GeneralizedRMatrix::row_label(std::size_t row) const {
    std::string out(site_order_.size(), 'x');
    for (std::size_t k = site_order_.size(); k-- > 0;) {
        out[k] = pauli_symbol(kXyz[row % 3]);
        row /= 3;
    }
    return out;
}

std::vector<std::size_t> default_site_order(std::size_t n_sites, std::size_t pivot) {
    std::vector<std::size_t> order;
    for (std::size_t s = 1; s <= n_sites; s++) {
        if (s != pivot) {
            order.push_back(s);
        }
    }
    return order;
}

GeneralizedRMatrix generalized_r_matrix(const CorrelationTensor &t, std::size_t pivot,
                                        std::vector<std::size_t> site_order) {
    std::size_t n = t.n_sites;
    if (n < 2) {
        throw ValidationError("generalized R-matrix needs at least 2 sites");
    }
    if (pivot < 1 || pivot > n) {
        throw ValidationError("pivot site " + std::to_string(pivot) + " outside 1.." + std::to_string(n));
    }
    if (site_order.empty()) {
        site_order = default_site_order(n, pivot);
    }
    auto expected = default_site_order(n, pivot);
    auto sorted = site_order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != expected) {
        throw ValidationError("site order must be a permutation of the " + std::to_string(n - 1) +
                              " non-pivot sites");
    }

    // Stride of each site's digit within the tensor index.
    std::vector<std::size_t> stride(n + 1);
    for (std::size_t k = 1; k <= n; k++) {
        stride[k] = pow3(n - k);
    }
    std::size_t rows = pow3(n - 1);
    std::vector<double> entries(rows * 3);
    for (std::size_t row = 0; row < rows; row++) {
        std::size_t base = 0;
        std::size_t rest = row;
        for (std::size_t k = site_order.size(); k-- > 0;) {
            base += (rest % 3) * stride[site_order[k]];
            rest /= 3;
        }
        for (std::size_t col = 0; col < 3; col++) {
            entries[row * 3 + col] = t.values[base + col * stride[pivot]];
        }
    }
    return GeneralizedRMatrix(n, pivot, std::move(site_order), std::move(entries));
}

Matrix3 r_gram(const GeneralizedRMatrix &r) {
    Matrix3 g{};
    for (std::size_t row = 0; row < r.rows(); row++) {
        for (std::size_t a = 0; a < 3; a++) {
            for (std::size_t b = 0; b < 3; b++) {
                g[a][b] += r(row, a) * r(row, b);
            }
        }
    }
    return g;
}

std::array<double, 3> symmetric_eigenvalues(const Matrix3 &m) {
    ComplexMatrix c(3, 3);
    for (std::size_t a = 0; a < 3; a++) {
        for (std::size_t b = 0; b < 3; b++) {
            c(a, b) = m[a][b];
        }
    }
    auto values = hermitian_eig(c).eigenvalues;
    return {values[0], values[1], values[2]};
}

}  // namespace qbell
