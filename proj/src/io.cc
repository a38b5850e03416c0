#include "qbell/io.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "qbell/error.h"

namespace qbell {

namespace {

Complex parse_complex(const Json &j, const char *where) {
    if (j.is_number()) {
        return {j.get<double>(), 0};
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ValidationError(std::string(where) + ": expected a number or a [re, im] pair");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Json complex_to_json(Complex z) {
    return Json::array({z.real(), z.imag()});
}

std::size_t parse_n(const Json &doc) {
    if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<long long>() < 1) {
        throw ValidationError("state file: \"n\" must be a positive integer");
    }
    auto n = static_cast<std::size_t>(doc["n"].get<long long>());
    if (n > kMaxDenseQubits) {
        throw CapacityError("state file: n = " + std::to_string(n) + " exceeds " + std::to_string(kMaxDenseQubits));
    }
    return n;
}

}  // namespace

AnyState parse_state(const Json &doc) {
    if (!doc.is_object()) {
        throw ValidationError("state file: top level must be an object");
    }
    std::size_t n = parse_n(doc);
    std::string kind;
    if (doc.contains("kind")) {
        if (!doc["kind"].is_string()) {
            throw ValidationError("state file: \"kind\" must be \"pure\" or \"density\"");
        }
        kind = doc["kind"].get<std::string>();
    } else if (doc.contains("amplitudes") != doc.contains("matrix")) {
        kind = doc.contains("amplitudes") ? "pure" : "density";
    }

    if (kind == "pure") {
        if (!doc.contains("amplitudes") || !doc["amplitudes"].is_array()) {
            throw ValidationError("state file: pure state needs an \"amplitudes\" array");
        }
        std::vector<Complex> amps;
        for (const auto &a : doc["amplitudes"]) {
            amps.push_back(parse_complex(a, "amplitudes"));
        }
        return PureState::from_amplitudes(n, std::move(amps));
    }
    if (kind == "density") {
        if (!doc.contains("matrix") || !doc["matrix"].is_array()) {
            throw ValidationError("state file: density state needs a \"matrix\" array");
        }
        const auto &rows = doc["matrix"];
        std::size_t dim = std::size_t{1} << n;
        if (rows.size() != dim) {
            throw ValidationError("state file: matrix needs " + std::to_string(dim) + " rows");
        }
        std::vector<Complex> entries;
        entries.reserve(dim * dim);
        for (const auto &row : rows) {
            if (!row.is_array() || row.size() != dim) {
                throw ValidationError("state file: every matrix row needs " + std::to_string(dim) + " entries");
            }
            for (const auto &e : row) {
                entries.push_back(parse_complex(e, "matrix"));
            }
        }
        return DensityMatrix::from_matrix(n, ComplexMatrix(dim, dim, std::move(entries)));
    }
    throw ValidationError("state file: \"kind\" must be \"pure\" or \"density\"");
}

AnyState parse_state_text(const std::string &text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ValidationError(std::string("state file is not valid JSON: ") + e.what());
    }
    return parse_state(doc);
}

Json state_to_json(const PureState &psi) {
    Json amps = Json::array();
    for (const auto &z : psi.amplitudes()) {
        amps.push_back(complex_to_json(z));
    }
    return Json{{"n", psi.n_sites()}, {"kind", "pure"}, {"amplitudes", std::move(amps)}};
}

Json state_to_json(const DensityMatrix &rho) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < rho.dim(); r++) {
        Json row = Json::array();
        for (std::size_t c = 0; c < rho.dim(); c++) {
            row.push_back(complex_to_json(rho.matrix()(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return Json{{"n", rho.n_sites()}, {"kind", "density"}, {"matrix", std::move(rows)}};
}

DensityMatrix as_density(const AnyState &state) {
    if (const auto *psi = std::get_if<PureState>(&state)) {
        return density_from_pure(*psi);
    }
    return std::get<DensityMatrix>(state);
}

std::size_t n_sites(const AnyState &state) {
    return std::visit([](const auto &s) { return s.n_sites(); }, state);
}

double round_sig(double value, int digits) {
    if (value == 0) {
        return 0.0;
    }
    if (!std::isfinite(value)) {
        return value;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, value);
    return std::strtod(buf, nullptr);
}

std::string format_sig(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", round_sig(value));
    return buf;
}

std::string r_matrix_csv(const GeneralizedRMatrix &r) {
    std::string out = "index";
    for (std::size_t k = 1; k < r.n_sites(); k++) {
        out += ",i" + std::to_string(k);
    }
    out += ",col_x,col_y,col_z\n";
    for (std::size_t row = 0; row < r.rows(); row++) {
        out += std::to_string(row);
        for (char symbol : r.row_label(row)) {
            out += ',';
            out += symbol;
        }
        for (std::size_t col = 0; col < 3; col++) {
            out += ',' + format_sig(r(row, col));
        }
        out += '\n';
    }
    return out;
}

}  // namespace qbell
