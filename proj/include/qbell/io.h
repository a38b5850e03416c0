#pragma once

#include <string>
#include <variant>

#include "json.hpp"
#include "qbell/pauli.h"
#include "qbell/states.h"

namespace qbell {

using Json = nlohmann::ordered_json;
using AnyState = std::variant<PureState, DensityMatrix>;

/// Parses the state-file schema:
///   {"n": N, "kind": "pure", "amplitudes": [[re, im], ...]}
///   {"n": N, "kind": "density", "matrix": [[[re, im], ...], ...]}
/// "kind" may be omitted when exactly one of "amplitudes" or "matrix" is present. Amplitudes are
/// listed by basis index 0 .. 2^N - 1. Throws ValidationError on malformed input.
AnyState parse_state(const Json &doc);
AnyState parse_state_text(const std::string &text);

/// Full-precision state files, suitable for piping between commands.
Json state_to_json(const PureState &psi);
Json state_to_json(const DensityMatrix &rho);

DensityMatrix as_density(const AnyState &state);
std::size_t n_sites(const AnyState &state);

/// Rounds to `digits` significant digits. Non-finite values pass through; -0 becomes 0.
double round_sig(double value, int digits = 12);

/// printf("%.12g") of round_sig(value).
std::string format_sig(double value);

/// "index,i1,...,i{n-1},col_x,col_y,col_z" followed by one row per multi-index in canonical order.
/// The i-columns list the row symbols in site order.
std::string r_matrix_csv(const GeneralizedRMatrix &r);

}  // namespace qbell
