#include "qbell/io.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "qbell/error.h"
#include "qbell/models.h"
#include "test_util.h"

using namespace qbell;

TEST(io, pure_state_round_trip) {
    Rng rng(1);
    auto psi = test_util::random_pure(3, rng);
    auto back = std::get<PureState>(parse_state(state_to_json(psi)));
    ASSERT_EQ(back.n_sites(), 3u);
    for (std::size_t i = 0; i < psi.dim(); i++) {
        ASSERT_EQ(back.amplitude(i), psi.amplitude(i));
    }
    auto text = state_to_json(psi).dump();
    auto parsed = std::get<PureState>(parse_state_text(text));
    ASSERT_TRUE(std::ranges::equal(parsed.amplitudes(), psi.amplitudes()));
}

TEST(io, density_round_trip) {
    Rng rng(2);
    auto rho = test_util::random_density(2, 2, rng);
    auto back = std::get<DensityMatrix>(parse_state(state_to_json(rho)));
    ASSERT_EQ(back.matrix(), rho.matrix());
    ASSERT_EQ(n_sites(AnyState{back}), 2u);
}

TEST(io, kind_is_inferred) {
    auto doc = Json::parse(R"({"n": 1, "amplitudes": [[1, 0], [0, 0]]})");
    ASSERT_TRUE(std::holds_alternative<PureState>(parse_state(doc)));
    auto rho = as_density(parse_state(doc));
    ASSERT_EQ(rho.matrix()(0, 0), Complex(1));
}

TEST(io, real_amplitudes_accepted) {
    auto psi = std::get<PureState>(parse_state_text(R"({"n": 1, "kind": "pure", "amplitudes": [0.6, 0.8]})"));
    ASSERT_EQ(psi.amplitude(1), Complex(0.8));
}

TEST(io, malformed_input) {
    ASSERT_THROW(parse_state_text("not json"), ValidationError);
    ASSERT_THROW(parse_state_text(R"({"n": 1})"), ValidationError);
    ASSERT_THROW(parse_state_text(R"({"n": 1, "kind": "pure", "amplitudes": [[1, 0]]})"), ValidationError);
    ASSERT_THROW(parse_state_text(R"({"n": 1, "kind": "pure", "amplitudes": [[0, 0], [0, 0]]})"), ValidationError);
    ASSERT_THROW(parse_state_text(R"({"n": 1, "kind": "pure", "amplitudes": ["1", 0]})"), ValidationError);
    ASSERT_THROW(parse_state_text(R"({"n": 1, "kind": "density", "matrix": [[[1, 0]], [[0, 0]]]})"), ValidationError);
    ASSERT_THROW(parse_state_text(R"({"n": 1, "kind": "mixed", "matrix": []})"), ValidationError);
    ASSERT_THROW(parse_state_text(R"({"n": 13, "kind": "pure", "amplitudes": []})"), CapacityError);
}

TEST(io, round_sig) {
    ASSERT_EQ(round_sig(4 * std::numbers::sqrt2), 5.65685424949);
    ASSERT_EQ(round_sig(-0.0), 0.0);
    ASSERT_FALSE(std::signbit(round_sig(-1e-300 * 0)));
    ASSERT_TRUE(std::isinf(round_sig(INFINITY)));
    ASSERT_EQ(round_sig(123456.7891234567), 123456.789123);
    ASSERT_EQ(format_sig(4 * std::numbers::sqrt2), "5.65685424949");
    ASSERT_EQ(format_sig(-0.0), "0");
    ASSERT_EQ(format_sig(2), "2");
}

TEST(io, r_matrix_csv) {
    auto r = generalized_r_matrix(correlation_tensor(wen_plaquette_states(4, 0)), 4);
    auto csv = r_matrix_csv(r);
    ASSERT_EQ(csv.substr(0, csv.find('\n')), "index,i1,i2,i3,col_x,col_y,col_z");
    std::size_t lines = 0;
    for (char c : csv) {
        lines += c == '\n';
    }
    ASSERT_EQ(lines, 28u);
}
