#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace qbell {

/// xoshiro256** seeded through splitmix64. Used wherever results must be reproducible across
/// platforms, which rules out the implementation-defined std distributions.
class Rng {
   public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    /// Uniform in [0, 1) with 53 random bits.
    double uniform();

    /// Standard normal via Box-Muller.
    double gaussian();

    /// Uniform on the unit sphere.
    std::array<double, 3> unit_vector();

   private:
    std::array<std::uint64_t, 4> s_;
};

}  // namespace qbell
