#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"

#include "test_util.hpp"
#include "zpfbell/core.hpp"
#include "zpfbell/source.hpp"

using namespace zpfbell;
using testutil::coeff_distance;

namespace {

constexpr std::array<BellState, 4> kAllStates{BellState::PsiPlus, BellState::PsiMinus,
                                              BellState::PhiPlus, BellState::PhiMinus};

/// 2x2 cross-beam correlation matrix, rows (h1, v1), columns (h2, v2).
std::array<std::array<Complex, 2>, 2> cross_matrix(const PolarizedBeam& b1,
                                                   const PolarizedBeam& b2) {
    const std::array<const LinearForm*, 2> one{&b1.h, &b1.v};
    const std::array<const LinearForm*, 2> two{&b2.h, &b2.v};
    std::array<std::array<Complex, 2>, 2> out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out[i][j] = exact_correlation(*one[i], *two[j]);
    return out;
}

}  // namespace

TEST_CASE("crystal pairs h of one beam only with v of the other") {
    ModeRegistry registry;
    register_crystal_modes(registry);
    const auto [b1, b2] = crystal_output({0.25}, registry);
    CHECK(b1.channel == "1");
    CHECK(b2.channel == "2");

    CHECK(exact_correlation(b1.h, b2.v) == Complex{0.25, 0.0});
    CHECK(exact_correlation(b1.v, b2.h) == Complex{0.25, 0.0});
    CHECK(exact_correlation(b1.h, b2.h) == Complex{});
    CHECK(exact_correlation(b1.v, b2.v) == Complex{});

    // No same-beam pairing and no self-pairing.
    CHECK(exact_correlation(b1.h, b1.v) == Complex{});
    CHECK(exact_correlation(b2.h, b2.v) == Complex{});
    CHECK(exact_correlation(b1.h, b1.h) == Complex{});
    CHECK(exact_correlation(b2.v, b2.v) == Complex{});
}

TEST_CASE("crystal validates coupling and registry") {
    ModeRegistry registry;
    register_crystal_modes(registry);
    CHECK_THROWS_AS(crystal_output({0.0}, registry), std::invalid_argument);
    CHECK_THROWS_AS(crystal_output({-0.1}, registry), std::invalid_argument);

    ModeRegistry missing;
    missing.register_mode("k1H");
    CHECK_THROWS_AS(crystal_output({0.1}, missing), std::invalid_argument);
}

TEST_CASE("encoder settings take the canonical values") {
    CHECK(encode_settings(BellState::PsiPlus).beta == 0.0);
    CHECK(encode_settings(BellState::PsiPlus).kappa == 0.0);
    CHECK(encode_settings(BellState::PsiMinus).beta == 0.0);
    CHECK(encode_settings(BellState::PsiMinus).kappa == std::numbers::pi);
    CHECK(encode_settings(BellState::PhiPlus).beta == -std::numbers::pi / 2);
    CHECK(encode_settings(BellState::PhiPlus).kappa == std::numbers::pi);
    CHECK(encode_settings(BellState::PhiMinus).beta == -std::numbers::pi / 2);
    CHECK(encode_settings(BellState::PhiMinus).kappa == 0.0);
}

TEST_CASE("encoding acts on beam 1 as rotator then retarder") {
    ModeRegistry registry;
    register_crystal_modes(registry);
    const auto [b1, b2] = crystal_output({0.1}, registry);

    const PolarizedBeam same = bob_encode(b1, {0.0, 0.0});
    CHECK(coeff_distance(same.h, b1.h) == 0.0);
    CHECK(coeff_distance(same.v, b1.v) == 0.0);

    const PolarizedBeam flipped = bob_encode(b1, {0.0, std::numbers::pi});
    const LinearForm minus_v = lf_combine(-1.0, b1.v, 0.0, b1.v);
    CHECK(coeff_distance(flipped.h, b1.h) == 0.0);
    CHECK(coeff_distance(flipped.v, minus_v) < 1e-12);

    // beta = -pi/2, kappa = pi sends (h, v) to (v, h) up to rounding.
    const PolarizedBeam swapped = bob_encode(b1, {-std::numbers::pi / 2, std::numbers::pi});
    CHECK(coeff_distance(swapped.h, b1.v) < 1e-12);
    CHECK(coeff_distance(swapped.v, b1.h) < 1e-12);
}

TEST_CASE("each state shows its characteristic correlation pattern") {
    ModeRegistry registry;
    register_crystal_modes(registry);
    const double g = 0.1;
    const auto [raw1, b2] = crystal_output({g}, registry);

    for (const BellState state : kAllStates) {
        const PolarizedBeam b1 = bob_encode(raw1, encode_settings(state));
        const auto c = cross_matrix(b1, b2);
        std::array<std::array<Complex, 2>, 2> expected{};
        switch (state) {
            case BellState::PsiPlus:
                expected[0][1] = g;
                expected[1][0] = g;
                break;
            case BellState::PsiMinus:
                expected[0][1] = g;
                expected[1][0] = -g;
                break;
            case BellState::PhiPlus:
                expected[0][0] = g;
                expected[1][1] = g;
                break;
            case BellState::PhiMinus:
                expected[0][0] = g;
                expected[1][1] = -g;
                break;
        }
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) CHECK(std::abs(c[i][j] - expected[i][j]) < 1e-12);
    }
}

TEST_CASE("beam exchange flips the sign only for the antisymmetric state") {
    ModeRegistry registry;
    register_crystal_modes(registry);
    const auto [raw1, b2] = crystal_output({0.1}, registry);

    for (const BellState state : kAllStates) {
        const PolarizedBeam b1 = bob_encode(raw1, encode_settings(state));
        const auto c = cross_matrix(b1, b2);
        // Relabeling the beams transposes the matrix; the correlation itself
        // is symmetric in its arguments.
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                const Complex swapped = c[j][i];
                if (state == BellState::PsiMinus) {
                    CHECK(std::abs(swapped + c[i][j]) < 1e-12);
                } else {
                    CHECK(std::abs(swapped - c[i][j]) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("state names round-trip through parsing") {
    for (const BellState state : kAllStates) {
        CHECK(parse_bell_state(to_string(state)) == state);
    }
    CHECK(parse_bell_state("psi+") == BellState::PsiPlus);
    CHECK(parse_bell_state("psi-minus") == BellState::PsiMinus);
    CHECK(parse_bell_state("phi-plus") == BellState::PhiPlus);
    CHECK(parse_bell_state("phi-") == BellState::PhiMinus);
    CHECK_FALSE(parse_bell_state("sigma+").has_value());
    CHECK_FALSE(parse_bell_state("").has_value());
}
