#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"

#include "test_util.hpp"
#include "zpfbell/core.hpp"
#include "zpfbell/optics.hpp"

using namespace zpfbell;
using testutil::TestRng;
using testutil::coeff_distance;
using testutil::random_form;

namespace {

ModeRegistry make_registry(int modes) {
    ModeRegistry registry;
    for (int m = 0; m < modes; ++m) registry.register_mode("m" + std::to_string(m));
    return registry;
}

PolarizedBeam random_beam(const ModeRegistry& registry, TestRng& rng, const std::string& channel) {
    return {random_form(registry, rng), random_form(registry, rng), channel};
}

/// Conjugate-pairing power of a beam: sum_c <x_c conj(x_c)>.
double beam_power(const PolarizedBeam& b) {
    return exact_correlation(b.h, conjugate_form(b.h)).real() +
           exact_correlation(b.v, conjugate_form(b.v)).real();
}

}  // namespace

TEST_CASE("rotator at zero is the identity") {
    const ModeRegistry registry = make_registry(3);
    TestRng rng(3);
    const PolarizedBeam b = random_beam(registry, rng, "in");
    const PolarizedBeam r = apply_rotator(b, 0.0);
    CHECK(coeff_distance(r.h, b.h) == 0.0);
    CHECK(coeff_distance(r.v, b.v) == 0.0);
    CHECK(r.channel == b.channel);
}

TEST_CASE("rotator at a quarter turn swaps components with a sign") {
    const ModeRegistry registry = make_registry(3);
    TestRng rng(5);
    const PolarizedBeam b = random_beam(registry, rng, "in");
    const PolarizedBeam r = apply_rotator(b, std::numbers::pi / 2);
    const LinearForm minus_v = lf_combine(-1.0, b.v, 0.0, b.v);
    CHECK(coeff_distance(r.h, minus_v) < 1e-12);
    CHECK(coeff_distance(r.v, b.h) < 1e-12);
}

TEST_CASE("rotator composes with its inverse") {
    const ModeRegistry registry = make_registry(4);
    TestRng rng(9);
    const PolarizedBeam b = random_beam(registry, rng, "in");
    const PolarizedBeam back = apply_rotator(apply_rotator(b, 0.7), -0.7);
    CHECK(coeff_distance(back.h, b.h) < 1e-12);
    CHECK(coeff_distance(back.v, b.v) < 1e-12);
}

TEST_CASE("rotator and retarder are linear in the beam") {
    const ModeRegistry registry = make_registry(3);
    TestRng rng(13);
    const PolarizedBeam b1 = random_beam(registry, rng, "in");
    const PolarizedBeam b2 = random_beam(registry, rng, "in");
    const Complex c1 = rng.coeff();
    const Complex c2 = rng.coeff();
    const PolarizedBeam mix{lf_combine(c1, b1.h, c2, b2.h), lf_combine(c1, b1.v, c2, b2.v), "in"};

    const PolarizedBeam rot_mix = apply_rotator(mix, 1.1);
    const PolarizedBeam rot1 = apply_rotator(b1, 1.1);
    const PolarizedBeam rot2 = apply_rotator(b2, 1.1);
    CHECK(coeff_distance(rot_mix.h, lf_combine(c1, rot1.h, c2, rot2.h)) < 1e-12);
    CHECK(coeff_distance(rot_mix.v, lf_combine(c1, rot1.v, c2, rot2.v)) < 1e-12);

    const PolarizedBeam ret_mix = apply_retarder(mix, 2.3);
    const PolarizedBeam ret1 = apply_retarder(b1, 2.3);
    const PolarizedBeam ret2 = apply_retarder(b2, 2.3);
    CHECK(coeff_distance(ret_mix.v, lf_combine(c1, ret1.v, c2, ret2.v)) < 1e-12);
}

TEST_CASE("retarder shifts only the vertical phase") {
    const ModeRegistry registry = make_registry(3);
    TestRng rng(17);
    const PolarizedBeam b = random_beam(registry, rng, "in");

    const PolarizedBeam same = apply_retarder(b, 0.0);
    CHECK(coeff_distance(same.h, b.h) == 0.0);
    CHECK(coeff_distance(same.v, b.v) == 0.0);

    const PolarizedBeam flipped = apply_retarder(b, std::numbers::pi);
    const LinearForm minus_v = lf_combine(-1.0, b.v, 0.0, b.v);
    CHECK(coeff_distance(flipped.h, b.h) == 0.0);
    CHECK(coeff_distance(flipped.v, minus_v) < 1e-12);

    // A unimodular phase cannot change any correlation magnitude.
    const PolarizedBeam shifted = apply_retarder(b, 0.8);
    const LinearForm probe = random_form(registry, rng);
    CHECK(std::abs(exact_correlation(shifted.v, probe)) ==
          doctest::Approx(std::abs(exact_correlation(b.v, probe))).epsilon(1e-12));
}

TEST_CASE("beam splitter rejects two inputs on the same channel") {
    const ModeRegistry registry = make_registry(2);
    TestRng rng(19);
    const PolarizedBeam b1 = random_beam(registry, rng, "same");
    const PolarizedBeam b2 = random_beam(registry, rng, "same");
    CHECK_THROWS_AS(apply_beamsplitter(b1, b2), std::invalid_argument);
}

TEST_CASE("beam splitter with an empty port splits one beam in two") {
    const ModeRegistry registry = make_registry(3);
    TestRng rng(23);
    const PolarizedBeam b1 = random_beam(registry, rng, "in1");
    const PolarizedBeam empty{LinearForm(registry), LinearForm(registry), "in2"};
    const auto [out1, out2] = apply_beamsplitter(b1, empty);
    const double t = 1.0 / std::numbers::sqrt2;
    CHECK(coeff_distance(out1.h, lf_combine(t, b1.h, 0.0, b1.h)) < 1e-15);
    CHECK(coeff_distance(out2.h, lf_combine(Complex{0.0, t}, b1.h, 0.0, b1.h)) < 1e-15);
    CHECK(coeff_distance(out2.v, lf_combine(Complex{0.0, t}, b1.v, 0.0, b1.v)) < 1e-15);
    CHECK(out1.channel == "out1");
    CHECK(out2.channel == "out2");
}

TEST_CASE("beam splitter conserves conjugate-pairing power") {
    const ModeRegistry registry = make_registry(5);
    TestRng rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        const PolarizedBeam b1 = random_beam(registry, rng, "in1");
        const PolarizedBeam b2 = random_beam(registry, rng, "in2");
        const auto [out1, out2] = apply_beamsplitter(b1, b2);
        const double before = beam_power(b1) + beam_power(b2);
        const double after = beam_power(out1) + beam_power(out2);
        CHECK(after == doctest::Approx(before).epsilon(1e-12));
    }
}

TEST_CASE("beam splitter does not mix polarizations") {
    const ModeRegistry registry = make_registry(4);
    TestRng rng(31);
    PolarizedBeam b1 = random_beam(registry, rng, "in1");
    PolarizedBeam b2 = random_beam(registry, rng, "in2");
    b1.v = LinearForm(registry);
    b2.v = LinearForm(registry);
    const auto [out1, out2] = apply_beamsplitter(b1, b2);
    CHECK(out1.v.empty());
    CHECK(out2.v.empty());
}

TEST_CASE("polarizing splitter routes components and injects idles") {
    ModeRegistry registry;
    const ModeId mh = registry.register_mode("mh");
    const ModeId mv = registry.register_mode("mv");
    const ModeId ih = registry.register_mode("ih");
    const ModeId iv = registry.register_mode("iv");
    PolarizedBeam beam{LinearForm::alpha(registry, mh), LinearForm::alpha(registry, mv), "out1"};
    const LinearForm idleH = LinearForm::alpha(registry, ih);
    const LinearForm idleV = LinearForm::alpha(registry, iv);

    const auto [dh, dv] = apply_pbs(beam, idleH, idleV, "1");
    CHECK(dh.detector == "DH1");
    CHECK(dv.detector == "DV1");
    CHECK(coeff_distance(dh.signal, lf_combine(Complex{0.0, 1.0}, beam.h, 0.0, beam.h)) == 0.0);
    CHECK(coeff_distance(dv.signal, beam.v) == 0.0);
    CHECK(coeff_distance(dh.idle, idleV) == 0.0);
    CHECK(coeff_distance(dv.idle, lf_combine(Complex{0.0, 1.0}, idleH, 0.0, idleH)) == 0.0);

    // Signals never correlate with the idles of either detector, on the
    // direct path or the conjugate one.
    CHECK(exact_correlation(dh.signal, dh.idle) == Complex{});
    CHECK(exact_correlation(dh.signal, dv.idle) == Complex{});
    CHECK(exact_correlation(dv.signal, dh.idle) == Complex{});
    CHECK(exact_correlation(dv.signal, dv.idle) == Complex{});
    CHECK(exact_correlation(dh.signal, conjugate_form(dh.idle)) == Complex{});
    CHECK(exact_correlation(dv.signal, conjugate_form(dh.idle)) == Complex{});
    CHECK(exact_correlation(dh.signal, conjugate_form(dv.idle)) == Complex{});
    CHECK(exact_correlation(dv.signal, conjugate_form(dv.idle)) == Complex{});
}

TEST_CASE("polarizing splitter on a purely horizontal beam leaves V empty") {
    ModeRegistry registry;
    const ModeId mh = registry.register_mode("mh");
    const ModeId ih = registry.register_mode("ih");
    const ModeId iv = registry.register_mode("iv");
    PolarizedBeam beam{LinearForm::alpha(registry, mh), LinearForm(registry), "out2"};
    const auto [dh, dv] = apply_pbs(beam, LinearForm::alpha(registry, ih),
                                    LinearForm::alpha(registry, iv), "2");
    CHECK(dh.detector == "DH2");
    CHECK(dv.signal.empty());
    CHECK_FALSE(dv.idle.empty());
}

TEST_CASE("polarizing splitter rejects idles overlapping the beam") {
    ModeRegistry registry;
    const ModeId mh = registry.register_mode("mh");
    const ModeId iv = registry.register_mode("iv");
    PolarizedBeam beam{LinearForm::alpha(registry, mh), LinearForm(registry), "out1"};
    const LinearForm overlapping = LinearForm::alpha(registry, mh);
    const LinearForm clean = LinearForm::alpha(registry, iv);
    CHECK_THROWS_AS(apply_pbs(beam, overlapping, clean, "1"), std::invalid_argument);
    CHECK_THROWS_AS(apply_pbs(beam, clean, overlapping, "1"), std::invalid_argument);

    ModeRegistry other;
    const LinearForm foreign = LinearForm::alpha(other, other.register_mode("x"));
    CHECK_THROWS_AS(apply_pbs(beam, foreign, clean, "1"), std::invalid_argument);
}
