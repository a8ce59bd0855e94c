#include "zpfbell/optics.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <utility>

namespace zpfbell {

namespace {

void collect_support(const LinearForm& form, std::set<int>& out) {
    for (const auto& entry : form.alpha_coeffs()) out.insert(entry.first);
    for (const auto& entry : form.conj_coeffs()) out.insert(entry.first);
}

bool touches(const LinearForm& form, const std::set<int>& support) {
    for (const auto& entry : form.alpha_coeffs()) {
        if (support.count(entry.first) != 0) return true;
    }
    for (const auto& entry : form.conj_coeffs()) {
        if (support.count(entry.first) != 0) return true;
    }
    return false;
}

}  // namespace

PolarizedBeam apply_rotator(const PolarizedBeam& b, double beta) {
    const double c = std::cos(beta);
    const double s = std::sin(beta);
    return {lf_combine(c, b.h, -s, b.v), lf_combine(s, b.h, c, b.v), b.channel};
}

PolarizedBeam apply_retarder(const PolarizedBeam& b, double kappa) {
    const Complex phase = std::exp(Complex{0.0, kappa});
    return {b.h, phase * b.v, b.channel};
}

std::pair<PolarizedBeam, PolarizedBeam> apply_beamsplitter(const PolarizedBeam& b1,
                                                           const PolarizedBeam& b2) {
    if (b1.channel == b2.channel) {
        throw std::invalid_argument("beam splitter inputs share channel '" + b1.channel + "'");
    }
    const double t = 1.0 / std::numbers::sqrt2;
    const Complex r{0.0, t};
    PolarizedBeam out1{lf_combine(t, b1.h, r, b2.h), lf_combine(t, b1.v, r, b2.v), "out1"};
    PolarizedBeam out2{lf_combine(t, b2.h, r, b1.h), lf_combine(t, b2.v, r, b1.v), "out2"};
    return {std::move(out1), std::move(out2)};
}

std::pair<DetectorField, DetectorField> apply_pbs(const PolarizedBeam& b,
                                                  const LinearForm& idleH,
                                                  const LinearForm& idleV,
                                                  const std::string& station) {
    if (idleH.registry_id() != b.h.registry_id() || idleV.registry_id() != b.h.registry_id()) {
        throw std::invalid_argument("idle forms belong to a different mode registry");
    }
    std::set<int> beam_support;
    collect_support(b.h, beam_support);
    collect_support(b.v, beam_support);
    if (touches(idleH, beam_support) || touches(idleV, beam_support)) {
        throw std::invalid_argument("idle modes overlap the beam's modes");
    }
    const Complex i{0.0, 1.0};
    DetectorField at_h{i * b.h, idleV, "DH" + station};
    DetectorField at_v{b.v, i * idleH, "DV" + station};
    return {std::move(at_h), std::move(at_v)};
}

}  // namespace zpfbell
