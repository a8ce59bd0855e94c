#include "zpfbell/source.hpp"

#include <numbers>
#include <stdexcept>

namespace zpfbell {

namespace {

const ModeId& require_mode(const ModeRegistry& registry, const char* label) {
    const ModeId* mode = registry.find(label);
    if (mode == nullptr) {
        throw std::invalid_argument(std::string("registry lacks crystal mode '") + label + "'");
    }
    return *mode;
}

}  // namespace

void register_crystal_modes(ModeRegistry& registry) {
    for (const char* label : kCrystalModeLabels) registry.register_mode(label);
}

std::pair<PolarizedBeam, PolarizedBeam> crystal_output(const SourceConfig& cfg,
                                                       const ModeRegistry& registry) {
    if (!(cfg.g > 0.0)) {
        throw std::invalid_argument("coupling strength must be positive");
    }
    const ModeId& k1h = require_mode(registry, "k1H");
    const ModeId& k1v = require_mode(registry, "k1V");
    const ModeId& k2h = require_mode(registry, "k2H");
    const ModeId& k2v = require_mode(registry, "k2V");

    PolarizedBeam beam1{LinearForm(registry), LinearForm(registry), "1"};
    beam1.h.add_alpha(k1h, 1.0).add_conj(k2v, cfg.g);
    beam1.v.add_alpha(k1v, 1.0).add_conj(k2h, cfg.g);
    PolarizedBeam beam2{LinearForm(registry), LinearForm(registry), "2"};
    beam2.h.add_alpha(k2h, 1.0).add_conj(k1v, cfg.g);
    beam2.v.add_alpha(k2v, 1.0).add_conj(k1h, cfg.g);
    return {std::move(beam1), std::move(beam2)};
}

EncoderSettings encode_settings(BellState state) {
    const double pi = std::numbers::pi;
    switch (state) {
        case BellState::PsiPlus: return {0.0, 0.0};
        case BellState::PsiMinus: return {0.0, pi};
        case BellState::PhiPlus: return {-pi / 2.0, pi};
        case BellState::PhiMinus: return {-pi / 2.0, 0.0};
    }
    throw std::invalid_argument("unknown Bell state");
}

PolarizedBeam bob_encode(const PolarizedBeam& beam1, const EncoderSettings& s) {
    return apply_retarder(apply_rotator(beam1, s.beta), s.kappa);
}

std::string to_string(BellState state) {
    switch (state) {
        case BellState::PsiPlus: return "psi+";
        case BellState::PsiMinus: return "psi-";
        case BellState::PhiPlus: return "phi+";
        case BellState::PhiMinus: return "phi-";
    }
    throw std::invalid_argument("unknown Bell state");
}

std::optional<BellState> parse_bell_state(const std::string& text) {
    if (text == "psi+" || text == "psi-plus") return BellState::PsiPlus;
    if (text == "psi-" || text == "psi-minus") return BellState::PsiMinus;
    if (text == "phi+" || text == "phi-plus") return BellState::PhiPlus;
    if (text == "phi-" || text == "phi-minus") return BellState::PhiMinus;
    return std::nullopt;
}

}  // namespace zpfbell
