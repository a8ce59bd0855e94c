#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "zpfbell/core.hpp"
#include "zpfbell/optics.hpp"

namespace zpfbell {

/// Crystal coupling strength; sets the scale of every pair correlation.
struct SourceConfig {
    double g = 0.1;
};

enum class BellState { PsiPlus, PsiMinus, PhiPlus, PhiMinus };

/// Rotator angle and retarder phase applied to beam 1.
struct EncoderSettings {
    double beta = 0.0;
    double kappa = 0.0;
};

/// Mode labels the crystal couples, in registration order.
inline constexpr std::array<const char*, 4> kCrystalModeLabels{"k1H", "k1V", "k2H", "k2V"};

/// Registers the four crystal modes (convenience for setups built from
/// scratch).
void register_crystal_modes(ModeRegistry& registry);

/// The two beams leaving the crystal, channels "1" and "2":
///   beam1.h = a_k1H + g a*_k2V    beam1.v = a_k1V + g a*_k2H
///   beam2.h = a_k2H + g a*_k1V    beam2.v = a_k2V + g a*_k1H
/// The only nonzero cross correlations pair h of one beam with v of the
/// other, both equal to g. Throws std::invalid_argument when cfg.g <= 0 or
/// the registry lacks a crystal mode.
std::pair<PolarizedBeam, PolarizedBeam> crystal_output(const SourceConfig& cfg,
                                                       const ModeRegistry& registry);

/// Canonical (beta, kappa) encoder settings for each Bell state.
EncoderSettings encode_settings(BellState state);

/// Rotator then retarder on beam 1; the partner beam is never touched.
PolarizedBeam bob_encode(const PolarizedBeam& beam1, const EncoderSettings& s);

std::string to_string(BellState state);

/// Accepts "psi+", "psi-", "phi+", "phi-" and the spelled-out forms
/// "psi-plus", "psi-minus", "phi-plus", "phi-minus".
std::optional<BellState> parse_bell_state(const std::string& text);

}  // namespace zpfbell
