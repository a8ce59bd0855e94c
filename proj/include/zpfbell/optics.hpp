#pragma once

#include <string>
#include <utility>

#include "zpfbell/core.hpp"

namespace zpfbell {

/// Two-component polarized field travelling on a named channel.
struct PolarizedBeam {
    LinearForm h;
    LinearForm v;
    std::string channel;
};

/// Field arriving at one detector: the routed signal plus the vacuum
/// amplitude that enters through the splitter port the signal leaves empty.
struct DetectorField {
    LinearForm signal;
    LinearForm idle;
    std::string detector;
};

/// h' = h cos(beta) - v sin(beta); v' = h sin(beta) + v cos(beta).
PolarizedBeam apply_rotator(const PolarizedBeam& b, double beta);

/// h' = h; v' = e^{i kappa} v.
PolarizedBeam apply_retarder(const PolarizedBeam& b, double kappa);

/// Balanced splitter, componentwise in h and v:
///   out1 = (b1 + i b2)/sqrt(2),  out2 = (b2 + i b1)/sqrt(2).
/// Transmission carries 1/sqrt(2), reflection i/sqrt(2); polarization is
/// untouched. Throws std::invalid_argument when both inputs claim the same
/// channel. Output channels are "out1" and "out2".
std::pair<PolarizedBeam, PolarizedBeam> apply_beamsplitter(const PolarizedBeam& b1,
                                                           const PolarizedBeam& b2);

/// Polarizing splitter: reflects h toward the H detector with factor i and
/// transmits v toward the V detector with factor 1. The H detector's empty
/// port admits idleV, the V detector's admits i*idleH. Idle forms must not
/// touch any mode the beam uses (std::invalid_argument otherwise). `station`
/// suffixes the detector labels: station "1" yields DH1 and DV1.
std::pair<DetectorField, DetectorField> apply_pbs(const PolarizedBeam& b,
                                                  const LinearForm& idleH,
                                                  const LinearForm& idleV,
                                                  const std::string& station);

}  // namespace zpfbell
