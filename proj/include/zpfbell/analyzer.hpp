#pragma once

#include <array>
#include <string>

#include "zpfbell/core.hpp"
#include "zpfbell/optics.hpp"

namespace zpfbell {

/// Idle vacuum mode labels consumed by the two polarizing splitters, in
/// registration order.
inline constexpr std::array<const char*, 4> kIdleModeLabels{"alice1H", "alice1V", "alice2H",
                                                            "alice2V"};

/// Registers the four idle modes (convenience for setups built from
/// scratch).
void register_idle_modes(ModeRegistry& registry);

/// The four detector fields behind the analyzer optics. `scale` is the
/// squared source pair-correlation unit that coincidence tables report
/// probabilities against.
struct AnalyzerFields {
    DetectorField dh1;
    DetectorField dv1;
    DetectorField dh2;
    DetectorField dv2;
    double scale = 0.0;
};

/// The six unordered detector pairs, in reporting order.
enum class DetectorPair : int {
    DH1_DH2 = 0,
    DV1_DV2 = 1,
    DH1_DV2 = 2,
    DV1_DH2 = 3,
    DH1_DV1 = 4,
    DH2_DV2 = 5,
};

inline constexpr std::array<DetectorPair, 6> kAllDetectorPairs{
    DetectorPair::DH1_DH2, DetectorPair::DV1_DV2, DetectorPair::DH1_DV2,
    DetectorPair::DV1_DH2, DetectorPair::DH1_DV1, DetectorPair::DH2_DV2,
};

inline constexpr std::array<const char*, 6> kDetectorPairNames{
    "DH1_DH2", "DV1_DV2", "DH1_DV2", "DV1_DH2", "DH1_DV1", "DH2_DV2",
};

/// Joint detection probabilities for the six pairs, in kAllDetectorPairs
/// order, plus the scale they are naturally measured against.
struct CoincidenceTable {
    std::array<double, 6> p{};
    double scale = 0.0;

    double at(DetectorPair pair) const { return p[static_cast<int>(pair)]; }
    /// Entries rescaled to sum to 1; an all-zero table stays all-zero.
    std::array<double, 6> normalized() const;
};

enum class Classification { PsiMinus, PsiPlus, PhiClass, Ambiguous };

std::string to_string(Classification c);

/// Recombines the beams at the balanced splitter, then splits each output at
/// a polarizing splitter fed with its own pair of idle vacuum modes. The
/// registry must already hold the idle modes (std::invalid_argument
/// otherwise). The returned scale is half the summed squared cross-beam
/// correlations of the inputs, which the encoder leaves invariant.
AnalyzerFields analyze(const PolarizedBeam& beam1, const PolarizedBeam& beam2,
                       const ModeRegistry& registry);

/// Sum over both components (signal and idle) of each detector field of the
/// squared correlation magnitude. The idle terms are structurally zero but
/// participate in the sum. Throws std::invalid_argument on identical
/// detectors.
double joint_probability(const DetectorField& a, const DetectorField& b);

/// The six pairwise joint probabilities of the detector fields.
CoincidenceTable coincidence_table(const AnalyzerFields& f);

/// Thresholds the table entries, normalized by max(scale, largest entry),
/// against epsilon (must lie in (0, 1)): cross-channel pairs high and
/// same-channel low is PsiMinus, the reverse is PsiPlus, everything low is
/// PhiClass, and any other pattern (including a high HH or VV pair) is
/// Ambiguous.
Classification classify(const CoincidenceTable& t, double epsilon);

}  // namespace zpfbell
