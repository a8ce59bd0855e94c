#pragma once

#include "zpfbell/analyzer.hpp"
#include "zpfbell/core.hpp"
#include "zpfbell/optics.hpp"
#include "zpfbell/source.hpp"

namespace zpfbell {

/// One fully assembled bench: crystal and idle modes, the encoded beam pair,
/// the balanced-splitter outputs, and the four detector fields.
struct Experiment {
    ModeRegistry registry;
    SourceConfig config;
    EncoderSettings settings;
    PolarizedBeam beam1;
    PolarizedBeam beam2;
    PolarizedBeam out1;
    PolarizedBeam out2;
    AnalyzerFields fields;
};

/// Registers all modes, runs the crystal, encodes beam 1 with `settings`,
/// and propagates both beams through the analyzer.
Experiment build_experiment(const SourceConfig& cfg, const EncoderSettings& settings);

}  // namespace zpfbell
