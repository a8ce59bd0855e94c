#include "zpfbell/experiment.hpp"

#include <tuple>
#include <utility>

namespace zpfbell {

Experiment build_experiment(const SourceConfig& cfg, const EncoderSettings& settings) {
    Experiment ex;
    ex.config = cfg;
    ex.settings = settings;
    register_crystal_modes(ex.registry);
    register_idle_modes(ex.registry);
    auto [raw1, raw2] = crystal_output(cfg, ex.registry);
    ex.beam1 = bob_encode(raw1, settings);
    ex.beam2 = std::move(raw2);
    std::tie(ex.out1, ex.out2) = apply_beamsplitter(ex.beam1, ex.beam2);
    ex.fields = analyze(ex.beam1, ex.beam2, ex.registry);
    return ex;
}

}  // namespace zpfbell
