#include "zpfbell/analyzer.hpp"

#include <stdexcept>
#include <utility>

namespace zpfbell {

namespace {

const ModeId& require_idle_mode(const ModeRegistry& registry, const char* label) {
    const ModeId* mode = registry.find(label);
    if (mode == nullptr) {
        throw std::invalid_argument(std::string("registry lacks idle mode '") + label + "'");
    }
    return *mode;
}

}  // namespace

void register_idle_modes(ModeRegistry& registry) {
    for (const char* label : kIdleModeLabels) registry.register_mode(label);
}

std::array<double, 6> CoincidenceTable::normalized() const {
    double sum = 0.0;
    double peak = 0.0;
    for (double value : p) {
        sum += value;
        if (value > peak) peak = value;
    }
    std::array<double, 6> out{};
    // A table whose entries are pure rounding residue relative to its scale
    // reads as all-zero rather than as ratios of that residue.
    if (sum <= 0.0 || (scale > 0.0 && peak <= 1e-15 * scale)) return out;
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i] / sum;
    return out;
}

std::string to_string(Classification c) {
    switch (c) {
        case Classification::PsiMinus: return "psi_minus";
        case Classification::PsiPlus: return "psi_plus";
        case Classification::PhiClass: return "phi_class";
        case Classification::Ambiguous: return "ambiguous";
    }
    throw std::invalid_argument("unknown classification");
}

AnalyzerFields analyze(const PolarizedBeam& beam1, const PolarizedBeam& beam2,
                       const ModeRegistry& registry) {
    const ModeId& alice1h = require_idle_mode(registry, "alice1H");
    const ModeId& alice1v = require_idle_mode(registry, "alice1V");
    const ModeId& alice2h = require_idle_mode(registry, "alice2H");
    const ModeId& alice2v = require_idle_mode(registry, "alice2V");

    double scale = 0.0;
    for (const LinearForm* a : {&beam1.h, &beam1.v}) {
        for (const LinearForm* b : {&beam2.h, &beam2.v}) {
            scale += std::norm(exact_correlation(*a, *b));
        }
    }
    scale *= 0.5;

    auto [out1, out2] = apply_beamsplitter(beam1, beam2);
    auto [dh1, dv1] = apply_pbs(out1, LinearForm::alpha(registry, alice1h),
                                LinearForm::alpha(registry, alice1v), "1");
    auto [dh2, dv2] = apply_pbs(out2, LinearForm::alpha(registry, alice2h),
                                LinearForm::alpha(registry, alice2v), "2");
    return {std::move(dh1), std::move(dv1), std::move(dh2), std::move(dv2), scale};
}

double joint_probability(const DetectorField& a, const DetectorField& b) {
    if (a.detector == b.detector) {
        throw std::invalid_argument("joint probability needs two distinct detectors");
    }
    double sum = std::norm(exact_correlation(a.signal, b.signal));
    sum += std::norm(exact_correlation(a.signal, b.idle));
    sum += std::norm(exact_correlation(a.idle, b.signal));
    sum += std::norm(exact_correlation(a.idle, b.idle));
    return sum;
}

CoincidenceTable coincidence_table(const AnalyzerFields& f) {
    CoincidenceTable table;
    table.p[static_cast<int>(DetectorPair::DH1_DH2)] = joint_probability(f.dh1, f.dh2);
    table.p[static_cast<int>(DetectorPair::DV1_DV2)] = joint_probability(f.dv1, f.dv2);
    table.p[static_cast<int>(DetectorPair::DH1_DV2)] = joint_probability(f.dh1, f.dv2);
    table.p[static_cast<int>(DetectorPair::DV1_DH2)] = joint_probability(f.dv1, f.dh2);
    table.p[static_cast<int>(DetectorPair::DH1_DV1)] = joint_probability(f.dh1, f.dv1);
    table.p[static_cast<int>(DetectorPair::DH2_DV2)] = joint_probability(f.dh2, f.dv2);
    table.scale = f.scale;
    return table;
}

Classification classify(const CoincidenceTable& t, double epsilon) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
        throw std::invalid_argument("epsilon must lie in (0, 1)");
    }
    double denom = t.scale;
    for (double value : t.p) {
        if (value > denom) denom = value;
    }
    std::array<bool, 6> high{};
    if (denom > 0.0) {
        for (std::size_t i = 0; i < t.p.size(); ++i) high[i] = t.p[i] / denom > epsilon;
    }
    const bool hh = high[static_cast<int>(DetectorPair::DH1_DH2)];
    const bool vv = high[static_cast<int>(DetectorPair::DV1_DV2)];
    const bool cross = high[static_cast<int>(DetectorPair::DH1_DV2)] &&
                       high[static_cast<int>(DetectorPair::DV1_DH2)];
    const bool no_cross = !high[static_cast<int>(DetectorPair::DH1_DV2)] &&
                          !high[static_cast<int>(DetectorPair::DV1_DH2)];
    const bool same = high[static_cast<int>(DetectorPair::DH1_DV1)] &&
                      high[static_cast<int>(DetectorPair::DH2_DV2)];
    const bool no_same = !high[static_cast<int>(DetectorPair::DH1_DV1)] &&
                         !high[static_cast<int>(DetectorPair::DH2_DV2)];
    if (!hh && !vv) {
        if (cross && no_same) return Classification::PsiMinus;
        if (same && no_cross) return Classification::PsiPlus;
        if (no_cross && no_same) return Classification::PhiClass;
    }
    return Classification::Ambiguous;
}

}  // namespace zpfbell
