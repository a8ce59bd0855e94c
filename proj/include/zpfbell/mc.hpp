#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "zpfbell/analyzer.hpp"
#include "zpfbell/core.hpp"
#include "zpfbell/source.hpp"

namespace zpfbell {

/// Sample-mean estimate of a correlation together with its standard error.
struct McEstimate {
    Complex mean{};
    double standard_error = 0.0;
    std::uint64_t n = 0;
};

/// Monte Carlo estimate of exact_correlation(a, b): the sample mean of
/// evaluate(a, s) * evaluate(b, s) over n vacuum draws. The stream is
/// consumed in fixed-size blocks whose partial sums are merged in block
/// order, so the result is bit-identical for every worker count.
/// Throws std::invalid_argument for n < 2 or foreign forms.
McEstimate mc_correlation(const ModeRegistry& registry, const LinearForm& a, const LinearForm& b,
                          std::uint64_t seed, std::uint64_t n, unsigned workers = 1);

/// Coincidence table estimated from one shared sample stream. Each entry is
/// the sum over the four component pairs of |sample-mean correlation|^2; its
/// standard error combines per-component delta-method errors
/// max(2|mean| se, se^2) in quadrature.
struct McCoincidenceTable {
    CoincidenceTable table;
    std::array<double, 6> standard_error{};
    std::uint64_t n = 0;
};

McCoincidenceTable mc_coincidence_table(const EncoderSettings& settings, const SourceConfig& cfg,
                                        std::uint64_t seed, std::uint64_t n, unsigned workers = 1);

struct ConvergenceRow {
    std::uint64_t n = 0;
    Complex estimate{};
    double standard_error = 0.0;
};

/// Standard-error trace of the DH1/DV2 signal correlation across the sample
/// counts in n_list.
struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
};

/// One row per entry of n_list (nonempty, strictly ascending, each >= 2),
/// all sharing the same stream prefix.
ConvergenceReport convergence_report(const EncoderSettings& settings, const SourceConfig& cfg,
                                     std::uint64_t seed, const std::vector<std::uint64_t>& n_list);

}  // namespace zpfbell
