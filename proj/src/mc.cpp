#include "zpfbell/mc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <utility>

#include "zpfbell/experiment.hpp"

namespace zpfbell {

namespace {

constexpr std::uint64_t kBlockSize = 4096;

/// Coefficients flattened out of the std::map for the per-sample hot loop.
struct CompiledForm {
    std::vector<std::pair<int, Complex>> alpha;
    std::vector<std::pair<int, Complex>> conj;
    Complex constant{};
};

CompiledForm compile(const LinearForm& form) {
    CompiledForm out;
    out.alpha.assign(form.alpha_coeffs().begin(), form.alpha_coeffs().end());
    out.conj.assign(form.conj_coeffs().begin(), form.conj_coeffs().end());
    out.constant = form.constant();
    return out;
}

Complex eval(const CompiledForm& form, const VacuumSample& sample) {
    Complex value = form.constant;
    for (const auto& [index, coeff] : form.alpha) {
        value += coeff * sample.values[static_cast<std::size_t>(index)];
    }
    for (const auto& [index, coeff] : form.conj) {
        value += coeff * std::conj(sample.values[static_cast<std::size_t>(index)]);
    }
    return value;
}

/// Running sums for one averaged complex quantity.
struct Accumulator {
    Complex sum{};
    double sum_re2 = 0.0;
    double sum_im2 = 0.0;

    void add(Complex value) {
        sum += value;
        sum_re2 += value.real() * value.real();
        sum_im2 += value.imag() * value.imag();
    }
    void merge(const Accumulator& other) {
        sum += other.sum;
        sum_re2 += other.sum_re2;
        sum_im2 += other.sum_im2;
    }
};

McEstimate finish(const Accumulator& acc, std::uint64_t n) {
    const double dn = static_cast<double>(n);
    const Complex mean = acc.sum / dn;
    const double var_re =
        std::max(0.0, (acc.sum_re2 - dn * mean.real() * mean.real()) / (dn - 1.0));
    const double var_im =
        std::max(0.0, (acc.sum_im2 - dn * mean.imag() * mean.imag()) / (dn - 1.0));
    return {mean, std::sqrt((var_re + var_im) / dn), n};
}

/// Runs `per_sample` over the stream in fixed blocks and merges the per-block
/// accumulator arrays in block order. Workers own disjoint block subsets, so
/// the merged result never depends on the worker count.
template <std::size_t N, typename PerSample>
std::array<Accumulator, N> run_blocks(const ModeRegistry& registry, std::uint64_t seed,
                                      std::uint64_t n, unsigned workers,
                                      const PerSample& per_sample) {
    const std::uint64_t block_count = (n + kBlockSize - 1) / kBlockSize;
    std::vector<std::array<Accumulator, N>> blocks(block_count);
    const VacuumSampler sampler(registry, seed);
    auto run_strided = [&](std::uint64_t first_block, std::uint64_t stride) {
        VacuumSample sample;
        for (std::uint64_t b = first_block; b < block_count; b += stride) {
            const std::uint64_t begin = b * kBlockSize;
            const std::uint64_t end = std::min(n, begin + kBlockSize);
            for (std::uint64_t i = begin; i < end; ++i) {
                sampler.sample_into(i, sample);
                per_sample(sample, blocks[b]);
            }
        }
    };
    if (workers <= 1) {
        run_strided(0, 1);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            threads.emplace_back(run_strided, w, workers);
        }
        for (auto& thread : threads) thread.join();
    }
    std::array<Accumulator, N> merged{};
    for (const auto& block : blocks) {
        for (std::size_t k = 0; k < N; ++k) merged[k].merge(block[k]);
    }
    return merged;
}

void require_sample_count(std::uint64_t n) {
    if (n < 2) {
        throw std::invalid_argument("need at least two samples");
    }
}

}  // namespace

McEstimate mc_correlation(const ModeRegistry& registry, const LinearForm& a, const LinearForm& b,
                          std::uint64_t seed, std::uint64_t n, unsigned workers) {
    require_sample_count(n);
    if (a.registry_id() != registry.id() || b.registry_id() != registry.id()) {
        throw std::invalid_argument("forms belong to a different mode registry");
    }
    const CompiledForm ca = compile(a);
    const CompiledForm cb = compile(b);
    const auto merged = run_blocks<1>(
        registry, seed, n, workers,
        [&](const VacuumSample& sample, std::array<Accumulator, 1>& acc) {
            acc[0].add(eval(ca, sample) * eval(cb, sample));
        });
    return finish(merged[0], n);
}

McCoincidenceTable mc_coincidence_table(const EncoderSettings& settings, const SourceConfig& cfg,
                                        std::uint64_t seed, std::uint64_t n, unsigned workers) {
    require_sample_count(n);
    const Experiment ex = build_experiment(cfg, settings);
    const std::array<const DetectorField*, 4> detectors{&ex.fields.dh1, &ex.fields.dv1,
                                                        &ex.fields.dh2, &ex.fields.dv2};
    std::array<CompiledForm, 4> signals;
    std::array<CompiledForm, 4> idles;
    for (std::size_t d = 0; d < 4; ++d) {
        signals[d] = compile(detectors[d]->signal);
        idles[d] = compile(detectors[d]->idle);
    }
    // Detector indices (dh1, dv1, dh2, dv2) for each pair, in table order.
    constexpr std::array<std::pair<int, int>, 6> kPairs{
        std::pair{0, 2}, {1, 3}, {0, 3}, {1, 2}, {0, 1}, {2, 3}};

    const auto merged = run_blocks<24>(
        ex.registry, seed, n, workers,
        [&](const VacuumSample& sample, std::array<Accumulator, 24>& acc) {
            std::array<Complex, 4> sig;
            std::array<Complex, 4> idl;
            for (std::size_t d = 0; d < 4; ++d) {
                sig[d] = eval(signals[d], sample);
                idl[d] = eval(idles[d], sample);
            }
            for (std::size_t p = 0; p < 6; ++p) {
                const auto [x, y] = kPairs[p];
                acc[4 * p + 0].add(sig[x] * sig[y]);
                acc[4 * p + 1].add(sig[x] * idl[y]);
                acc[4 * p + 2].add(idl[x] * sig[y]);
                acc[4 * p + 3].add(idl[x] * idl[y]);
            }
        });

    McCoincidenceTable out;
    out.n = n;
    out.table.scale = ex.fields.scale;
    for (std::size_t p = 0; p < 6; ++p) {
        double entry = 0.0;
        double var = 0.0;
        for (std::size_t c = 0; c < 4; ++c) {
            const McEstimate est = finish(merged[4 * p + c], n);
            const double magnitude = std::abs(est.mean);
            entry += std::norm(est.mean);
            const double se = std::max(2.0 * magnitude * est.standard_error,
                                       est.standard_error * est.standard_error);
            var += se * se;
        }
        out.table.p[p] = entry;
        out.standard_error[p] = std::sqrt(var);
    }
    return out;
}

ConvergenceReport convergence_report(const EncoderSettings& settings, const SourceConfig& cfg,
                                     std::uint64_t seed, const std::vector<std::uint64_t>& n_list) {
    if (n_list.empty()) {
        throw std::invalid_argument("the convergence trace needs at least one sample count");
    }
    std::uint64_t previous = 0;
    for (std::uint64_t n : n_list) {
        require_sample_count(n);
        if (n <= previous) {
            throw std::invalid_argument("sample counts must be strictly ascending");
        }
        previous = n;
    }
    const Experiment ex = build_experiment(cfg, settings);
    ConvergenceReport report;
    report.rows.reserve(n_list.size());
    for (std::uint64_t n : n_list) {
        const McEstimate est =
            mc_correlation(ex.registry, ex.fields.dh1.signal, ex.fields.dv2.signal, seed, n);
        report.rows.push_back({n, est.mean, est.standard_error});
    }
    return report;
}

}  // namespace zpfbell
