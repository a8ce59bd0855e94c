#include "zpfbell/core.hpp"

#include <atomic>
#include <stdexcept>

#include "zpfbell/rng.hpp"

namespace zpfbell {

namespace {

std::uint64_t next_registry_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1);
}

void require_same_registry(const LinearForm& a, const LinearForm& b) {
    if (a.registry_id() != b.registry_id()) {
        throw std::invalid_argument("linear forms belong to different mode registries");
    }
}

void insert_scaled(std::map<int, Complex>& out, const std::map<int, Complex>& in, Complex scale) {
    if (scale == Complex{}) {
        return;
    }
    for (const auto& [index, coeff] : in) {
        out[index] += scale * coeff;
    }
}

void prune_zeros(std::map<int, Complex>& coeffs) {
    for (auto it = coeffs.begin(); it != coeffs.end();) {
        it = (it->second == Complex{}) ? coeffs.erase(it) : std::next(it);
    }
}

}  // namespace

ModeRegistry::ModeRegistry() : id_(next_registry_id()) {}

ModeId ModeRegistry::register_mode(const std::string& label) {
    if (by_label_.contains(label)) {
        throw std::invalid_argument("mode label already registered: " + label);
    }
    const int index = static_cast<int>(modes_.size());
    modes_.push_back(ModeId{index, label});
    by_label_.emplace(label, index);
    return modes_.back();
}

const ModeId& ModeRegistry::mode(int index) const {
    if (index < 0 || static_cast<std::size_t>(index) >= modes_.size()) {
        throw std::invalid_argument("mode index out of range");
    }
    return modes_[static_cast<std::size_t>(index)];
}

const ModeId* ModeRegistry::find(const std::string& label) const {
    const auto it = by_label_.find(label);
    return it == by_label_.end() ? nullptr : &modes_[static_cast<std::size_t>(it->second)];
}

LinearForm LinearForm::alpha(const ModeRegistry& registry, const ModeId& mode) {
    LinearForm form(registry);
    form.add_alpha(mode, 1.0);
    return form;
}

LinearForm LinearForm::alpha_conj(const ModeRegistry& registry, const ModeId& mode) {
    LinearForm form(registry);
    form.add_conj(mode, 1.0);
    return form;
}

LinearForm& LinearForm::add_alpha(const ModeId& mode, Complex coeff) {
    alpha_[mode.index] += coeff;
    return *this;
}

LinearForm& LinearForm::add_conj(const ModeId& mode, Complex coeff) {
    conj_[mode.index] += coeff;
    return *this;
}

LinearForm& LinearForm::set_constant(Complex value) {
    constant_ = value;
    return *this;
}

Complex LinearForm::alpha_coeff(int mode_index) const {
    const auto it = alpha_.find(mode_index);
    return it == alpha_.end() ? Complex{} : it->second;
}

Complex LinearForm::conj_coeff(int mode_index) const {
    const auto it = conj_.find(mode_index);
    return it == conj_.end() ? Complex{} : it->second;
}

LinearForm lf_combine(Complex c1, const LinearForm& a, Complex c2, const LinearForm& b) {
    require_same_registry(a, b);
    LinearForm out;
    out.registry_id_ = a.registry_id_;
    insert_scaled(out.alpha_, a.alpha_, c1);
    insert_scaled(out.alpha_, b.alpha_, c2);
    insert_scaled(out.conj_, a.conj_, c1);
    insert_scaled(out.conj_, b.conj_, c2);
    prune_zeros(out.alpha_);
    prune_zeros(out.conj_);
    out.constant_ = c1 * a.constant_ + c2 * b.constant_;
    return out;
}

LinearForm conjugate_form(const LinearForm& a) {
    LinearForm out;
    out.registry_id_ = a.registry_id_;
    for (const auto& [index, coeff] : a.conj_) {
        out.alpha_[index] = std::conj(coeff);
    }
    for (const auto& [index, coeff] : a.alpha_) {
        out.conj_[index] = std::conj(coeff);
    }
    out.constant_ = std::conj(a.constant_);
    return out;
}

Complex exact_correlation(const LinearForm& a, const LinearForm& b) {
    require_same_registry(a, b);
    // Accumulate mode by mode, in ascending index order, with a fixed
    // intra-mode term order. Swapping the alpha/alpha* roles then mirrors
    // each per-mode contribution exactly, which keeps the algebraic pair
    // symmetries of downstream tables bit-exact.
    Complex sum{};
    auto alpha_it = a.alpha_coeffs().begin();
    auto conj_it = a.conj_coeffs().begin();
    const auto alpha_end = a.alpha_coeffs().end();
    const auto conj_end = a.conj_coeffs().end();
    while (alpha_it != alpha_end || conj_it != conj_end) {
        int index;
        if (conj_it == conj_end || (alpha_it != alpha_end && alpha_it->first < conj_it->first)) {
            index = alpha_it->first;
        } else {
            index = conj_it->first;
        }
        Complex term{};
        if (alpha_it != alpha_end && alpha_it->first == index) {
            term += alpha_it->second * b.conj_coeff(index);
            ++alpha_it;
        }
        if (conj_it != conj_end && conj_it->first == index) {
            term += conj_it->second * b.alpha_coeff(index);
            ++conj_it;
        }
        sum += term;
    }
    return 0.5 * sum + a.constant() * b.constant();
}

Complex evaluate(const LinearForm& a, const VacuumSample& sample) {
    if (a.registry_id() != sample.registry_id) {
        throw std::invalid_argument("vacuum sample drawn over a different registry");
    }
    Complex value = a.constant();
    for (const auto& [index, coeff] : a.alpha_coeffs()) {
        if (static_cast<std::size_t>(index) >= sample.values.size()) {
            throw std::invalid_argument("vacuum sample predates a registered mode");
        }
        value += coeff * sample.values[static_cast<std::size_t>(index)];
    }
    for (const auto& [index, coeff] : a.conj_coeffs()) {
        if (static_cast<std::size_t>(index) >= sample.values.size()) {
            throw std::invalid_argument("vacuum sample predates a registered mode");
        }
        value += coeff * std::conj(sample.values[static_cast<std::size_t>(index)]);
    }
    return value;
}

VacuumSampler::VacuumSampler(const ModeRegistry& registry, std::uint64_t seed)
    : registry_id_(registry.id()), mode_count_(registry.size()), seed_(seed) {}

VacuumSample VacuumSampler::sample(std::uint64_t index) const {
    VacuumSample out;
    sample_into(index, out);
    return out;
}

void VacuumSampler::sample_into(std::uint64_t index, VacuumSample& out) const {
    out.registry_id = registry_id_;
    out.values.resize(mode_count_);
    for (std::size_t m = 0; m < mode_count_; ++m) {
        const auto z = normal_pair(seed_, index, static_cast<std::uint32_t>(m));
        // Re and Im each have variance 1/4, so E[|alpha|^2] = 1/2.
        out.values[m] = Complex{0.5 * z[0], 0.5 * z[1]};
    }
}

std::vector<VacuumSample> sample_vacuum(const ModeRegistry& registry, std::uint64_t seed,
                                        std::size_t count) {
    const VacuumSampler sampler(registry, seed);
    std::vector<VacuumSample> samples;
    samples.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        samples.push_back(sampler.sample(i));
    }
    return samples;
}

}  // namespace zpfbell
