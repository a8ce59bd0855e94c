#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace zpfbell {

using Complex = std::complex<double>;

/// A labeled vacuum mode. Indices are dense within one registry.
struct ModeId {
    int index = -1;
    std::string label;
};

/// Ordered, append-only collection of vacuum modes with unique labels.
/// Every registry instance carries a distinct identity so that forms built
/// over different registries cannot be combined by accident.
class ModeRegistry {
public:
    ModeRegistry();

    /// Registers a fresh mode; throws std::invalid_argument on a duplicate label.
    ModeId register_mode(const std::string& label);

    std::size_t size() const { return modes_.size(); }
    const ModeId& mode(int index) const;
    /// Returns nullptr when no mode has this label.
    const ModeId* find(const std::string& label) const;
    std::uint64_t id() const { return id_; }

private:
    std::uint64_t id_;
    std::vector<ModeId> modes_;
    std::unordered_map<std::string, int> by_label_;
};

/// One draw of the vacuum field: a complex amplitude per registered mode.
struct VacuumSample {
    std::uint64_t registry_id = 0;
    std::vector<Complex> values;
};

/// A field amplitude that is linear in the vacuum amplitudes: sparse complex
/// coefficients over {alpha_m} and {alpha*_m} plus an additive constant.
/// An absent key is a zero coefficient.
class LinearForm {
public:
    LinearForm() = default;
    explicit LinearForm(const ModeRegistry& registry) : registry_id_(registry.id()) {}

    static LinearForm alpha(const ModeRegistry& registry, const ModeId& mode);
    static LinearForm alpha_conj(const ModeRegistry& registry, const ModeId& mode);

    LinearForm& add_alpha(const ModeId& mode, Complex coeff);
    LinearForm& add_conj(const ModeId& mode, Complex coeff);
    LinearForm& set_constant(Complex value);

    Complex alpha_coeff(int mode_index) const;
    Complex conj_coeff(int mode_index) const;
    Complex constant() const { return constant_; }

    const std::map<int, Complex>& alpha_coeffs() const { return alpha_; }
    const std::map<int, Complex>& conj_coeffs() const { return conj_; }

    std::uint64_t registry_id() const { return registry_id_; }
    bool empty() const { return alpha_.empty() && conj_.empty() && constant_ == Complex{}; }

private:
    friend LinearForm lf_combine(Complex, const LinearForm&, Complex, const LinearForm&);
    friend LinearForm conjugate_form(const LinearForm&);

    std::uint64_t registry_id_ = 0;
    std::map<int, Complex> alpha_;
    std::map<int, Complex> conj_;
    Complex constant_{};
};

/// Coefficient-wise c1*a + c2*b. Exact zero coefficients are pruned.
LinearForm lf_combine(Complex c1, const LinearForm& a, Complex c2, const LinearForm& b);

/// The complex-conjugate field of `a`: swaps the alpha/alpha* roles and
/// conjugates every coefficient.
LinearForm conjugate_form(const LinearForm& a);

/// Vacuum expectation of the product A*B (no conjugation). The vacuum
/// amplitudes are i.i.d. circular complex Gaussians with Re and Im variance
/// 1/4 each, so E[a_m a*_n] = delta_mn / 2 and E[a_m a_n] = 0; the result is
/// sum_m (A.alpha_m * B.conj_m + A.conj_m * B.alpha_m) / 2 plus the product
/// of the constants.
Complex exact_correlation(const LinearForm& a, const LinearForm& b);

/// The value of the form on one vacuum draw.
Complex evaluate(const LinearForm& a, const VacuumSample& sample);

inline LinearForm operator+(const LinearForm& a, const LinearForm& b) {
    return lf_combine(1.0, a, 1.0, b);
}
inline LinearForm operator-(const LinearForm& a, const LinearForm& b) {
    return lf_combine(1.0, a, -1.0, b);
}
inline LinearForm operator*(Complex c, const LinearForm& a) {
    return lf_combine(c, a, 0.0, a);
}

/// Deterministic vacuum sampler: sample(i) is a pure function of
/// (seed, i, mode index), so streams are reproducible under any chunking.
class VacuumSampler {
public:
    VacuumSampler(const ModeRegistry& registry, std::uint64_t seed);

    VacuumSample sample(std::uint64_t index) const;
    /// Fills an existing sample in place (hot path, no allocation).
    void sample_into(std::uint64_t index, VacuumSample& out) const;

    std::uint64_t seed() const { return seed_; }
    std::size_t mode_count() const { return mode_count_; }

private:
    std::uint64_t registry_id_;
    std::size_t mode_count_;
    std::uint64_t seed_;
};

/// Materializes `count` draws; count = 0 yields an empty vector.
std::vector<VacuumSample> sample_vacuum(const ModeRegistry& registry, std::uint64_t seed,
                                        std::size_t count);

}  // namespace zpfbell
