#include "zpfbell/hilbert.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zpfbell {

namespace {

/// Flips the spatial port, keeping polarization.
PortMode swap_port(PortMode m) { return static_cast<PortMode>(static_cast<int>(m) ^ 2); }

DetectorPair pair_of(PortMode lo, PortMode hi) {
    const int key = static_cast<int>(lo) * 4 + static_cast<int>(hi);
    switch (key) {
        case 0 * 4 + 1: return DetectorPair::DH1_DV1;
        case 0 * 4 + 2: return DetectorPair::DH1_DH2;
        case 0 * 4 + 3: return DetectorPair::DH1_DV2;
        case 1 * 4 + 2: return DetectorPair::DV1_DH2;
        case 1 * 4 + 3: return DetectorPair::DV1_DV2;
        case 2 * 4 + 3: return DetectorPair::DH2_DV2;
    }
    throw std::logic_error("not a detector pair");
}

}  // namespace

OperatorPolynomial& OperatorPolynomial::add_term(PortMode m1, PortMode m2, Complex coeff) {
    const Monomial key = m1 <= m2 ? Monomial{m1, m2} : Monomial{m2, m1};
    const auto it = terms_.try_emplace(key, Complex{}).first;
    it->second += coeff;
    if (it->second == Complex{}) terms_.erase(it);
    return *this;
}

Complex OperatorPolynomial::coefficient(PortMode m1, PortMode m2) const {
    const Monomial key = m1 <= m2 ? Monomial{m1, m2} : Monomial{m2, m1};
    const auto it = terms_.find(key);
    return it == terms_.end() ? Complex{} : it->second;
}

double OperatorPolynomial::norm() const {
    double sum = 0.0;
    for (const auto& [monomial, coeff] : terms_) {
        const double weight = monomial.first == monomial.second ? 2.0 : 1.0;
        sum += weight * std::norm(coeff);
    }
    return std::sqrt(sum);
}

OperatorPolynomial bell_polynomial(BellState state) {
    const double amp = 1.0 / std::numbers::sqrt2;
    OperatorPolynomial p;
    switch (state) {
        case BellState::PsiPlus:
            p.add_term(PortMode::Port1H, PortMode::Port2V, amp);
            p.add_term(PortMode::Port1V, PortMode::Port2H, amp);
            break;
        case BellState::PsiMinus:
            p.add_term(PortMode::Port1H, PortMode::Port2V, amp);
            p.add_term(PortMode::Port1V, PortMode::Port2H, -amp);
            break;
        case BellState::PhiPlus:
            p.add_term(PortMode::Port1H, PortMode::Port2H, amp);
            p.add_term(PortMode::Port1V, PortMode::Port2V, amp);
            break;
        case BellState::PhiMinus:
            p.add_term(PortMode::Port1H, PortMode::Port2H, amp);
            p.add_term(PortMode::Port1V, PortMode::Port2V, -amp);
            break;
    }
    return p;
}

OperatorPolynomial bs_transform(const OperatorPolynomial& p) {
    const double t = 1.0 / std::numbers::sqrt2;
    const Complex r{0.0, t};
    OperatorPolynomial out;
    for (const auto& [monomial, coeff] : p.terms()) {
        const std::array<std::pair<PortMode, Complex>, 2> first{
            std::pair<PortMode, Complex>{monomial.first, Complex{t, 0.0}},
            std::pair<PortMode, Complex>{swap_port(monomial.first), r}};
        const std::array<std::pair<PortMode, Complex>, 2> second{
            std::pair<PortMode, Complex>{monomial.second, Complex{t, 0.0}},
            std::pair<PortMode, Complex>{swap_port(monomial.second), r}};
        for (const auto& [m1, c1] : first) {
            for (const auto& [m2, c2] : second) {
                out.add_term(m1, m2, coeff * c1 * c2);
            }
        }
    }
    return out;
}

std::array<double, 6> coincidence_pattern(const OperatorPolynomial& p) {
    if (std::abs(p.norm() - 1.0) > 1e-9) {
        throw std::invalid_argument("polynomial is not normalized");
    }
    std::array<double, 6> out{};
    for (const auto& [monomial, coeff] : p.terms()) {
        if (monomial.first == monomial.second) continue;
        out[static_cast<int>(pair_of(monomial.first, monomial.second))] += std::norm(coeff);
    }
    return out;
}

}  // namespace zpfbell
