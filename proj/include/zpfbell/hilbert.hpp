#pragma once

#include <array>
#include <map>
#include <utility>

#include "zpfbell/analyzer.hpp"
#include "zpfbell/core.hpp"
#include "zpfbell/source.hpp"

namespace zpfbell {

/// Creation-operator modes around the balanced splitter: spatial port 1 or 2
/// crossed with polarization H or V. Port 1 feeds detectors DH1/DV1, port 2
/// feeds DH2/DV2.
enum class PortMode : int { Port1H = 0, Port1V = 1, Port2H = 2, Port2V = 3 };

/// A two-photon state as a polynomial in commuting creation operators:
/// unordered mode pairs mapped to complex coefficients.
class OperatorPolynomial {
public:
    using Monomial = std::pair<PortMode, PortMode>;

    /// Accumulates coeff onto the unordered (m1, m2) monomial; terms that
    /// cancel to exactly zero are dropped.
    OperatorPolynomial& add_term(PortMode m1, PortMode m2, Complex coeff);

    Complex coefficient(PortMode m1, PortMode m2) const;
    const std::map<Monomial, Complex>& terms() const { return terms_; }

    /// State norm: sqrt of the sum of |coeff|^2 with bosonic weight 2 on
    /// double-occupancy monomials.
    double norm() const;

private:
    std::map<Monomial, Complex> terms_;
};

/// The two-photon polynomial of a Bell state (beam 1 on port 1, beam 2 on
/// port 2).
OperatorPolynomial bell_polynomial(BellState state);

/// Balanced-splitter substitution port1 -> (port1 + i port2)/sqrt(2) and
/// port2 -> (port2 + i port1)/sqrt(2) with polarization untouched; expands,
/// collects like monomials, prunes exact zeros.
OperatorPolynomial bs_transform(const OperatorPolynomial& p);

/// Probability of each unordered pair of distinct detectors firing, indexed
/// by DetectorPair. A double-occupancy monomial puts both photons on one
/// detector and feeds no pair. Requires a normalized polynomial
/// (std::invalid_argument otherwise).
std::array<double, 6> coincidence_pattern(const OperatorPolynomial& p);

}  // namespace zpfbell
