#pragma once

#include "qs2/complex.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qs2 {

/**
 * Label of a basis class of H_0 with coefficients twisted by sigma_lambda:
 *   [1];  [x_{+-1}^j], j >= 1 (lambda = 1 only);
 *   [x0]  (lambda != q^{2i} for i >= 2, lambda = q^2 included);
 *   [x0^i], i >= 2 (lambda = q^{2i} only).
 */
struct H0Label {
    enum class Kind { one, x_power, x0, x0_power };
    Kind kind = Kind::one;
    int sign = 0;   // x_power: +1 or -1
    int power = 0;  // x_power: j; x0_power: i

    static H0Label unit() { return {}; }
    static H0Label x(int sign, int j) { return {Kind::x_power, sign, j}; }
    static H0Label x0() { return {Kind::x0, 0, 1}; }
    static H0Label x0_pow(int i) { return {Kind::x0_power, 0, i}; }

    friend auto operator<=>(const H0Label&, const H0Label&) = default;

    std::string to_string() const;
};

using H0Coordinates = std::map<H0Label, RatFunc>;

std::string to_string(const H0Coordinates& coords);

/// Twisted trace dual to one H_0 basis class. Construct through make_trace.
struct TraceFunctional {
    H0Label label;
    Automorphism twist;
};

// Throws ContractError if the label is not a basis class for this twist.
TraceFunctional make_trace(H0Label label, const Automorphism& twist);

RatFunc trace_eval(const TraceFunctional& t, const AlgElem& a);
RatFunc trace_eval(const TraceFunctional& t, BasisIndex e);

// Which basis classes exist for a twist. The x_{+-1}^j family is infinite;
// `x_powers` flags its presence.
struct H0Basis {
    bool x_powers = false;
    bool x0 = false;
    std::optional<int> x0_power;

    std::string to_string() const;
};

H0Basis h0_basis(const Automorphism& twist);

// Coordinates of [a] read off with the dual twisted traces; zeros omitted.
H0Coordinates h0_reduce(const AlgElem& a, const Automorphism& twist);
// A degree 0 chain, using its own twist.
H0Coordinates h0_reduce(const Chain& c);

// Same coordinates, computed by rewriting a modulo the spanning set of im b.
H0Coordinates h0_reduce_oracle(const AlgElem& a, const Automorphism& twist);

// Collapses a degree 0 chain into the algebra element it represents.
AlgElem as_element(const Chain& c);

// The explicit degree 2 cycle representing the fundamental class, twist q^2.
Chain fundamental_class();

// Coordinate of a degree 2 cycle at twist q^2 against [dA].
// Throws ContractError for the wrong degree or twist or a non-cycle.
RatFunc h2_class(const Chain& c);

} // namespace qs2
