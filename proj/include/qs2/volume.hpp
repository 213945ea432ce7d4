#pragma once

#include "qs2/complex.hpp"

#include <functional>
#include <string>
#include <vector>

namespace qs2 {

// E(a) = eps(d_{-1}(a)), F(a) = eps(d_1(a)); untwisted derivations A -> Q(q).
RatFunc deriv_E(const AlgElem& a);
RatFunc deriv_F(const AlgElem& a);

enum class PhiVariant { delta, efd, cap };

/**
 * The volume functional on degree 2 chains at twist q^2, three ways:
 *  - delta: q^{-1} times the coefficient of 1 (x) x1 (x) xm1;
 *  - efd:   q^{-1} eps(a_0) F(a_1) E(a_2);
 *  - cap:   q^{-1} eps applied to c cap (d1 cup dm1).
 * Throws ContractError for any other degree or twist.
 */
RatFunc phi(const Chain& c, PhiVariant variant);

// q^{-+1} times the trace dual to [x_{-+1}] applied to c cap (d0 cup d_{+-1}).
// No leading sign: with one, phi_-(dA) would be -1.
RatFunc phi_pm(int sign, const Chain& c);

/**
 * Bilinear functional phi_2 on C_1 given on basis pairs; eta = phi_2 o b.
 *
 * standard() is the counter-term making phi + eta cyclic:
 *   phi_2(a, 1) = 0,  phi_2(1, e) = R(e),
 *   phi_2(x0^i, x0^m) = R(x0^{i+m}) / 2            (i, m >= 1),
 *   phi_2(e_{il}, e_{m,-l}) = R(e_{il} e_{m,-l}) - q^{-1} [e_{il} (x) e_{m,-l} = x1 (x) xm1]   (l >= 1),
 * zero elsewhere, where R vanishes off the x0 powers and
 *   R(1) = 0,  R(x0) = q^2/(q^2-1),  R(x0^k) = (-1)^k q^{k-1}/(1-q^{2k-2})  (k >= 2).
 * It agrees with three_point(1/(1-q^-2), -1/(q-q^-1), -1/(2(q-q^-1))) on the
 * pairs (1,x0), (1,x0^2), (x0,x0) and with zero on (x1,xm1), (xm1,x1).
 */
class CounterTerm {
public:
    using Fn = std::function<RatFunc(BasisIndex, BasisIndex)>;

    CounterTerm(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

    RatFunc operator()(BasisIndex a, BasisIndex b) const { return fn_(a, b); }
    const std::string& name() const { return name_; }

    static CounterTerm standard();
    // Supported on (1, x0), (1, x0^2), (x0, x0) only.
    static CounterTerm three_point(RatFunc one_x0, RatFunc one_x0_sq, RatFunc x0_x0);
    // three_point with the values standard() takes on those pairs.
    static CounterTerm three_point_restriction();

private:
    std::string name_;
    Fn fn_;
};

// R above: the values phi_2(1, e) of the standard counter-term.
RatFunc counter_term_unit_row(BasisIndex e);

// eta = phi_2 o b for the given counter-term.
RatFunc eta(const Chain& c, const CounterTerm& phi2);
RatFunc eta(const Chain& c);

// phi + eta.
RatFunc cyclic_cocycle(const Chain& c);

// The *_three_point entries use the three-point counter-term with values
// 1/(1-q^-2), -1/(q-q^-1), -1/(2(q-q^-1)); phi + eta is then not cyclic.
enum class Functional2 {
    phi_delta,
    phi_efd,
    phi_cap,
    phi_plus,
    phi_minus,
    eta,
    phi_plus_eta,
    eta_three_point,
    phi_plus_eta_three_point,
};

Functional2 functional_from_name(const std::string& name);
std::string functional_name(Functional2 f);
RatFunc evaluate(Functional2 f, const Chain& c);

struct CyclicityViolation {
    enum class Kind { t_invariance, unit_slot };
    Kind kind;
    Tensor witness;
    // f(t(c)) - f(c) for t_invariance, f(c) for unit_slot.
    RatFunc defect;
};

struct CyclicityReport {
    Functional2 functional;
    int max_i = 0, max_j = 0;
    std::size_t chains_checked = 0;
    std::vector<CyclicityViolation> violations;

    bool cyclic() const { return violations.empty(); }
    std::string to_string() const;
};

/**
 * Checks f o t == f on every basis 2-chain of the box and f(1, a, b) == 0
 * on every 1 (x) e (x) e' of the box. At most `max_witnesses` violations of
 * each kind are recorded.
 */
CyclicityReport is_cyclic(Functional2 f, int max_i, int max_j, std::size_t max_witnesses = 8);

} // namespace qs2
