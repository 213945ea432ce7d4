#include "qs2/volume.hpp"

#include "qs2/cochains.hpp"
#include "qs2/error.hpp"
#include "qs2/expr.hpp"
#include "qs2/homology.hpp"

#include <sstream>

namespace qs2 {

namespace {

void require_volume_domain(const Chain& c, const char* who)
{
    if (c.degree() != 2)
        throw ContractError(std::string(who) + " needs a degree 2 chain, got degree " + std::to_string(c.degree()));
    if (!(c.twist() == Automorphism::modular()))
        throw ContractError(std::string(who) + " needs twist q^2, got " + c.twist().lambda().to_string());
}

RatFunc basis_E(BasisIndex e) { return counit(partial(-1).eval_basis(e)); }
RatFunc basis_F(BasisIndex e) { return counit(partial(1).eval_basis(e)); }

} // namespace

RatFunc deriv_E(const AlgElem& a) { return counit(partial(-1).eval({a})); }
RatFunc deriv_F(const AlgElem& a) { return counit(partial(1).eval({a})); }

RatFunc phi(const Chain& c, PhiVariant variant)
{
    require_volume_domain(c, "phi");
    RatFunc total;
    switch (variant) {
    case PhiVariant::delta: {
        Tensor hit{kOne, BasisIndex{0, 1}, BasisIndex{0, -1}};
        total = c.coeff(hit);
        break;
    }
    case PhiVariant::efd:
        for (const auto& [t, v] : c.terms()) {
            if (t[0] != kOne)
                continue;
            RatFunc f = basis_F(t[1]);
            if (f.is_zero())
                continue;
            total += v * f * basis_E(t[2]);
        }
        break;
    case PhiVariant::cap: {
        static const Cochain vol = cup(partial(1), partial(-1));
        total = counit(as_element(cap(c, vol)));
        break;
    }
    }
    return total * RatFunc::q_power(-1);
}

RatFunc phi_pm(int sign, const Chain& c)
{
    require_volume_domain(c, "phi_pm");
    if (sign != 1 && sign != -1)
        throw ContractError("phi_pm sign must be +1 or -1");
    Cochain k = cup(partial(0), partial(sign));
    Chain zero = cap(c, k);
    TraceFunctional tr = make_trace(H0Label::x(-sign, 1), zero.twist());
    return RatFunc::q_power(-sign) * trace_eval(tr, as_element(zero));
}

RatFunc counter_term_unit_row(BasisIndex e)
{
    if (e.j != 0 || e.i == 0)
        return {};
    if (e.i == 1)
        return RatFunc::q_power(2) / (RatFunc::q_power(2) - RatFunc(1));
    int k = e.i;
    RatFunc v = RatFunc::q_power(k - 1) / (RatFunc(1) - RatFunc::q_power(2 * k - 2));
    return k % 2 == 0 ? v : -v;
}

namespace {

RatFunc unit_row(const AlgElem& a)
{
    RatFunc total;
    for (const auto& [e, c] : a.terms())
        if (e.j == 0)
            total += c * counter_term_unit_row(e);
    return total;
}

} // namespace

CounterTerm CounterTerm::standard()
{
    return {"standard", [](BasisIndex a, BasisIndex b) -> RatFunc {
                if (b == kOne)
                    return {};
                if (a == kOne)
                    return counter_term_unit_row(b);
                if (a.j + b.j != 0 || a.j < 0)
                    return {};
                RatFunc v = unit_row(basis_mul(a, b));
                if (a.j == 0)
                    return v / RatFunc(2);
                if (a == BasisIndex{0, 1} && b == BasisIndex{0, -1})
                    v -= RatFunc::q_power(-1);
                return v;
            }};
}

CounterTerm CounterTerm::three_point_restriction()
{
    CounterTerm s = standard();
    return three_point(s(kOne, {1, 0}), s(kOne, {2, 0}), s({1, 0}, {1, 0}));
}

CounterTerm CounterTerm::three_point(RatFunc one_x0, RatFunc one_x0_sq, RatFunc x0_x0)
{
    return {"three-point", [=](BasisIndex a, BasisIndex b) -> RatFunc {
                if (a == kOne && b == BasisIndex{1, 0})
                    return one_x0;
                if (a == kOne && b == BasisIndex{2, 0})
                    return one_x0_sq;
                if (a == BasisIndex{1, 0} && b == BasisIndex{1, 0})
                    return x0_x0;
                return {};
            }};
}

RatFunc eta(const Chain& c, const CounterTerm& phi2)
{
    require_volume_domain(c, "eta");
    RatFunc total;
    Chain bc = boundary(c);
    for (const auto& [t, v] : bc.terms()) {
        RatFunc w = phi2(t[0], t[1]);
        if (!w.is_zero())
            total += w * v;
    }
    return total;
}

RatFunc eta(const Chain& c)
{
    static const CounterTerm standard = CounterTerm::standard();
    return eta(c, standard);
}

RatFunc cyclic_cocycle(const Chain& c) { return phi(c, PhiVariant::delta) + eta(c); }

Functional2 functional_from_name(const std::string& name)
{
    static const std::pair<const char*, Functional2> names[] = {
        {"phi", Functional2::phi_delta},       {"phi-delta", Functional2::phi_delta},
        {"phi-efd", Functional2::phi_efd},     {"phi-cap", Functional2::phi_cap},
        {"phi-plus", Functional2::phi_plus},   {"phi-minus", Functional2::phi_minus},
        {"eta", Functional2::eta},             {"phi+eta", Functional2::phi_plus_eta},
        {"phi-plus-eta", Functional2::phi_plus_eta},
        {"eta-3pt", Functional2::eta_three_point},   {"phi+eta-3pt", Functional2::phi_plus_eta_three_point},
    };
    for (const auto& [n, f] : names)
        if (name == n)
            return f;
    throw ContractError("unknown functional '" + name +
                        "' (expected phi-delta, phi-efd, phi-cap, phi-plus, phi-minus, eta, phi+eta, eta-3pt, phi+eta-3pt)");
}

std::string functional_name(Functional2 f)
{
    switch (f) {
    case Functional2::phi_delta:
        return "phi-delta";
    case Functional2::phi_efd:
        return "phi-efd";
    case Functional2::phi_cap:
        return "phi-cap";
    case Functional2::phi_plus:
        return "phi-plus";
    case Functional2::phi_minus:
        return "phi-minus";
    case Functional2::eta:
        return "eta";
    case Functional2::phi_plus_eta:
        return "phi+eta";
    case Functional2::eta_three_point:
        return "eta-3pt";
    case Functional2::phi_plus_eta_three_point:
        return "phi+eta-3pt";
    }
    return "?";
}

RatFunc evaluate(Functional2 f, const Chain& c)
{
    static const CounterTerm three_point = CounterTerm::three_point_restriction();
    switch (f) {
    case Functional2::phi_delta:
        return phi(c, PhiVariant::delta);
    case Functional2::phi_efd:
        return phi(c, PhiVariant::efd);
    case Functional2::phi_cap:
        return phi(c, PhiVariant::cap);
    case Functional2::phi_plus:
        return phi_pm(1, c);
    case Functional2::phi_minus:
        return phi_pm(-1, c);
    case Functional2::eta:
        return eta(c);
    case Functional2::phi_plus_eta:
        return cyclic_cocycle(c);
    case Functional2::eta_three_point:
        return eta(c, three_point);
    case Functional2::phi_plus_eta_three_point:
        return phi(c, PhiVariant::delta) + eta(c, three_point);
    }
    throw ContractError("unknown functional");
}

std::string CyclicityReport::to_string() const
{
    std::ostringstream os;
    os << functional_name(functional) << ": " << (cyclic() ? "cyclic" : "not cyclic") << " on truncation (" << max_i
       << "," << max_j << "), " << chains_checked << " basis chains checked\n";
    for (const auto& v : violations) {
        Chain w = basis_chain(v.witness, Automorphism::modular());
        os << "  " << (v.kind == CyclicityViolation::Kind::t_invariance ? "f(t(c)) - f(c)" : "f(1,a,b)")
           << " = " << v.defect.to_string() << " at c = " << w.to_string() << "\n";
    }
    return os.str();
}

CyclicityReport is_cyclic(Functional2 f, int max_i, int max_j, std::size_t max_witnesses)
{
    CyclicityReport rep{f, max_i, max_j, 0, {}};
    const Automorphism mod = Automorphism::modular();
    std::size_t t_bad = 0, unit_bad = 0;
    for_each_tensor(3, max_i, max_j, [&](const Tensor& t) {
        Chain c = basis_chain(t, mod);
        RatFunc v = evaluate(f, c);
        RatFunc defect = evaluate(f, cyclic_t(c)) - v;
        ++rep.chains_checked;
        if (!defect.is_zero() && t_bad++ < max_witnesses)
            rep.violations.push_back({CyclicityViolation::Kind::t_invariance, t, defect});
        if (t[0] == kOne && !v.is_zero() && unit_bad++ < max_witnesses)
            rep.violations.push_back({CyclicityViolation::Kind::unit_slot, t, v});
    });
    return rep;
}

} // namespace qs2
