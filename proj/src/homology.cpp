#include "qs2/homology.hpp"

#include "qs2/error.hpp"
#include "qs2/expr.hpp"
#include "qs2/volume.hpp"

#include <cstdlib>
#include <sstream>

namespace qs2 {

namespace {

// i >= 2 when lambda = q^{2i}; otherwise nothing.
std::optional<int> high_x0_power(const Automorphism& twist)
{
    auto p = detect_q_power(twist.lambda());
    if (p && *p % 2 == 0 && *p / 2 >= 2)
        return *p / 2;
    return std::nullopt;
}

bool is_identity(const Automorphism& twist) { return twist.lambda().is_one(); }

} // namespace

std::string H0Label::to_string() const
{
    switch (kind) {
    case Kind::one:
        return "[1]";
    case Kind::x_power:
        return "[" + render_monomial({0, sign * power}) + "]";
    case Kind::x0:
        return "[x0]";
    case Kind::x0_power:
        return "[" + render_monomial({power, 0}) + "]";
    }
    return "[?]";
}

std::string to_string(const H0Coordinates& coords)
{
    if (coords.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [label, c] : coords) {
        if (!first)
            os << " + ";
        first = false;
        os << '(' << c.to_string() << ")*" << label.to_string();
    }
    return os.str();
}

TraceFunctional make_trace(H0Label label, const Automorphism& twist)
{
    auto fail = [&](const std::string& why) {
        throw ContractError("trace " + label.to_string() + " is not defined at twist " +
                            twist.lambda().to_string() + ": " + why);
    };
    switch (label.kind) {
    case H0Label::Kind::one:
        break;
    case H0Label::Kind::x_power:
        if (!is_identity(twist))
            fail("needs lambda = 1");
        if (label.power < 1 || (label.sign != 1 && label.sign != -1))
            fail("needs sign +-1 and j >= 1");
        break;
    case H0Label::Kind::x0:
        if (high_x0_power(twist))
            fail("lambda = q^{2i} with i >= 2");
        break;
    case H0Label::Kind::x0_power:
        if (label.power < 2 || high_x0_power(twist) != label.power)
            fail("needs i >= 2 and lambda = q^{2i}");
        break;
    }
    return {label, twist};
}

RatFunc trace_eval(const TraceFunctional& t, BasisIndex e)
{
    switch (t.label.kind) {
    case H0Label::Kind::one:
        return e == kOne ? RatFunc(1) : RatFunc();
    case H0Label::Kind::x_power:
        return (e.i == 0 && e.j == t.label.sign * t.label.power) ? RatFunc(1) : RatFunc();
    case H0Label::Kind::x0: {
        if (e.j != 0 || e.i == 0)
            return {};
        if (e.i == 1)
            return 1;
        // (-1)^{k+1} q^{1-k} (1 - lambda q^{-2}) / (1 - lambda q^{-2k})
        int k = e.i;
        const RatFunc& lambda = t.twist.lambda();
        RatFunc num = RatFunc(1) - lambda * RatFunc::q_power(-2);
        RatFunc den = RatFunc(1) - lambda * RatFunc::q_power(-2 * k);
        RatFunc v = RatFunc::q_power(1 - k) * num / den;
        return (k % 2 == 1) ? v : -v;
    }
    case H0Label::Kind::x0_power:
        return (e.i == t.label.power && e.j == 0) ? RatFunc(1) : RatFunc();
    }
    return {};
}

RatFunc trace_eval(const TraceFunctional& t, const AlgElem& a)
{
    RatFunc total;
    for (const auto& [idx, c] : a.terms()) {
        RatFunc v = trace_eval(t, idx);
        if (!v.is_zero())
            total += v * c;
    }
    return total;
}

std::string H0Basis::to_string() const
{
    std::string out = "[1]";
    if (x_powers)
        out += ", [x1^j], [xm1^j] (j >= 1)";
    if (x0)
        out += ", [x0]";
    if (x0_power)
        out += ", " + H0Label::x0_pow(*x0_power).to_string();
    return out;
}

H0Basis h0_basis(const Automorphism& twist)
{
    H0Basis b;
    b.x_powers = is_identity(twist);
    b.x0_power = high_x0_power(twist);
    b.x0 = !b.x0_power.has_value();
    return b;
}

H0Coordinates h0_reduce(const AlgElem& a, const Automorphism& twist)
{
    H0Coordinates out;
    auto put = [&](H0Label label) {
        RatFunc v = trace_eval(make_trace(label, twist), a);
        if (!v.is_zero())
            out[label] = v;
    };
    H0Basis basis = h0_basis(twist);
    put(H0Label::unit());
    if (basis.x_powers) {
        // only finitely many x-power traces can be nonzero on a
        for (const auto& [idx, c] : a.terms())
            if (idx.i == 0 && idx.j != 0)
                put(H0Label::x(idx.j > 0 ? 1 : -1, std::abs(idx.j)));
    }
    if (basis.x0)
        put(H0Label::x0());
    if (basis.x0_power)
        put(H0Label::x0_pow(*basis.x0_power));
    return out;
}

H0Coordinates h0_reduce(const Chain& c)
{
    if (c.degree() != 0)
        throw ContractError("h0_reduce needs a degree 0 chain");
    return h0_reduce(as_element(c), c.twist());
}

H0Coordinates h0_reduce_oracle(const AlgElem& a, const Automorphism& twist)
{
    // im b is spanned by e_{i+1,j} and (lambda-1) e_{0,j} for j != 0, and by
    //   r_m = A_m e_{m+2,0} + B_m e_{m+1,0},  m >= 0,
    //   A_m = (lambda - q^{2m+4}) q^{-2m-2},  B_m = (lambda - q^{2m+2}) q^{-2m-1}.
    const RatFunc& lambda = twist.lambda();
    auto A = [&](int m) { return (lambda - RatFunc::q_power(2 * m + 4)) * RatFunc::q_power(-2 * m - 2); };
    auto B = [&](int m) { return (lambda - RatFunc::q_power(2 * m + 2)) * RatFunc::q_power(-2 * m - 1); };

    // The surviving x0-power: the s >= 1 with A_{s-2} = 0, else s = 1.
    int s = 1;
    for (int m = 0; m < 64; ++m) {
        if (A(m).is_zero()) {
            s = m + 2;
            break;
        }
    }
    H0Label s_label = s == 1 ? H0Label::x0() : H0Label::x0_pow(s);

    H0Coordinates out;
    auto put = [&](H0Label label, const RatFunc& c) {
        auto [it, inserted] = out.try_emplace(label, c);
        if (!inserted)
            it->second += c;
        if (it->second.is_zero())
            out.erase(it);
    };
    for (const auto& [idx, c] : a.terms()) {
        if (idx.j != 0) {
            if (idx.i == 0 && lambda.is_one())
                put(H0Label::x(idx.j > 0 ? 1 : -1, std::abs(idx.j)), c);
            continue;
        }
        if (idx.i == 0) {
            put(H0Label::unit(), c);
            continue;
        }
        // Below s: A_{s-2} = 0 puts e_{s-1} in im b, and r_{k-1} with
        // B_{k-1} != 0 carries that down to every e_k, 1 <= k < s.
        if (idx.i < s)
            continue;
        // Above s: e_k = -B_{k-2}/A_{k-2} e_{k-1} modulo im b.
        RatFunc v = c;
        for (int k = idx.i; k > s && !v.is_zero(); --k)
            v *= -B(k - 2) / A(k - 2);
        if (!v.is_zero())
            put(s_label, v);
    }
    return out;
}

AlgElem as_element(const Chain& c)
{
    if (c.degree() != 0)
        throw ContractError("expected a degree 0 chain");
    AlgElem a;
    for (const auto& [t, v] : c.terms())
        a.add_term(t[0], v);
    return a;
}

Chain fundamental_class()
{
    struct Row {
        const char* coeff;
        const char* a0;
        const char* a1;
        const char* a2;
    };
    static const Row rows[] = {
        {"2", "x1", "xm1", "x0"},
        {"-2*q^2", "x1", "x0", "xm1"},
        {"2*q^-2", "xm1", "x0", "x1"},
        {"-2", "xm1", "x1", "x0"},
        {"q", "1", "x1", "xm1"},
        {"-q^-1", "1", "xm1", "x1"},
        {"q - q^-1", "1", "x0", "x0"},
        {"2", "x0", "x1", "xm1"},
        {"-2", "x0", "xm1", "x1"},
        {"2*(q^2 - q^-2)", "x0", "x0", "x0"},
    };
    static const Chain dA = [] {
        Chain c(2, Automorphism::modular());
        for (const auto& r : rows)
            c += expand_tensor({parse(r.a0), parse(r.a1), parse(r.a2)}, Automorphism::modular()) *
                 parse_scalar(r.coeff);
        return c;
    }();
    return dA;
}

RatFunc h2_class(const Chain& c)
{
    if (c.degree() != 2)
        throw ContractError("h2_class needs a degree 2 chain");
    if (!(c.twist() == Automorphism::modular()))
        throw ContractError("h2_class needs twist q^2, got " + c.twist().lambda().to_string());
    Chain bc = boundary(c);
    if (!bc.is_zero())
        throw ContractError("h2_class needs a cycle; boundary is " + bc.to_string());
    return phi(c, PhiVariant::delta);
}

} // namespace qs2
