#include "qs2/complex.hpp"

#include "qs2/cochains.hpp"
#include "qs2/error.hpp"
#include "qs2/expr.hpp"

#include <sstream>

namespace qs2 {

Chain::Chain(int degree, Automorphism twist) : degree_(degree), twist_(std::move(twist))
{
    if (degree < 0)
        throw ContractError("chain degree must be nonnegative");
}

RatFunc Chain::coeff(const Tensor& t) const
{
    auto it = terms_.find(t);
    return it == terms_.end() ? RatFunc() : it->second;
}

void Chain::add_term(Tensor t, RatFunc c)
{
    if (static_cast<int>(t.size()) != degree_ + 1)
        throw ContractError("tensor of length " + std::to_string(t.size()) + " in a degree " +
                            std::to_string(degree_) + " chain");
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace(std::move(t), std::move(c));
    if (!inserted) {
        it->second += c;  // c is untouched when try_emplace does not insert
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

void Chain::check_compatible(const Chain& o) const
{
    if (o.degree_ != degree_)
        throw ContractError("chain degrees differ: " + std::to_string(degree_) + " vs " + std::to_string(o.degree_));
    if (!(o.twist_ == twist_))
        throw ContractError("chain twists differ: " + twist_.lambda().to_string() + " vs " +
                            o.twist_.lambda().to_string());
}

void Chain::add_scaled(const Chain& o, const RatFunc& c)
{
    check_compatible(o);
    for (const auto& [t, v] : o.terms_)
        add_term(t, v * c);
}

Chain& Chain::operator+=(const Chain& o)
{
    add_scaled(o, 1);
    return *this;
}

Chain& Chain::operator-=(const Chain& o)
{
    add_scaled(o, -1);
    return *this;
}

Chain& Chain::operator*=(const RatFunc& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [t, v] : terms_)
        v *= c;
    return *this;
}

std::string Chain::to_string() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, c] : terms_) {
        if (!first)
            os << " + ";
        first = false;
        os << '(' << c.to_string() << ")*";
        for (std::size_t k = 0; k < t.size(); ++k) {
            if (k)
                os << " ⊗ ";
            std::string m = render_monomial(t[k]);
            os << (m.empty() ? "1" : m);
        }
    }
    return os.str();
}

Chain expand_tensor(std::span<const AlgElem> factors, const Automorphism& twist)
{
    if (factors.empty())
        throw ContractError("expand_tensor needs at least one factor");
    Chain out(static_cast<int>(factors.size()) - 1, twist);
    // Odometer over the supports of all factors.
    std::vector<AlgElem::Terms::const_iterator> pos;
    for (const auto& f : factors) {
        if (f.is_zero())
            return out;
        pos.push_back(f.terms().begin());
    }
    for (;;) {
        Tensor t;
        RatFunc c(1);
        for (std::size_t k = 0; k < factors.size(); ++k) {
            t.push_back(pos[k]->first);
            c *= pos[k]->second;
        }
        out.add_term(t, c);
        std::size_t k = factors.size();
        while (k-- > 0) {
            if (++pos[k] != factors[k].terms().end())
                break;
            pos[k] = factors[k].terms().begin();
        }
        if (k == static_cast<std::size_t>(-1))
            break;
    }
    return out;
}

Chain expand_tensor(std::initializer_list<AlgElem> factors, const Automorphism& twist)
{
    return expand_tensor(std::span<const AlgElem>(factors.begin(), factors.size()), twist);
}

Chain basis_chain(const Tensor& t, const Automorphism& twist)
{
    Chain c(static_cast<int>(t.size()) - 1, twist);
    c.add_term(t, 1);
    return c;
}

Chain boundary(const Chain& c)
{
    int n = c.degree();
    if (n < 1)
        throw ContractError("boundary of a degree 0 chain");
    Chain out(n - 1, c.twist());
    auto un = static_cast<std::size_t>(n);
    for (const auto& [t, coeff] : c.terms()) {
        for (std::size_t i = 0; i < un; ++i) {
            RatFunc s = coeff;
            if (i % 2 == 1)
                s.negate();
            for (const auto& [idx, v] : basis_mul(t[i], t[i + 1]).terms()) {
                Tensor r;
                for (std::size_t k = 0; k < i; ++k)
                    r.push_back(t[k]);
                r.push_back(idx);
                for (std::size_t k = i + 2; k <= un; ++k)
                    r.push_back(t[k]);
                out.add_term(std::move(r), v * s);
            }
        }
        // (-1)^n sigma(a_n) a_0 (x) a_1 (x) ... (x) a_{n-1}
        RatFunc s = c.twist().factor(t[un].j) * ((n % 2 == 0) ? coeff : -coeff);
        for (const auto& [idx, v] : basis_mul(t[un], t[0]).terms()) {
            Tensor r;
            r.push_back(idx);
            for (std::size_t k = 1; k < un; ++k)
                r.push_back(t[k]);
            out.add_term(std::move(r), v * s);
        }
    }
    return out;
}

Chain cyclic_t(const Chain& c)
{
    int n = c.degree();
    Chain out(n, c.twist());
    auto un = static_cast<std::size_t>(n);
    for (const auto& [t, coeff] : c.terms()) {
        Tensor r;
        r.push_back(t[un]);
        for (std::size_t k = 0; k < un; ++k)
            r.push_back(t[k]);
        RatFunc s = c.twist().factor(t[un].j) * coeff;
        out.add_term(r, n % 2 == 0 ? s : -s);
    }
    return out;
}

AlgElem coboundary_eval(const Cochain& psi, std::span<const AlgElem> args)
{
    auto n = static_cast<std::size_t>(psi.degree());
    if (args.size() != n + 1)
        throw ContractError("coboundary of a degree " + std::to_string(n) + " cochain needs " +
                            std::to_string(n + 1) + " arguments, got " + std::to_string(args.size()));
    // sigma(a_0) psi(a_1..a_n)
    AlgElem out = mul(psi.twist().apply(args[0]), psi.eval(args.subspan(1)));
    // sum_{i<n} (-1)^{i+1} psi(.., a_i a_{i+1}, ..)
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<AlgElem> merged;
        for (std::size_t k = 0; k < i; ++k)
            merged.push_back(args[k]);
        merged.push_back(mul(args[i], args[i + 1]));
        for (std::size_t k = i + 2; k <= n; ++k)
            merged.push_back(args[k]);
        AlgElem v = psi.eval(merged);
        if (i % 2 == 0)
            out -= v;
        else
            out += v;
    }
    // (-1)^{n+1} psi(a_0..a_{n-1}) a_n
    AlgElem last = mul(psi.eval(args.subspan(0, n)), args[n]);
    if (n % 2 == 0)
        out -= last;
    else
        out += last;
    return out;
}

void for_each_tensor(int slots, int max_i, int max_j, const std::function<void(const Tensor&)>& fn)
{
    std::vector<BasisIndex> box = basis_box(max_i, max_j);
    std::vector<std::size_t> pos(static_cast<std::size_t>(slots), 0);
    Tensor t(static_cast<std::size_t>(slots), box.front());
    for (;;) {
        for (std::size_t k = 0; k < pos.size(); ++k)
            t[k] = box[pos[k]];
        fn(t);
        std::size_t k = pos.size();
        while (k-- > 0) {
            if (++pos[k] < box.size())
                break;
            pos[k] = 0;
        }
        if (k == static_cast<std::size_t>(-1))
            return;
    }
}

} // namespace qs2
