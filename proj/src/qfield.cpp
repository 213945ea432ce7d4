#include "qs2/qfield.hpp"

#include "qs2/error.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace qs2 {

using boost::multiprecision::abs;

// ---------------------------------------------------------------- Poly

Poly::Poly(long v)
{
    if (v != 0)
        c_.push_back(Int(v));
}

Poly::Poly(Coeffs coeffs) : c_(std::move(coeffs)) { normalize(); }

Poly Poly::monomial(Int c, int k)
{
    assert(k >= 0);
    Poly p;
    if (c != 0) {
        p.s_ = k;
        p.c_.push_back(std::move(c));
    }
    return p;
}

void Poly::normalize()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
    if (c_.empty()) {
        s_ = 0;
        return;
    }
    std::size_t z = 0;
    while (c_[z] == 0)
        ++z;
    if (z > 0) {
        c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(z));
        s_ += static_cast<int>(z);
    }
}

Int Poly::coeff(int k) const
{
    int d = k - s_;
    if (d < 0 || d >= static_cast<int>(c_.size()))
        return 0;
    return c_[static_cast<std::size_t>(d)];
}

Int Poly::content() const
{
    Int g = 0;
    for (const auto& x : c_) {
        g = g == 0 ? Int(abs(x)) : Int(boost::multiprecision::gcd(g, x));
        if (g == 1)
            break;
    }
    return g;
}

void Poly::negate()
{
    for (auto& x : c_)
        x.backend().negate();
}

Poly Poly::operator-() const
{
    Poly r = *this;
    r.negate();
    return r;
}

void Poly::add_scaled(const Poly& o, int sign)
{
    if (o.is_zero())
        return;
    if (is_zero()) {
        *this = o;
        if (sign < 0)
            negate();
        return;
    }
    if (o.s_ < s_) {
        c_.insert(c_.begin(), static_cast<std::size_t>(s_ - o.s_), Int(0));
        s_ = o.s_;
    }
    auto off = static_cast<std::size_t>(o.s_ - s_);
    if (off + o.c_.size() > c_.size())
        c_.resize(off + o.c_.size(), Int(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) {
        if (sign > 0)
            c_[off + k] += o.c_[k];
        else
            c_[off + k] -= o.c_[k];
    }
    normalize();
}

Poly& Poly::operator+=(const Poly& o)
{
    add_scaled(o, 1);
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    add_scaled(o, -1);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    if (a.c_.size() == 1 || b.c_.size() == 1) {
        const Poly& s = a.c_.size() == 1 ? a : b;
        Poly r = a.c_.size() == 1 ? b : a;
        r.s_ = a.s_ + b.s_;
        if (s.c_[0] != 1)
            for (auto& x : r.c_)
                x *= s.c_[0];
        return r;
    }
    Poly r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.s_ = a.s_ + b.s_;
    r.normalize();
    return r;
}

Poly& Poly::operator*=(const Int& s)
{
    if (s == 0) {
        *this = Poly();
        return *this;
    }
    for (auto& x : c_)
        x *= s;
    return *this;
}

Poly Poly::shifted_up(int k) const
{
    Poly r = *this;
    if (!r.is_zero())
        r.s_ += k;
    return r;
}

Poly Poly::shifted_down(int k) const
{
    assert(is_zero() || k <= s_);
    Poly r = *this;
    if (!r.is_zero())
        r.s_ -= k;
    return r;
}

Poly Poly::divided_by(const Int& s) const
{
    Poly r = *this;
    for (auto& x : r.c_) {
        assert(x % s == 0);
        x /= s;
    }
    return r;
}

Poly Poly::exact_div(const Poly& d) const
{
    assert(!d.is_zero());
    if (is_zero())
        return {};
    // d = q^t D with D(0) != 0, so D divides the q-free part and t <= s_.
    assert(d.s_ <= s_);
    Coeffs rem = c_;
    int dd = static_cast<int>(d.c_.size()) - 1;
    int n = static_cast<int>(c_.size()) - 1;
    assert(n >= dd);
    Coeffs quo(static_cast<std::size_t>(n - dd) + 1, Int(0));
    for (int k = n - dd; k >= 0; --k) {
        const Int& top = rem[static_cast<std::size_t>(k + dd)];
        if (top == 0)
            continue;
        assert(top % d.lead() == 0);
        Int f = top / d.lead();
        for (int t = 0; t <= dd; ++t)
            rem[static_cast<std::size_t>(k + t)] -= f * d.c_[static_cast<std::size_t>(t)];
        quo[static_cast<std::size_t>(k)] = std::move(f);
    }
    assert(std::all_of(rem.begin(), rem.end(), [](const Int& x) { return x == 0; }));
    Poly r(std::move(quo));
    return r.shifted_up(s_ - d.s_);
}

Rational Poly::eval(const Rational& x) const
{
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * x + Rational(*it);
    for (int k = 0; k < s_; ++k)
        acc *= x;
    return acc;
}

int Poly::compare(const Poly& a, const Poly& b)
{
    if (a.degree() != b.degree())
        return a.degree() < b.degree() ? -1 : 1;
    for (int k = a.degree(); k >= std::min(a.s_, b.s_); --k) {
        Int x = a.coeff(k), y = b.coeff(k);
        if (x != y)
            return x < y ? -1 : 1;
    }
    return 0;
}

std::string Poly::to_string() const
{
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= s_; --k) {
        Int c = coeff(k);
        if (c == 0)
            continue;
        if (c < 0)
            os << '-';
        else if (!first)
            os << '+';
        first = false;
        Int m = abs(c);
        if (k == 0) {
            os << m;
            continue;
        }
        if (m != 1)
            os << m << '*';
        os << 'q';
        if (k > 1)
            os << '^' << k;
    }
    return os.str();
}

namespace {

Poly primitive_part(const Poly& p)
{
    Int c = p.content();
    Poly r = (c == 1 || c == 0) ? p : p.divided_by(c);
    if (!r.is_zero() && r.lead() < 0)
        r = -r;
    return r;
}

// Pseudo-remainder of a by b, followed by removal of the integer content.
Poly primitive_prem(Poly a, const Poly& b)
{
    int db = b.degree();
    const Int& lb = b.lead();
    while (!a.is_zero() && a.degree() >= db) {
        Int la = a.lead();
        int shift = a.degree() - db;
        a *= lb;
        Poly t = b.shifted_up(shift);
        t *= la;
        a -= t;
        a = primitive_part(a);
    }
    return a;
}

} // namespace

Poly primitive_gcd(const Poly& a, const Poly& b)
{
    if (a.is_zero())
        return primitive_part(b);
    if (b.is_zero())
        return primitive_part(a);
    int oa = a.q_order();
    int ob = b.q_order();
    int k = std::min(oa, ob);
    Poly x = a.shifted_down(oa);
    Poly y = b.shifted_down(ob);
    Poly g(1);
    if (x.degree() > 0 && y.degree() > 0) {
        x = primitive_part(x);
        y = primitive_part(y);
        if (x.degree() < y.degree())
            std::swap(x, y);
        while (!y.is_zero()) {
            Poly r = primitive_prem(x, y);
            x = std::move(y);
            y = std::move(r);
        }
        g = primitive_part(x);
    }
    return g.shifted_up(k);
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den))
{
    canonicalize();
}

void RatFunc::canonicalize()
{
    if (den_.is_zero())
        throw DomainError("rational function with zero denominator");
    if (num_.is_zero()) {
        den_ = Poly(1);
        return;
    }
    if (den_.is_one())
        return;
    if (den_.is_monomial() || num_.is_monomial()) {
        // the polynomial gcd is a power of q
        int k = std::min(num_.q_order(), den_.q_order());
        if (k > 0) {
            num_ = num_.shifted_down(k);
            den_ = den_.shifted_down(k);
        }
    }
    else {
        Poly g = primitive_gcd(num_, den_);
        if (g.is_monomial()) {
            if (g.degree() > 0) {
                num_ = num_.shifted_down(g.degree());
                den_ = den_.shifted_down(g.degree());
            }
        }
        else {
            num_ = num_.exact_div(g);
            den_ = den_.exact_div(g);
        }
    }
    const Int& dl = den_.lead();
    if (den_.is_monomial() && (dl == 1 || dl == -1)) {
        if (dl < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        return;
    }
    Int c = boost::multiprecision::gcd(num_.content(), den_.content());
    if (c != 1) {
        num_ = num_.divided_by(c);
        den_ = den_.divided_by(c);
    }
    if (den_.lead() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

RatFunc RatFunc::q_power(int k)
{
    if (k >= 0)
        return RatFunc(Poly::monomial(1, k), Poly(1), Raw{});
    return RatFunc(Poly(1), Poly::monomial(1, -k), Raw{});
}

RatFunc RatFunc::from_rational(const Rational& r)
{
    return RatFunc(Poly(Poly::Coeffs{numerator(r)}), Poly(Poly::Coeffs{denominator(r)}), Raw{});
}

int RatFunc::lead_sign() const
{
    if (num_.is_zero())
        return 0;
    return num_.lead() < 0 ? -1 : 1;
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, Raw{}); }

RatFunc& RatFunc::operator+=(const RatFunc& o)
{
    if (o.is_zero())
        return *this;
    if (is_zero())
        return *this = o;
    if (den_ == o.den_) {
        num_ += o.num_;
    }
    else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ = den_ * o.den_;
    }
    canonicalize();
    return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o)
{
    if (is_zero() || o.is_zero()) {
        *this = RatFunc();
        return *this;
    }
    if (o.den_.is_one() && o.num_.is_constant()) {
        if (o.num_.lead() == 1)
            return *this;
        if (o.num_.lead() == -1) {
            negate();
            return *this;
        }
    }
    if (is_one())
        return *this = o;
    num_ = num_ * o.num_;
    den_ = den_ * o.den_;
    canonicalize();
    return *this;
}

RatFunc RatFunc::inverse() const
{
    if (is_zero())
        throw DomainError("division by zero");
    return RatFunc(den_, num_);
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inverse(); }

RatFunc RatFunc::pow(int e) const
{
    if (e < 0)
        return inverse().pow(-e);
    if (num_.is_monomial() && den_.is_monomial()) {
        Int cn = boost::multiprecision::pow(num_.lead(), static_cast<unsigned>(e));
        Int cd = boost::multiprecision::pow(den_.lead(), static_cast<unsigned>(e));
        return RatFunc(Poly::monomial(cn, num_.degree() * e), Poly::monomial(cd, den_.degree() * e), Raw{});
    }
    RatFunc r(1);
    RatFunc b = *this;
    while (e > 0) {
        if (e & 1)
            r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

bool operator<(const RatFunc& a, const RatFunc& b)
{
    int c = Poly::compare(a.den_, b.den_);
    if (c != 0)
        return c < 0;
    return Poly::compare(a.num_, b.num_) < 0;
}

std::string RatFunc::to_string() const
{
    if (den_.is_one())
        return num_.to_string();
    std::string n = num_.to_string();
    bool num_single = num_.is_monomial();
    std::string out = num_single ? n : "(" + n + ")";
    bool den_bare = den_.is_monomial() && (den_.lead() == 1 || den_.degree() == 0);
    std::string d = den_.to_string();
    out += "/";
    out += den_bare ? d : "(" + d + ")";
    return out;
}

RatFunc rf_arith(ArithOp op, const RatFunc& a, const RatFunc& b)
{
    switch (op) {
    case ArithOp::add:
        return a + b;
    case ArithOp::sub:
        return a - b;
    case ArithOp::mul:
        return a * b;
    case ArithOp::div:
        return a / b;
    }
    throw ContractError("unknown arithmetic operation");
}

std::optional<int> detect_q_power(const RatFunc& lambda)
{
    const Poly& n = lambda.num();
    const Poly& d = lambda.den();
    if (!n.is_monomial() || !d.is_monomial())
        return std::nullopt;
    if (n.lead() != 1 || d.lead() != 1)
        return std::nullopt;
    return n.degree() - d.degree();
}

Rational rf_eval_at(const RatFunc& a, const Rational& q0)
{
    Rational d = a.den().eval(q0);
    if (d == 0)
        throw DomainError("pole at q = " + rational_to_string(q0));
    return a.num().eval(q0) / d;
}

std::string rational_to_string(const Rational& r)
{
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1)
        os << '/' << denominator(r);
    return os.str();
}

} // namespace qs2
