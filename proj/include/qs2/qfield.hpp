#pragma once

#include <boost/container/small_vector.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

namespace qs2 {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/**
 * Univariate polynomial in q with arbitrary precision integer coefficients,
 * stored as q^s times a dense polynomial with nonzero constant and leading
 * terms, so Laurent-style monomials such as q^12 stay one coefficient long.
 * The zero polynomial has no coefficients and s = 0.
 */
class Poly {
public:
    using Coeffs = boost::container::small_vector<Int, 4>;

    Poly() = default;
    Poly(long v);
    // coeffs[k] is the coefficient of q^k.
    explicit Poly(Coeffs coeffs);

    static Poly monomial(Int c, int k);

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return s_ == 0 && c_.size() == 1 && c_[0] == 1; }
    bool is_constant() const { return s_ == 0 && c_.size() == 1; }
    bool is_monomial() const { return c_.size() == 1; }
    // -1 for the zero polynomial.
    int degree() const { return c_.empty() ? -1 : s_ + static_cast<int>(c_.size()) - 1; }
    // Largest k with q^k dividing *this; 0 for the zero polynomial.
    int q_order() const { return s_; }
    const Int& lead() const { return c_.back(); }
    Int coeff(int k) const;

    Int content() const;

    Poly operator-() const;
    void negate();
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Int& s);

    // Multiplication / exact division by q^k.
    Poly shifted_up(int k) const;
    Poly shifted_down(int k) const;
    // Exact division by an integer that divides every coefficient.
    Poly divided_by(const Int& s) const;
    // Exact division in Z[q]; the caller guarantees divisibility.
    Poly exact_div(const Poly& d) const;

    Rational eval(const Rational& x) const;

    friend bool operator==(const Poly&, const Poly&) = default;
    // Total order: degree, then coefficients from the top.
    static int compare(const Poly& a, const Poly& b);

    std::string to_string() const;

private:
    void normalize();
    void add_scaled(const Poly& o, int sign);

    int s_ = 0;
    Coeffs c_;
};

// gcd of two polynomials in Z[q], normalized to be primitive with positive
// leading coefficient (the integer content is not included).
Poly primitive_gcd(const Poly& a, const Poly& b);

/**
 * Element of the rational function field Q(q).
 *
 * Canonical form: numerator and denominator are coprime in Q[q], the
 * combined integer content gcd(content(num), content(den)) is 1 and the
 * denominator has positive leading coefficient. Zero is 0/1. Two equal
 * values therefore have identical representations.
 */
class RatFunc {
public:
    RatFunc() : num_(0), den_(1) {}
    RatFunc(long v) : num_(v), den_(1) {}
    explicit RatFunc(const Int& v) : num_(Poly(Poly::Coeffs{v})), den_(1) {}
    RatFunc(Poly num, Poly den);

    static RatFunc q() { return q_power(1); }
    static RatFunc q_power(int k);
    static RatFunc from_rational(const Rational& r);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    // True for elements of Q (no q dependence).
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
    // Sign of the leading numerator coefficient (0 for zero).
    int lead_sign() const;

    RatFunc operator-() const;
    void negate() { num_.negate(); }
    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    RatFunc& operator/=(const RatFunc& o);
    friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
    friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }

    RatFunc inverse() const;
    RatFunc pow(int e) const;

    friend bool operator==(const RatFunc&, const RatFunc&) = default;

    // Total order on representations; only used for deterministic output.
    friend bool operator<(const RatFunc& a, const RatFunc& b);

    std::string to_string() const;

private:
    struct Raw {};
    RatFunc(Poly num, Poly den, Raw) : num_(std::move(num)), den_(std::move(den)) {}
    void canonicalize();

    Poly num_;
    Poly den_;
};

enum class ArithOp { add, sub, mul, div };

// Field arithmetic; div by zero throws DomainError.
RatFunc rf_arith(ArithOp op, const RatFunc& a, const RatFunc& b);

// Returns i when lambda == q^i exactly.
std::optional<int> detect_q_power(const RatFunc& lambda);

// Exact evaluation at q = q0. Throws DomainError at a pole.
Rational rf_eval_at(const RatFunc& a, const Rational& q0);

std::string rational_to_string(const Rational& r);

} // namespace qs2
