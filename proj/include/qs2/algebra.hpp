#pragma once

#include "qs2/qfield.hpp"

#include <compare>
#include <map>
#include <memory>
#include <vector>

namespace qs2 {

/**
 * Index of the PBW basis element e_{ij} = x0^i x1^j (j >= 0) or
 * x0^i xm1^{-j} (j < 0). Ordered lexicographically by (i, j).
 */
struct BasisIndex {
    int i = 0;
    int j = 0;

    friend auto operator<=>(const BasisIndex&, const BasisIndex&) = default;
};

inline constexpr BasisIndex kOne{0, 0};

/**
 * Element of the Podles sphere: a finitely supported Q(q)-linear
 * combination of PBW basis elements. Zero coefficients are never stored.
 */
class AlgElem {
public:
    using Terms = std::map<BasisIndex, RatFunc>;

    AlgElem() = default;
    AlgElem(const RatFunc& c) { add_term(kOne, c); }
    AlgElem(long c) : AlgElem(RatFunc(c)) {}

    static AlgElem basis(BasisIndex idx, const RatFunc& c = 1);
    // The generator x_n, n in {-1, 0, 1}.
    static AlgElem gen(int n);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    RatFunc coeff(BasisIndex idx) const;
    bool is_scalar() const;

    void add_term(BasisIndex idx, const RatFunc& c);
    void add_scaled(const AlgElem& o, const RatFunc& c);

    AlgElem operator-() const;
    AlgElem& operator+=(const AlgElem& o);
    AlgElem& operator-=(const AlgElem& o);
    AlgElem& operator*=(const RatFunc& c);
    friend AlgElem operator+(AlgElem a, const AlgElem& b) { return a += b; }
    friend AlgElem operator-(AlgElem a, const AlgElem& b) { return a -= b; }
    friend AlgElem operator*(AlgElem a, const RatFunc& c) { return a *= c; }
    friend AlgElem operator*(const RatFunc& c, AlgElem a) { return a *= c; }
    // Algebra product.
    friend AlgElem operator*(const AlgElem& a, const AlgElem& b);

    friend bool operator==(const AlgElem&, const AlgElem&) = default;

private:
    Terms terms_;
};

/// The automorphism sigma_lambda: x_n -> lambda^n x_n.
class Automorphism {
public:
    explicit Automorphism(RatFunc lambda);

    static Automorphism identity();
    // sigma_mod, lambda = q^2.
    static Automorphism modular();

    const RatFunc& lambda() const { return d_->lambda; }
    // lambda^j, the scalar by which e_{ij} is multiplied.
    RatFunc factor(int j) const;

    // (*this) after `first`: lambda multiplies.
    Automorphism after(const Automorphism& first) const;
    Automorphism inverse() const;

    AlgElem apply(const AlgElem& a) const;

    friend bool operator==(const Automorphism& a, const Automorphism& b)
    {
        return a.d_ == b.d_ || a.d_->lambda == b.d_->lambda;
    }

private:
    static constexpr int kCached = 12;
    struct Data {
        RatFunc lambda;
        std::vector<RatFunc> powers;  // lambda^j, |j| <= kCached
    };
    std::shared_ptr<const Data> d_;
};

// A word over the generators, letters in {-1, 0, 1}.
using Word = std::vector<int>;

// PBW normal form of e_a * e_b. The reference is to a per-thread cache.
const AlgElem& basis_mul(BasisIndex a, BasisIndex b);
AlgElem mul(const AlgElem& a, const AlgElem& b);

// Independent product: rewrite the concatenated free word with the four
// defining relations until every term is normal ordered.
AlgElem mul_oracle(const Word& left, const Word& right);
Word word_of(BasisIndex idx);

AlgElem apply_aut(const Automorphism& s, const AlgElem& a);
RatFunc counit(const AlgElem& a);
// a * g == s(g) * a for every generator g.
bool is_sigma_central(const AlgElem& a, const Automorphism& s);

// All e_{ij} with 0 <= i <= max_i and |j| <= max_j.
std::vector<BasisIndex> basis_box(int max_i, int max_j);

} // namespace qs2
