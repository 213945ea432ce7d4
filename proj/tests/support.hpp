#pragma once

#include "qs2/algebra.hpp"
#include "qs2/complex.hpp"
#include "qs2/expr.hpp"

#include <random>

namespace qs2::test {

inline RatFunc q(int n) { return RatFunc::q_power(n); }

// Nonzero polynomial with small integer coefficients.
inline Poly random_poly(std::mt19937& rng, int max_degree = 3)
{
    std::uniform_int_distribution<int> deg(0, max_degree), coef(-4, 4);
    Poly::Coeffs c;
    int d = deg(rng);
    for (int k = 0; k <= d; ++k)
        c.push_back(Int(coef(rng)));
    if (c.back() == 0)
        c.back() = 1;
    return Poly(c);
}

inline RatFunc random_scalar(std::mt19937& rng)
{
    std::uniform_int_distribution<int> shift(-3, 3);
    RatFunc r(random_poly(rng), random_poly(rng, 2));
    return r * q(shift(rng));
}

inline BasisIndex random_index(std::mt19937& rng, int max_i = 3, int max_j = 3)
{
    std::uniform_int_distribution<int> i(0, max_i), j(-max_j, max_j);
    return {i(rng), j(rng)};
}

// Up to `terms` basis elements from the box with random coefficients.
inline AlgElem random_element(std::mt19937& rng, int terms = 4, int max_i = 3, int max_j = 3)
{
    std::uniform_int_distribution<int> n(1, terms);
    AlgElem a;
    for (int k = n(rng); k > 0; --k)
        a.add_term(random_index(rng, max_i, max_j), random_scalar(rng));
    return a;
}

inline Chain random_chain(std::mt19937& rng, int degree, const Automorphism& twist, int terms = 3, int max_i = 2,
                          int max_j = 2)
{
    Chain c(degree, twist);
    std::uniform_int_distribution<int> n(1, terms);
    for (int k = n(rng); k > 0; --k) {
        Tensor t;
        for (int s = 0; s <= degree; ++s)
            t.push_back(random_index(rng, max_i, max_j));
        c.add_term(t, random_scalar(rng));
    }
    return c;
}

// Product of basis elements computed only with the word rewriting system.
inline AlgElem word_product(BasisIndex a, BasisIndex b) { return mul_oracle(word_of(a), word_of(b)); }

inline AlgElem word_mul(const AlgElem& a, const AlgElem& b)
{
    AlgElem r;
    for (const auto& [ia, ca] : a.terms())
        for (const auto& [ib, cb] : b.terms())
            r.add_scaled(word_product(ia, ib), ca * cb);
    return r;
}

} // namespace qs2::test
