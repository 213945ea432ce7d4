#pragma once

#include "qs2/algebra.hpp"

#include <boost/container/small_vector.hpp>

#include <functional>
#include <map>
#include <span>
#include <string>

namespace qs2 {

class Cochain;

// a_0 (x) ... (x) a_n as a tuple of basis indices.
using Tensor = boost::container::small_vector<BasisIndex, 4>;

/**
 * Twisted Hochschild chain of degree n with coefficients in the bimodule
 * twisted by `twist`: a finitely supported combination of basis tensors of
 * length n + 1. Operations mixing two chains require equal degree and twist.
 */
class Chain {
public:
    using Terms = std::map<Tensor, RatFunc>;

    Chain(int degree, Automorphism twist);

    int degree() const { return degree_; }
    const Automorphism& twist() const { return twist_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    RatFunc coeff(const Tensor& t) const;

    void add_term(Tensor t, RatFunc c);
    void add_scaled(const Chain& o, const RatFunc& c);

    Chain& operator+=(const Chain& o);
    Chain& operator-=(const Chain& o);
    Chain& operator*=(const RatFunc& c);
    friend Chain operator+(Chain a, const Chain& b) { return a += b; }
    friend Chain operator-(Chain a, const Chain& b) { return a -= b; }
    friend Chain operator*(Chain a, const RatFunc& c) { return a *= c; }
    friend Chain operator*(const RatFunc& c, Chain a) { return a *= c; }

    friend bool operator==(const Chain&, const Chain&) = default;

    std::string to_string() const;

private:
    void check_compatible(const Chain& o) const;

    int degree_;
    Automorphism twist_;
    Terms terms_;
};

// Multilinear expansion of factors[0] (x) ... (x) factors[n].
Chain expand_tensor(std::span<const AlgElem> factors, const Automorphism& twist);
Chain expand_tensor(std::initializer_list<AlgElem> factors, const Automorphism& twist);

// A single basis tensor with coefficient 1.
Chain basis_chain(const Tensor& t, const Automorphism& twist);

/**
 * Hochschild boundary
 *   b(a_0,...,a_n) = sum_{i<n} (-1)^i a_0 (x) ... (x) a_i a_{i+1} (x) ... (x) a_n
 *                    + (-1)^n sigma(a_n) a_0 (x) a_1 (x) ... (x) a_{n-1}.
 * Throws ContractError on a degree 0 chain.
 */
Chain boundary(const Chain& c);

// t(a_0,...,a_n) = (-1)^n sigma(a_n) (x) a_0 (x) ... (x) a_{n-1}
Chain cyclic_t(const Chain& c);

// (b psi)(a_0,...,a_n) with sigma the twist of psi; args.size() == degree(psi)+1.
AlgElem coboundary_eval(const Cochain& psi, std::span<const AlgElem> args);

// Visits every basis tensor of `slots` factors drawn from basis_box(max_i, max_j).
void for_each_tensor(int slots, int max_i, int max_j, const std::function<void(const Tensor&)>& fn);

} // namespace qs2
