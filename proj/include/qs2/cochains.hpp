#pragma once

#include "qs2/complex.hpp"

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <string>

namespace qs2 {

/**
 * Evaluatable twisted Hochschild cochain. A is infinite dimensional, so a
 * cochain is an evaluator tree built from four constructors:
 *
 *  - central:    degree 0, the element c = psi(1);
 *  - derivation: degree 1, psi(ab) = sigma(a) psi(b) + psi(a) b, fixed by its
 *                values on xm1, x0, x1;
 *  - inner:      degree 1, psi(a) = b a - sigma(a) b;
 *  - cup:        (phi u psi)(a_1..a_{m+n}) = tau(phi(a_1..a_m)) psi(a_{m+1}..),
 *                tau the twist of psi, with twist tau o sigma.
 *
 * Values are immutable and cheap to copy.
 */
class Cochain {
public:
    enum class Kind { central, derivation, inner, cup };

    static Cochain central(AlgElem c, Automorphism twist, std::string name = {});
    // vals = {psi(xm1), psi(x0), psi(x1)}. Throws ContractError naming the
    // first defining relation the Leibniz extension does not respect.
    static Cochain derivation(std::array<AlgElem, 3> vals, Automorphism twist, std::string name = {});
    static Cochain inner(AlgElem b, Automorphism twist, std::string name = {});
    static Cochain cup(const Cochain& phi, const Cochain& psi);

    Kind kind() const;
    int degree() const;
    const Automorphism& twist() const;
    const std::string& name() const;

    // Multilinear evaluation; args.size() must equal degree().
    AlgElem eval(std::span<const AlgElem> args) const;
    AlgElem eval(std::initializer_list<AlgElem> args) const;

    // Derivation kind only: psi(e_idx), memoized.
    const AlgElem& eval_basis(BasisIndex idx) const;
    // Central and inner kinds.
    const AlgElem& element() const;
    // Derivation kind: values on xm1, x0, x1.
    const std::array<AlgElem, 3>& generator_values() const;

private:
    struct Node;
    explicit Cochain(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// Twisted Leibniz extension evaluated along a free word, without reducing
// the word first.
AlgElem derivation_on_word(const std::array<AlgElem, 3>& vals, const Automorphism& twist, const Word& w);

Cochain make_derivation(std::array<AlgElem, 3> vals, const Automorphism& twist);

// The twisted derivations d_{-1}, d_0, d_1 with twist q^{-2|i|}.
Cochain partial(int i);

Cochain inner(const AlgElem& b, const Automorphism& twist);
Cochain cup(const Cochain& phi, const Cochain& psi);
AlgElem eval(const Cochain& phi, std::span<const AlgElem> args);

/**
 * (a_0 (x) ... (x) a_n) cap phi = tau(a_0) phi(a_1..a_m) (x) a_{m+1} (x) ... (x) a_n
 * with tau the twist of phi. The result has twist tau o sigma and is
 * re-expanded in basis tensors.
 */
Chain cap(const Chain& c, const Cochain& phi);

/**
 * Looks for b supported on e_{ij}, i <= max_i, |j| <= max_j, with
 * inner(b, target.twist()) == target on the three generators. Solved by
 * exact Gaussian elimination over Q(q); free unknowns are set to zero.
 * std::nullopt means no such b exists within the box.
 */
std::optional<AlgElem> solve_inner(const Cochain& target, int max_i, int max_j);

} // namespace qs2
