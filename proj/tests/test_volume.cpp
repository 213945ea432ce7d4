#include "qs2/cochains.hpp"
#include "qs2/error.hpp"
#include "qs2/homology.hpp"
#include "qs2/volume.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace qs2;
using qs2::test::q;

namespace {

const Automorphism& mod()
{
    static const Automorphism m = Automorphism::modular();
    return m;
}

Chain one_x1_xm1() { return basis_chain({kOne, {0, 1}, {0, -1}}, mod()); }

} // namespace

TEST(Volume, DerivativesAtTheCounit)
{
    EXPECT_TRUE(deriv_E(AlgElem::gen(1)).is_zero());
    EXPECT_EQ(deriv_E(AlgElem::gen(-1)), RatFunc(1));
    EXPECT_EQ(deriv_F(AlgElem::gen(1)), RatFunc(1));
    std::mt19937 rng(71);
    for (int n = 0; n < 60; ++n) {
        AlgElem a = test::random_element(rng), b = test::random_element(rng);
        EXPECT_EQ(deriv_E(a * b), counit(a) * deriv_E(b) + deriv_E(a) * counit(b));
        EXPECT_EQ(deriv_F(a * b), counit(a) * deriv_F(b) + deriv_F(a) * counit(b));
    }
}

TEST(Volume, PhiExamples)
{
    for (PhiVariant v : {PhiVariant::delta, PhiVariant::efd, PhiVariant::cap}) {
        EXPECT_EQ(phi(fundamental_class(), v), RatFunc(1));
        EXPECT_EQ(phi(one_x1_xm1(), v), q(-1));
        EXPECT_TRUE(phi(basis_chain({{1, 0}, {0, 1}, {0, -1}}, mod()), v).is_zero());
    }
    EXPECT_THROW(phi(Chain(2, Automorphism::identity()), PhiVariant::delta), ContractError);
    EXPECT_THROW(phi(Chain(1, mod()), PhiVariant::efd), ContractError);
}

TEST(Volume, PhiVariantsAgreeOnRandomChains)
{
    std::mt19937 rng(72);
    for (int n = 0; n < 100; ++n) {
        Chain c = test::random_chain(rng, 2, mod(), 4, 2, 2);
        RatFunc d = phi(c, PhiVariant::delta);
        EXPECT_EQ(phi(c, PhiVariant::efd), d);
        EXPECT_EQ(phi(c, PhiVariant::cap), d);
    }
}

TEST(Volume, PhiPlusMinus)
{
    EXPECT_EQ(phi_pm(1, fundamental_class()), RatFunc(1));
    EXPECT_EQ(phi_pm(-1, fundamental_class()), RatFunc(1));
    std::mt19937 rng(73);
    for (int n = 0; n < 20; ++n) {
        Chain b = boundary(test::random_chain(rng, 3, mod(), 3, 2, 2));
        EXPECT_TRUE(phi_pm(1, b).is_zero());
        EXPECT_TRUE(phi_pm(-1, b).is_zero());
        EXPECT_TRUE(phi(b, PhiVariant::delta).is_zero());
    }
    // They agree on homology but not on chains.
    Chain w = basis_chain({kOne, {0, -1}, {0, 1}}, mod());
    EXPECT_EQ(phi_pm(1, w), -q(1));
    EXPECT_TRUE(phi(w, PhiVariant::delta).is_zero());
    EXPECT_THROW(phi_pm(2, fundamental_class()), ContractError);
}

TEST(Volume, CounterTermValues)
{
    CounterTerm s = CounterTerm::standard();
    BasisIndex x0{1, 0}, x0sq{2, 0};
    EXPECT_EQ(s(kOne, x0), (1 - q(-2)).inverse());
    EXPECT_EQ(s(kOne, x0), -(q(-2) - 1).inverse());
    EXPECT_EQ(s(kOne, x0sq), -(q(1) - q(-1)).inverse());
    EXPECT_EQ(s(x0, x0), -(RatFunc(2) * (q(1) - q(-1))).inverse());
    EXPECT_TRUE(s(x0, kOne).is_zero());
    EXPECT_TRUE(s({0, 1}, {0, -1}).is_zero());
    EXPECT_TRUE(s({0, -1}, {0, 1}).is_zero());
    CounterTerm t = CounterTerm::three_point_restriction();
    EXPECT_EQ(t(kOne, x0), s(kOne, x0));
    EXPECT_EQ(t(kOne, x0sq), s(kOne, x0sq));
    EXPECT_EQ(t(x0, x0), s(x0, x0));
    EXPECT_TRUE(t(kOne, {3, 0}).is_zero());
    EXPECT_FALSE(s(kOne, {3, 0}).is_zero());
}

TEST(Volume, EtaExamples)
{
    EXPECT_TRUE(eta(fundamental_class()).is_zero());
    EXPECT_EQ(eta(one_x1_xm1()), -q(-1));
    EXPECT_EQ(cyclic_cocycle(fundamental_class()), RatFunc(1));
    EXPECT_TRUE(cyclic_cocycle(one_x1_xm1()).is_zero());
    std::mt19937 rng(74);
    for (int n = 0; n < 20; ++n)
        EXPECT_TRUE(eta(boundary(test::random_chain(rng, 3, mod(), 3, 2, 2))).is_zero());
}

TEST(Volume, CyclicityReports)
{
    CyclicityReport phi_rep = is_cyclic(Functional2::phi_delta, 1, 1, 100);
    EXPECT_FALSE(phi_rep.cyclic());
    bool found = false;
    Tensor w{kOne, {0, 1}, {0, -1}};
    for (const auto& v : phi_rep.violations)
        if (v.kind == CyclicityViolation::Kind::t_invariance && v.witness == w) {
            EXPECT_EQ(v.defect, -q(-1));
            found = true;
        }
    EXPECT_TRUE(found);

    EXPECT_TRUE(is_cyclic(Functional2::phi_plus_eta, 2, 2).cyclic());
    EXPECT_FALSE(is_cyclic(Functional2::eta, 1, 1).cyclic());
    EXPECT_EQ(is_cyclic(Functional2::phi_plus_eta, 1, 1).chains_checked, 216u);
}

// The counter-term supported on (1,x0), (1,x0^2), (x0,x0) alone does not make
// phi + eta cyclic: eta(1, xm1^2, x1^2) = -q^4 phi_2(1, x0^2) must vanish.
TEST(Volume, ThreePointCounterTermIsNotCyclic)
{
    CyclicityReport rep = is_cyclic(Functional2::phi_plus_eta_three_point, 2, 2);
    EXPECT_FALSE(rep.cyclic());
    Chain c = basis_chain({kOne, {0, -2}, {0, 2}}, mod());
    CounterTerm t = CounterTerm::three_point_restriction();
    EXPECT_EQ(eta(c, t), -q(4) * t(kOne, {2, 0}));
    EXPECT_FALSE(eta(c, t).is_zero());
    EXPECT_TRUE(cyclic_cocycle(c).is_zero());
}

TEST(Volume, FunctionalNames)
{
    EXPECT_EQ(functional_from_name("phi"), Functional2::phi_delta);
    EXPECT_EQ(functional_from_name("phi+eta"), Functional2::phi_plus_eta);
    EXPECT_EQ(functional_name(Functional2::phi_minus), "phi-minus");
    EXPECT_THROW(functional_from_name("psi"), ContractError);
}
