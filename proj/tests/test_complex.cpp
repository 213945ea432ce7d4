#include "qs2/cochains.hpp"
#include "qs2/complex.hpp"
#include "qs2/error.hpp"
#include "qs2/homology.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace qs2;
using qs2::test::q;

namespace {

AlgElem e(BasisIndex b) { return AlgElem::basis(b); }

// Boundary of a basis tensor with every product taken by word rewriting.
Chain boundary_oracle(const Tensor& t, const Automorphism& s)
{
    std::size_t n = t.size() - 1;
    Chain out(static_cast<int>(n) - 1, s);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<AlgElem> f;
        for (std::size_t k = 0; k < t.size(); ++k) {
            if (k == i)
                f.push_back(test::word_product(t[i], t[i + 1]));
            else if (k != i + 1)
                f.push_back(e(t[k]));
        }
        out.add_scaled(expand_tensor(f, s), RatFunc(i % 2 == 0 ? 1 : -1));
    }
    std::vector<AlgElem> f{test::word_mul(s.apply(e(t[n])), e(t[0]))};
    for (std::size_t k = 1; k < n; ++k)
        f.push_back(e(t[k]));
    out.add_scaled(expand_tensor(f, s), RatFunc(n % 2 == 0 ? 1 : -1));
    return out;
}

} // namespace

TEST(Complex, ExpandTensor)
{
    Automorphism mod = Automorphism::modular();
    Chain a = expand_tensor({AlgElem(1), AlgElem::gen(1), AlgElem::gen(-1)}, mod);
    EXPECT_EQ(a, basis_chain({kOne, {0, 1}, {0, -1}}, mod));
    Automorphism id = Automorphism::identity();
    Chain b = expand_tensor({AlgElem::gen(1) + AlgElem::gen(0), AlgElem::gen(0)}, id);
    EXPECT_EQ(b, basis_chain({{0, 1}, {1, 0}}, id) + basis_chain({{1, 0}, {1, 0}}, id));
    Chain c = expand_tensor({AlgElem::gen(1) * RatFunc(2), AlgElem::gen(0) * RatFunc(3)}, id);
    EXPECT_EQ(c, basis_chain({{0, 1}, {1, 0}}, id) * RatFunc(6));
    EXPECT_THROW(expand_tensor(std::span<const AlgElem>{}, id), ContractError);
}

TEST(Complex, BoundaryExamples)
{
    RatFunc lam = parse_scalar("(q+2)/3");
    Automorphism s(lam);
    Chain c = boundary(basis_chain({{0, 1}, {0, -1}}, s));
    RatFunc li = lam.inverse();
    AlgElem want = AlgElem::basis({2, 0}, q(-2) - li * q(2)) + AlgElem::basis({1, 0}, q(-1) - li * q(1));
    EXPECT_EQ(as_element(c), want);
    EXPECT_TRUE(boundary(basis_chain({kOne, kOne}, Automorphism::identity())).is_zero());
    EXPECT_TRUE(boundary(fundamental_class()).is_zero());
    EXPECT_THROW(boundary(Chain(0, s)), ContractError);
}

TEST(Complex, BoundaryMatchesWordOracle)
{
    std::mt19937 rng(41);
    for (const Automorphism& s : {Automorphism::identity(), Automorphism::modular(), Automorphism(RatFunc(3))})
        for (int n = 0; n < 150; ++n) {
            int deg = 1 + n % 3;
            Tensor t;
            for (int k = 0; k <= deg; ++k)
                t.push_back(test::random_index(rng, 2, 2));
            ASSERT_EQ(boundary(basis_chain(t, s)), boundary_oracle(t, s)) << basis_chain(t, s).to_string();
        }
}

TEST(Complex, BoundarySquaresToZero)
{
    std::mt19937 rng(42);
    for (const RatFunc& lam : {RatFunc(1), q(2), q(-2), q(4), RatFunc(3)}) {
        Automorphism s(lam);
        for (int n = 0; n < 40; ++n) {
            Chain c = test::random_chain(rng, 2 + n % 2, s);
            ASSERT_TRUE(boundary(boundary(c)).is_zero()) << c.to_string();
        }
    }
}

TEST(Complex, BoundaryIsLinear)
{
    std::mt19937 rng(43);
    Automorphism s(q(2) + 1);
    for (int n = 0; n < 30; ++n) {
        Chain a = test::random_chain(rng, 2, s), b = test::random_chain(rng, 2, s);
        RatFunc k = test::random_scalar(rng);
        EXPECT_EQ(boundary(a * k + b), boundary(a) * k + boundary(b));
    }
}

TEST(Complex, TwistMismatchRejected)
{
    Chain a = basis_chain({kOne, kOne}, Automorphism::identity());
    Chain b = basis_chain({kOne, kOne}, Automorphism::modular());
    EXPECT_THROW(a += b, ContractError);
    EXPECT_THROW(a += basis_chain({kOne}, Automorphism::identity()), ContractError);
}

TEST(Complex, CyclicOperator)
{
    Automorphism mod = Automorphism::modular();
    Chain c = cyclic_t(basis_chain({kOne, {0, 1}, {0, -1}}, mod));
    EXPECT_EQ(c, basis_chain({{0, -1}, kOne, {0, 1}}, mod) * q(-2));
    Chain d = cyclic_t(basis_chain({{0, 2}}, mod));
    EXPECT_EQ(d, basis_chain({{0, 2}}, mod) * q(4));

    std::mt19937 rng(44);
    for (const Automorphism& s : {Automorphism::identity(), Automorphism(RatFunc(3)), mod})
        for (int deg = 0; deg <= 3; ++deg)
            for (int n = 0; n < 10; ++n) {
                Tensor t;
                for (int k = 0; k <= deg; ++k)
                    t.push_back(test::random_index(rng));
                Chain x = basis_chain(t, s);
                Chain y = x;
                for (int k = 0; k <= deg; ++k)
                    y = cyclic_t(y);
                std::vector<AlgElem> f;
                for (BasisIndex b : t)
                    f.push_back(s.apply(e(b)));
                EXPECT_EQ(y, expand_tensor(f, s));
                if (s.lambda().is_one())
                    EXPECT_EQ(y, x);
            }
}

TEST(Complex, CoboundaryEval)
{
    AlgElem x0 = AlgElem::gen(0);
    Cochain c = Cochain::central(x0, Automorphism::modular());
    for (int g = -1; g <= 1; ++g) {
        AlgElem a = AlgElem::gen(g);
        AlgElem v = coboundary_eval(c, std::vector<AlgElem>{a});
        EXPECT_EQ(v, Automorphism::modular().apply(a) * x0 - x0 * a);
        EXPECT_TRUE(v.is_zero());
    }
    EXPECT_FALSE(coboundary_eval(Cochain::central(x0, Automorphism::identity()), std::vector{AlgElem::gen(1)})
                     .is_zero());
    EXPECT_TRUE(coboundary_eval(partial(1), std::vector{x0, AlgElem::gen(1)}).is_zero());
    std::mt19937 rng(45);
    Cochain in = inner(test::random_element(rng), Automorphism(RatFunc(5)));
    for (int n = 0; n < 20; ++n) {
        std::vector<AlgElem> args{test::random_element(rng), test::random_element(rng)};
        EXPECT_TRUE(coboundary_eval(in, args).is_zero());
        EXPECT_TRUE(coboundary_eval(partial(-1), args).is_zero());
    }
    EXPECT_THROW(coboundary_eval(partial(0), std::vector{x0}), ContractError);
}

TEST(Complex, ForEachTensorCounts)
{
    std::size_t n = 0;
    for_each_tensor(3, 1, 1, [&](const Tensor& t) {
        EXPECT_EQ(t.size(), 3u);
        ++n;
    });
    EXPECT_EQ(n, 216u);
}
