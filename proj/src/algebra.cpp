#include "qs2/algebra.hpp"

#include "qs2/error.hpp"

#include <cstdlib>
#include <unordered_map>

namespace qs2 {

// ---------------------------------------------------------------- AlgElem

AlgElem AlgElem::basis(BasisIndex idx, const RatFunc& c)
{
    AlgElem a;
    a.add_term(idx, c);
    return a;
}

AlgElem AlgElem::gen(int n)
{
    if (n < -1 || n > 1)
        throw ContractError("generator index must be -1, 0 or 1");
    return basis(n == 0 ? BasisIndex{1, 0} : BasisIndex{0, n});
}

RatFunc AlgElem::coeff(BasisIndex idx) const
{
    auto it = terms_.find(idx);
    return it == terms_.end() ? RatFunc() : it->second;
}

bool AlgElem::is_scalar() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == kOne);
}

void AlgElem::add_term(BasisIndex idx, const RatFunc& c)
{
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace(idx, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

void AlgElem::add_scaled(const AlgElem& o, const RatFunc& c)
{
    if (c.is_zero())
        return;
    if (c.is_one()) {
        for (const auto& [idx, v] : o.terms_)
            add_term(idx, v);
        return;
    }
    for (const auto& [idx, v] : o.terms_)
        add_term(idx, v * c);
}

AlgElem AlgElem::operator-() const
{
    AlgElem r = *this;
    for (auto& [idx, v] : r.terms_)
        v = -v;
    return r;
}

AlgElem& AlgElem::operator+=(const AlgElem& o)
{
    add_scaled(o, 1);
    return *this;
}

AlgElem& AlgElem::operator-=(const AlgElem& o)
{
    add_scaled(o, -1);
    return *this;
}

AlgElem& AlgElem::operator*=(const RatFunc& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [idx, v] : terms_)
        v *= c;
    return *this;
}

AlgElem operator*(const AlgElem& a, const AlgElem& b) { return mul(a, b); }

// ---------------------------------------------------------------- Automorphism

Automorphism::Automorphism(RatFunc lambda)
{
    if (lambda.is_zero())
        throw DomainError("automorphism parameter must be nonzero");
    auto d = std::make_shared<Data>();
    d->powers.reserve(2 * kCached + 1);
    for (int j = -kCached; j <= kCached; ++j)
        d->powers.push_back(lambda.pow(j));
    d->lambda = std::move(lambda);
    d_ = std::move(d);
}

Automorphism Automorphism::identity()
{
    static const Automorphism id(RatFunc(1));
    return id;
}

Automorphism Automorphism::modular()
{
    static const Automorphism mod(RatFunc::q_power(2));
    return mod;
}

RatFunc Automorphism::factor(int j) const
{
    if (j >= -kCached && j <= kCached)
        return d_->powers[static_cast<std::size_t>(j + kCached)];
    return d_->lambda.pow(j);
}

Automorphism Automorphism::after(const Automorphism& first) const { return Automorphism(lambda() * first.lambda()); }

Automorphism Automorphism::inverse() const { return Automorphism(lambda().inverse()); }

AlgElem Automorphism::apply(const AlgElem& a) const
{
    if (lambda().is_one())
        return a;
    AlgElem r;
    for (const auto& [idx, c] : a.terms())
        r.add_term(idx, c * factor(idx.j));
    return r;
}

// ---------------------------------------------------------------- products

namespace {

struct PairHash {
    std::size_t operator()(const std::pair<BasisIndex, BasisIndex>& p) const noexcept
    {
        std::size_t h = static_cast<std::size_t>(p.first.i) * 1000003u;
        h ^= static_cast<std::size_t>(p.first.j + 4096) * 10007u;
        h ^= static_cast<std::size_t>(p.second.i) * 101u;
        h ^= static_cast<std::size_t>(p.second.j + 4096);
        return h;
    }
};

struct MixedKey {
    int s, m, n;
    bool operator==(const MixedKey&) const = default;
};

struct MixedHash {
    std::size_t operator()(const MixedKey& k) const noexcept
    {
        return static_cast<std::size_t>((k.s + 1) * 1000003 + k.m * 1009 + k.n);
    }
};

// x_s^m x_{-s}^n in normal form.
const AlgElem& mixed_block(int s, int m, int n)
{
    thread_local std::unordered_map<MixedKey, AlgElem, MixedHash> cache;
    MixedKey key{s, m, n};
    if (auto it = cache.find(key); it != cache.end())
        return it->second;

    AlgElem r;
    if (m == 0 || n == 0) {
        r = AlgElem::basis({0, s * m - s * n});
    }
    else {
        // Innermost pair: x_s x_{-s} = q^{-2s} x0^2 + q^{-s} x0, then the new
        // x0^k moves left past x_s^{m-1}, picking up q^{-2s(m-1)k}.
        const AlgElem& inner = mixed_block(s, m - 1, n - 1);
        for (int k = 1; k <= 2; ++k) {
            RatFunc c = RatFunc::q_power(k == 2 ? -2 * s : -s) * RatFunc::q_power(-2 * s * (m - 1) * k);
            for (const auto& [idx, v] : inner.terms())
                r.add_term({idx.i + k, idx.j}, v * c);
        }
    }
    return cache.emplace(key, std::move(r)).first->second;
}

} // namespace

const AlgElem& basis_mul(BasisIndex a, BasisIndex b)
{
    thread_local std::unordered_map<std::pair<BasisIndex, BasisIndex>, AlgElem, PairHash> cache;
    auto key = std::make_pair(a, b);
    if (auto it = cache.find(key); it != cache.end())
        return it->second;

    // x_{+-1}^{|a.j|} x0^{b.i} = q^{-2 a.j b.i} x0^{b.i} x_{+-1}^{|a.j|}
    RatFunc commute = RatFunc::q_power(-2 * a.j * b.i);
    int i = a.i + b.i;
    AlgElem r;
    if (a.j == 0 || b.j == 0 || (a.j > 0) == (b.j > 0)) {
        r.add_term({i, a.j + b.j}, commute);
    }
    else {
        int s = a.j > 0 ? 1 : -1;
        const AlgElem& block = mixed_block(s, std::abs(a.j), std::abs(b.j));
        for (const auto& [idx, v] : block.terms())
            r.add_term({i + idx.i, idx.j}, v * commute);
    }
    return cache.emplace(key, std::move(r)).first->second;
}

AlgElem mul(const AlgElem& a, const AlgElem& b)
{
    AlgElem r;
    for (const auto& [ia, ca] : a.terms())
        for (const auto& [ib, cb] : b.terms())
            r.add_scaled(basis_mul(ia, ib), ca * cb);
    return r;
}

Word word_of(BasisIndex idx)
{
    Word w(static_cast<std::size_t>(idx.i), 0);
    int s = idx.j > 0 ? 1 : -1;
    for (int k = 0; k < std::abs(idx.j); ++k)
        w.push_back(s);
    return w;
}

AlgElem mul_oracle(const Word& left, const Word& right)
{
    Word start = left;
    start.insert(start.end(), right.begin(), right.end());
    for (int g : start)
        if (g < -1 || g > 1)
            throw ContractError("word letters must be -1, 0 or 1");

    std::map<Word, RatFunc> pending{{start, RatFunc(1)}};
    AlgElem result;
    auto push = [&](Word w, const RatFunc& c) {
        auto [it, inserted] = pending.try_emplace(std::move(w), c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                pending.erase(it);
        }
    };

    while (!pending.empty()) {
        auto node = pending.extract(pending.begin());
        const Word& w = node.key();
        const RatFunc& c = node.mapped();

        std::size_t p = 0;
        for (; p + 1 < w.size(); ++p) {
            int a = w[p], b = w[p + 1];
            if (a != 0 && (b == 0 || b == -a))
                break;
        }
        if (p + 1 >= w.size()) {
            int i = 0;
            while (i < static_cast<int>(w.size()) && w[static_cast<std::size_t>(i)] == 0)
                ++i;
            int rest = static_cast<int>(w.size()) - i;
            int j = rest == 0 ? 0 : rest * w.back();
            result.add_term({i, j}, c);
            continue;
        }

        int a = w[p], b = w[p + 1];
        Word head(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p));
        Word tail(w.begin() + static_cast<std::ptrdiff_t>(p) + 2, w.end());
        auto splice = [&](std::initializer_list<int> mid) {
            Word r = head;
            r.insert(r.end(), mid);
            r.insert(r.end(), tail.begin(), tail.end());
            return r;
        };
        if (b == 0) {
            // x_a x0 = q^{-2a} x0 x_a
            push(splice({0, a}), c * RatFunc::q_power(-2 * a));
        }
        else {
            // x_a x_{-a} = q^{-2a} x0^2 + q^{-a} x0
            push(splice({0, 0}), c * RatFunc::q_power(-2 * a));
            push(splice({0}), c * RatFunc::q_power(-a));
        }
    }
    return result;
}

AlgElem apply_aut(const Automorphism& s, const AlgElem& a) { return s.apply(a); }

RatFunc counit(const AlgElem& a) { return a.coeff(kOne); }

bool is_sigma_central(const AlgElem& a, const Automorphism& s)
{
    for (int n = -1; n <= 1; ++n) {
        AlgElem g = AlgElem::gen(n);
        if (mul(a, g) != mul(s.apply(g), a))
            return false;
    }
    return true;
}

std::vector<BasisIndex> basis_box(int max_i, int max_j)
{
    std::vector<BasisIndex> out;
    for (int i = 0; i <= max_i; ++i)
        for (int j = -max_j; j <= max_j; ++j)
            out.push_back({i, j});
    return out;
}

} // namespace qs2
