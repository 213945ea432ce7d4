#include "qs2/cochains.hpp"

#include "qs2/error.hpp"
#include "qs2/expr.hpp"

#include <map>
#include <mutex>
#include <unordered_map>

namespace qs2 {

struct Cochain::Node {
    Kind kind;
    int degree;
    Automorphism twist;
    std::string name;
    AlgElem element;                 // central, inner
    std::array<AlgElem, 3> vals{};   // derivation
    std::shared_ptr<const Node> left, right;  // cup

    // derivation values on basis elements
    mutable std::mutex memo_mutex;
    mutable std::map<BasisIndex, AlgElem> memo;

    Node(Kind k, int d, Automorphism t, std::string n)
        : kind(k), degree(d), twist(std::move(t)), name(std::move(n)) {}
};

namespace {

struct Relation {
    const char* text;
    Word lhs;
    // rhs as (coefficient exponent of q, word) pairs
    std::vector<std::pair<int, Word>> rhs;
};

const std::vector<Relation>& defining_relations()
{
    static const std::vector<Relation> rels = {
        {"x1*x0 = q^-2*x0*x1", {1, 0}, {{-2, {0, 1}}}},
        {"xm1*x0 = q^2*x0*xm1", {-1, 0}, {{2, {0, -1}}}},
        {"x1*xm1 = q^-2*x0^2 + q^-1*x0", {1, -1}, {{-2, {0, 0}}, {-1, {0}}}},
        {"xm1*x1 = q^2*x0^2 + q*x0", {-1, 1}, {{2, {0, 0}}, {1, {0}}}},
    };
    return rels;
}

AlgElem word_value(const Word& w)
{
    if (w.empty())
        return AlgElem(1);
    return mul_oracle(w, {});
}

std::string cochain_name(const std::string& name, const char* fallback)
{
    return name.empty() ? std::string(fallback) : name;
}

} // namespace

AlgElem derivation_on_word(const std::array<AlgElem, 3>& vals, const Automorphism& twist, const Word& w)
{
    // sum_k sigma(g_1 .. g_{k-1}) psi(g_k) g_{k+1} .. g_n
    AlgElem total;
    for (std::size_t k = 0; k < w.size(); ++k) {
        Word before(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
        Word after(w.begin() + static_cast<std::ptrdiff_t>(k) + 1, w.end());
        AlgElem term = mul(twist.apply(word_value(before)), vals[static_cast<std::size_t>(w[k] + 1)]);
        total += mul(term, word_value(after));
    }
    return total;
}

Cochain Cochain::central(AlgElem c, Automorphism twist, std::string name)
{
    auto n = std::make_shared<Node>(Kind::central, 0, std::move(twist), cochain_name(name, "central"));
    n->element = std::move(c);
    return Cochain(std::move(n));
}

Cochain Cochain::derivation(std::array<AlgElem, 3> vals, Automorphism twist, std::string name)
{
    for (const auto& rel : defining_relations()) {
        AlgElem lhs = derivation_on_word(vals, twist, rel.lhs);
        AlgElem rhs;
        for (const auto& [e, w] : rel.rhs)
            rhs += derivation_on_word(vals, twist, w) * RatFunc::q_power(e);
        if (lhs != rhs)
            throw ContractError("derivation does not respect the relation " + std::string(rel.text) + " (twist " +
                                twist.lambda().to_string() + ")");
    }
    auto n = std::make_shared<Node>(Kind::derivation, 1, std::move(twist), cochain_name(name, "derivation"));
    n->vals = std::move(vals);
    return Cochain(std::move(n));
}

Cochain Cochain::inner(AlgElem b, Automorphism twist, std::string name)
{
    if (name.empty())
        name = "inner:" + render(b) + "@" + twist.lambda().to_string();
    auto n = std::make_shared<Node>(Kind::inner, 1, std::move(twist), std::move(name));
    n->element = std::move(b);
    return Cochain(std::move(n));
}

Cochain Cochain::cup(const Cochain& phi, const Cochain& psi)
{
    auto n = std::make_shared<Node>(Kind::cup, phi.degree() + psi.degree(), psi.twist().after(phi.twist()),
                                    "cup(" + phi.name() + "," + psi.name() + ")");
    n->left = phi.node_;
    n->right = psi.node_;
    return Cochain(std::move(n));
}

Cochain::Kind Cochain::kind() const { return node_->kind; }
int Cochain::degree() const { return node_->degree; }
const Automorphism& Cochain::twist() const { return node_->twist; }
const std::string& Cochain::name() const { return node_->name; }

const AlgElem& Cochain::element() const
{
    if (node_->kind != Kind::central && node_->kind != Kind::inner)
        throw ContractError("cochain " + name() + " has no element");
    return node_->element;
}

const std::array<AlgElem, 3>& Cochain::generator_values() const
{
    if (node_->kind != Kind::derivation)
        throw ContractError("cochain " + name() + " is not a derivation");
    return node_->vals;
}

const AlgElem& Cochain::eval_basis(BasisIndex idx) const
{
    const Node& n = *node_;
    if (n.kind != Kind::derivation)
        throw ContractError("eval_basis needs a derivation");
    {
        std::lock_guard lock(n.memo_mutex);
        if (auto it = n.memo.find(idx); it != n.memo.end())
            return it->second;
    }
    AlgElem value;
    if (idx != kOne) {
        // Peel the leftmost generator g: psi(g w) = sigma(g) psi(w) + psi(g) w.
        int g = idx.i > 0 ? 0 : (idx.j > 0 ? 1 : -1);
        BasisIndex rest = idx.i > 0 ? BasisIndex{idx.i - 1, idx.j} : BasisIndex{0, idx.j - g};
        AlgElem ge = AlgElem::gen(g);
        value = mul(n.twist.apply(ge), eval_basis(rest));
        value += mul(n.vals[static_cast<std::size_t>(g + 1)], AlgElem::basis(rest));
    }
    std::lock_guard lock(n.memo_mutex);
    return n.memo.emplace(idx, std::move(value)).first->second;
}

AlgElem Cochain::eval(std::span<const AlgElem> args) const
{
    const Node& n = *node_;
    if (static_cast<int>(args.size()) != n.degree)
        throw ContractError("cochain " + n.name + " of degree " + std::to_string(n.degree) + " evaluated on " +
                            std::to_string(args.size()) + " arguments");
    switch (n.kind) {
    case Kind::central:
        return n.element;
    case Kind::derivation: {
        AlgElem r;
        for (const auto& [idx, c] : args[0].terms())
            r.add_scaled(eval_basis(idx), c);
        return r;
    }
    case Kind::inner:
        return mul(n.element, args[0]) - mul(n.twist.apply(args[0]), n.element);
    case Kind::cup: {
        Cochain l(n.left), r(n.right);
        auto m = static_cast<std::size_t>(l.degree());
        AlgElem lv = l.eval(args.subspan(0, m));
        if (lv.is_zero())
            return {};
        return mul(r.twist().apply(lv), r.eval(args.subspan(m)));
    }
    }
    throw ContractError("unknown cochain kind");
}

AlgElem Cochain::eval(std::initializer_list<AlgElem> args) const
{
    return eval(std::span<const AlgElem>(args.begin(), args.size()));
}

Cochain make_derivation(std::array<AlgElem, 3> vals, const Automorphism& twist)
{
    return Cochain::derivation(std::move(vals), twist);
}

Cochain partial(int i)
{
    static const Cochain d[3] = {
        Cochain::derivation({1 + (RatFunc::q() + RatFunc::q_power(-1)) * AlgElem::gen(0),
                             RatFunc::q_power(-1) * AlgElem::gen(1), AlgElem()},
                            Automorphism(RatFunc::q_power(-2)), "dm1"),
        Cochain::derivation({-AlgElem::gen(-1), AlgElem(), AlgElem::gen(1)}, Automorphism::identity(), "d0"),
        Cochain::derivation({AlgElem(), RatFunc::q() * AlgElem::gen(-1),
                             1 + (RatFunc::q() + RatFunc::q_power(-1)) * AlgElem::gen(0)},
                            Automorphism(RatFunc::q_power(-2)), "d1"),
    };
    if (i < -1 || i > 1)
        throw ContractError("partial index must be -1, 0 or 1");
    return d[i + 1];
}

Cochain inner(const AlgElem& b, const Automorphism& twist) { return Cochain::inner(b, twist); }

Cochain cup(const Cochain& phi, const Cochain& psi) { return Cochain::cup(phi, psi); }

AlgElem eval(const Cochain& phi, std::span<const AlgElem> args) { return phi.eval(args); }

Chain cap(const Chain& c, const Cochain& phi)
{
    int m = phi.degree();
    if (m > c.degree())
        throw ContractError("cap of a degree " + std::to_string(c.degree()) + " chain with a degree " +
                            std::to_string(m) + " cochain");
    const Automorphism& tau = phi.twist();
    Chain out(c.degree() - m, tau.after(c.twist()));
    std::vector<AlgElem> args(static_cast<std::size_t>(m));
    for (const auto& [t, coeff] : c.terms()) {
        for (int k = 0; k < m; ++k)
            args[static_cast<std::size_t>(k)] = AlgElem::basis(t[static_cast<std::size_t>(k) + 1]);
        AlgElem v = phi.eval(args);
        if (v.is_zero())
            continue;
        AlgElem head = mul(tau.apply(AlgElem::basis(t[0])), v);
        for (const auto& [idx, hc] : head.terms()) {
            Tensor r;
            r.push_back(idx);
            for (std::size_t k = static_cast<std::size_t>(m) + 1; k < t.size(); ++k)
                r.push_back(t[k]);
            out.add_term(r, hc * coeff);
        }
    }
    return out;
}

namespace {

// Sparse Gaussian elimination over Q(q). Rows map column -> coefficient.
struct LinearSystem {
    std::vector<std::map<int, RatFunc>> rows;
    std::vector<RatFunc> rhs;

    // Returns one solution (free columns zero) or nullopt if inconsistent.
    std::optional<std::vector<RatFunc>> solve(int ncols)
    {
        std::vector<int> pivot_row_of(static_cast<std::size_t>(ncols), -1);
        std::vector<bool> used(rows.size(), false);
        for (int col = 0; col < ncols; ++col) {
            int piv = -1;
            std::size_t best = 0;
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (used[r] || !rows[r].count(col))
                    continue;
                if (piv < 0 || rows[r].size() < best) {
                    piv = static_cast<int>(r);
                    best = rows[r].size();
                }
            }
            if (piv < 0)
                continue;
            auto pr = static_cast<std::size_t>(piv);
            used[pr] = true;
            pivot_row_of[static_cast<std::size_t>(col)] = piv;
            RatFunc inv = rows[pr].at(col).inverse();
            for (auto& [k, v] : rows[pr])
                v *= inv;
            rhs[pr] *= inv;
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (r == pr)
                    continue;
                auto it = rows[r].find(col);
                if (it == rows[r].end())
                    continue;
                RatFunc f = it->second;
                for (const auto& [k, v] : rows[pr]) {
                    auto [jt, inserted] = rows[r].try_emplace(k, RatFunc());
                    jt->second -= f * v;
                    if (jt->second.is_zero())
                        rows[r].erase(jt);
                }
                rhs[r] -= f * rhs[pr];
            }
        }
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (rows[r].empty() && !rhs[r].is_zero())
                return std::nullopt;
        std::vector<RatFunc> x(static_cast<std::size_t>(ncols));
        for (int col = 0; col < ncols; ++col) {
            int pr = pivot_row_of[static_cast<std::size_t>(col)];
            if (pr >= 0)
                x[static_cast<std::size_t>(col)] = rhs[static_cast<std::size_t>(pr)];
        }
        return x;
    }
};

} // namespace

std::optional<AlgElem> solve_inner(const Cochain& target, int max_i, int max_j)
{
    if (target.degree() != 1)
        throw ContractError("solve_inner needs a degree 1 cochain");
    const Automorphism& sigma = target.twist();
    std::vector<BasisIndex> unknowns = basis_box(max_i, max_j);

    LinearSystem sys;
    for (int g = -1; g <= 1; ++g) {
        AlgElem ge = AlgElem::gen(g);
        AlgElem sg = sigma.apply(ge);
        std::map<BasisIndex, std::size_t> row_of;
        auto row = [&](BasisIndex idx) -> std::size_t {
            auto [it, inserted] = row_of.try_emplace(idx, sys.rows.size());
            if (inserted) {
                sys.rows.emplace_back();
                sys.rhs.emplace_back();
            }
            return it->second;
        };
        for (std::size_t u = 0; u < unknowns.size(); ++u) {
            AlgElem eu = AlgElem::basis(unknowns[u]);
            AlgElem col = mul(eu, ge) - mul(sg, eu);
            for (const auto& [idx, c] : col.terms())
                sys.rows[row(idx)].emplace(static_cast<int>(u), c);
        }
        AlgElem tg = target.eval({ge});
        for (const auto& [idx, c] : tg.terms())
            sys.rhs[row(idx)] += c;
    }

    auto x = sys.solve(static_cast<int>(unknowns.size()));
    if (!x)
        return std::nullopt;
    AlgElem b;
    for (std::size_t u = 0; u < unknowns.size(); ++u)
        b.add_term(unknowns[u], (*x)[u]);
    return b;
}

} // namespace qs2
