#include "qs2/verify.hpp"

#include "qs2/cochains.hpp"
#include "qs2/error.hpp"
#include "qs2/expr.hpp"
#include "qs2/homology.hpp"
#include "qs2/volume.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>

namespace qs2 {

namespace {

RatFunc q(int n) { return RatFunc::q_power(n); }

Automorphism twist_q(int n) { return Automorphism(q(n)); }

std::string dname(int i) { return i == -1 ? "dm1" : (i == 0 ? "d0" : "d1"); }

std::string tensor_text(const Tensor& t)
{
    std::string s = "(";
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (k)
            s += ", ";
        s += t[k] == kOne ? std::string("1") : render_monomial(t[k]);
    }
    return s + ")";
}

// Twists used wherever a check samples "generic and special" automorphisms.
std::vector<Automorphism> sample_twists()
{
    return {Automorphism::identity(), Automorphism::modular(), twist_q(-2), twist_q(4), Automorphism(RatFunc(3))};
}

// Collects the outcome of one check. The first failure is kept as witness.
class Outcome {
public:
    void expect(bool ok, const std::function<std::string()>& witness)
    {
        if (ok || failed_)
            return;
        failed_ = true;
        witness_ = witness();
    }
    bool failed() const { return failed_; }
    const std::string& witness() const { return witness_; }

private:
    bool failed_ = false;
    std::string witness_;
};

void finish(CheckResult& r, const Outcome& o, CheckStatus success)
{
    if (o.failed()) {
        r.status = CheckStatus::fail;
        r.witness = o.witness();
    } else {
        r.status = success;
    }
}

// ---------------------------------------------------------------------------

void check_bb(CheckResult& r, Truncation t)
{
    Outcome o;
    std::size_t n = 0;
    for (const Automorphism& s : sample_twists()) {
        for (int deg = 2; deg <= 3 && !o.failed(); ++deg) {
            for_each_tensor(deg + 1, t.max_i, t.max_j, [&](const Tensor& x) {
                if (o.failed())
                    return;
                ++n;
                Chain bb = boundary(boundary(basis_chain(x, s)));
                o.expect(bb.is_zero(), [&] {
                    return "b(b" + tensor_text(x) + ") = " + bb.to_string() + " at twist " + s.lambda().to_string();
                });
            });
        }
    }
    r.notes.push_back(std::to_string(n) + " basis chains of degrees 2 and 3, twists 1, q^2, q^-2, q^4, 3");
    finish(r, o, CheckStatus::bounded_pass);
}

void check_fundamental_cycle(CheckResult& r, Truncation)
{
    Outcome o;
    Chain b = boundary(fundamental_class());
    o.expect(b.is_zero(), [&] { return "b(dA) = " + b.to_string(); });
    finish(r, o, CheckStatus::pass);
}

void check_x0_central(CheckResult& r, Truncation t)
{
    Outcome o;
    int top = 2 * t.max_i;
    AlgElem p(1);
    for (int i = 0; i <= top && !o.failed(); ++i) {
        o.expect(is_sigma_central(p, twist_q(2 * i)),
                 [&] { return "x0^" + std::to_string(i) + " is not sigma-central at q^" + std::to_string(2 * i); });
        o.expect(!is_sigma_central(p, twist_q(2 * i + 2)),
                 [&] { return "x0^" + std::to_string(i) + " is also central at q^" + std::to_string(2 * i + 2); });
        p = p * AlgElem::gen(0);
    }
    // Commuting with x0 forces weight zero: e -> e x0 - x0 e sends the basis
    // elements of nonzero weight to distinct basis elements, nonzero multiples.
    std::set<BasisIndex> images;
    for (BasisIndex e : basis_box(t.max_i, t.max_j)) {
        if (e.j == 0)
            continue;
        AlgElem c = AlgElem::basis(e) * AlgElem::gen(0) - AlgElem::gen(0) * AlgElem::basis(e);
        bool single = c.size() == 1 && images.insert(c.terms().begin()->first).second;
        o.expect(single, [&] { return "[" + render_monomial(e) + ", x0] = " + render(c); });
    }
    // Among polynomials in x0 the twist determines the power.
    for (int i = 0; i <= top; ++i)
        for (int k = 0; k <= top; ++k) {
            AlgElem xk = AlgElem::basis({k, 0});
            o.expect(is_sigma_central(xk, twist_q(2 * i)) == (i == k), [&] {
                return "x0^" + std::to_string(k) + " centrality at q^" + std::to_string(2 * i) + " is wrong";
            });
        }
    r.notes.push_back("the twisted-central elements in the box are exactly the multiples of x0^i at twist q^(2i)");
    finish(r, o, CheckStatus::bounded_pass);
}

// Closed forms of b(e_ij (x) x_k) at twist lambda.
AlgElem closed_form_b(int i, int j, int k, const RatFunc& lam)
{
    RatFunc one(1);
    RatFunc li = lam.inverse();
    if (k == 0)
        return AlgElem::basis({i + 1, j}, q(-2 * j) - one);
    if (k == -1) {
        if (j <= 0)
            return AlgElem::basis({i, j - 1}, one - li * q(2 * i));
        return AlgElem::basis({i + 2, j - 1}, q(-4 * j + 2) - li * q(2 * i + 2)) +
               AlgElem::basis({i + 1, j - 1}, q(-2 * j + 1) - li * q(2 * i + 1));
    }
    if (j >= 0)
        return AlgElem::basis({i, j + 1}, one - lam * q(-2 * i));
    return AlgElem::basis({i + 2, j + 1}, q(-4 * j - 2) - lam * q(-2 * i - 2)) +
           AlgElem::basis({i + 1, j + 1}, q(-2 * j - 1) - lam * q(-2 * i - 1));
}

void check_b_closed_forms(CheckResult& r, Truncation t)
{
    Outcome o;
    for (const Automorphism& s : sample_twists())
        for (BasisIndex e : basis_box(t.max_i, t.max_j))
            for (int k = -1; k <= 1; ++k) {
                Tensor x{e, BasisIndex{0, k}};
                if (k == 0)
                    x[1] = BasisIndex{1, 0};
                AlgElem got = as_element(boundary(basis_chain(x, s)));
                AlgElem want = closed_form_b(e.i, e.j, k, s.lambda());
                o.expect(got == want, [&] {
                    return "b" + tensor_text(x) + " at twist " + s.lambda().to_string() + ": computed " + render(got) +
                           ", closed form " + render(want);
                });
            }
    finish(r, o, CheckStatus::bounded_pass);
}

std::vector<H0Label> labels_for(const Automorphism& s, int max_power)
{
    H0Basis b = h0_basis(s);
    std::vector<H0Label> out{H0Label::unit()};
    if (b.x_powers)
        for (int j = 1; j <= max_power; ++j) {
            out.push_back(H0Label::x(1, j));
            out.push_back(H0Label::x(-1, j));
        }
    if (b.x0)
        out.push_back(H0Label::x0());
    if (b.x0_power)
        out.push_back(H0Label::x0_pow(*b.x0_power));
    return out;
}

AlgElem representative(const H0Label& l)
{
    switch (l.kind) {
    case H0Label::Kind::one:
        return AlgElem(1);
    case H0Label::Kind::x_power:
        return AlgElem::basis({0, l.sign * l.power});
    case H0Label::Kind::x0:
        return AlgElem::gen(0);
    case H0Label::Kind::x0_power:
        return AlgElem::basis({l.power, 0});
    }
    return {};
}

void check_traces(CheckResult& r, Truncation t)
{
    Outcome o;
    std::vector<Automorphism> twists = sample_twists();
    twists.push_back(twist_q(6));
    std::vector<BasisIndex> box = basis_box(t.max_i, t.max_j);
    for (const Automorphism& s : twists) {
        std::vector<H0Label> labels = labels_for(s, t.max_j + 1);
        for (const H0Label& l : labels) {
            TraceFunctional tr = make_trace(l, s);
            for (BasisIndex a : box)
                for (BasisIndex b : box) {
                    if (o.failed())
                        break;
                    AlgElem ea = AlgElem::basis(a), eb = AlgElem::basis(b);
                    RatFunc lhs = trace_eval(tr, ea * eb);
                    RatFunc rhs = trace_eval(tr, s.apply(eb) * ea);
                    o.expect(lhs == rhs, [&] {
                        return "trace " + l.to_string() + " at twist " + s.lambda().to_string() + " on " +
                               render_monomial(a) + ", " + render_monomial(b) + ": " + lhs.to_string() + " vs " +
                               rhs.to_string();
                    });
                }
            for (BasisIndex e : box)
                for (int k = -1; k <= 1; ++k) {
                    Tensor x{e, k == 0 ? BasisIndex{1, 0} : BasisIndex{0, k}};
                    RatFunc v = trace_eval(tr, as_element(boundary(basis_chain(x, s))));
                    o.expect(v.is_zero(), [&] {
                        return "trace " + l.to_string() + " of b" + tensor_text(x) + " = " + v.to_string();
                    });
                }
            for (const H0Label& m : labels) {
                RatFunc v = trace_eval(tr, representative(m));
                RatFunc want = l == m ? RatFunc(1) : RatFunc();
                o.expect(v == want, [&] {
                    return "trace " + l.to_string() + " on " + m.to_string() + " at twist " + s.lambda().to_string() +
                           " = " + v.to_string();
                });
            }
        }
    }
    r.notes.push_back("twists 1, q^2, q^-2, q^4, q^6, 3");
    finish(r, o, CheckStatus::bounded_pass);
}

void check_x0_cap_action(CheckResult& r, Truncation t)
{
    Outcome o;
    Cochain x0 = Cochain::central(AlgElem::gen(0), Automorphism::modular(), "x0");
    auto capped = [&](const AlgElem& a, const Automorphism& s) {
        return h0_reduce(cap(expand_tensor({a}, s), x0));
    };
    for (int j = 1; j <= t.max_j + 1; ++j)
        for (int sign : {1, -1}) {
            H0Coordinates c = capped(AlgElem::basis({0, sign * j}), Automorphism::identity());
            o.expect(c.empty(), [&] {
                return "[" + render_monomial({0, sign * j}) + "] cap x0 = " + to_string(c);
            });
        }
    // [1] cap x0 = [x0] vanishes when it lands at q^{2k}, k >= 2.
    for (int k = 1; k <= t.max_i + 1; ++k) {
        H0Coordinates c = capped(AlgElem(1), twist_q(2 * k));
        o.expect(c.empty(), [&] { return "[1] cap x0 at twist q^" + std::to_string(2 * k) + " = " + to_string(c); });
    }
    // [x0] cap x0 = [x0^2] = -q(1-lambda)/(q^2-lambda) [x0].
    for (const RatFunc& lam : {RatFunc(1), RatFunc(3), q(-2), q(-4), RatFunc(1) / RatFunc(2)}) {
        Automorphism s(lam);
        H0Coordinates c = capped(AlgElem::gen(0), s);
        RatFunc want = -(q(1) * (RatFunc(1) - lam)) / (q(2) - lam);
        H0Coordinates expected;
        if (!want.is_zero())
            expected[H0Label::x0()] = want;
        o.expect(c == expected,
                 [&] { return "[x0] cap x0 at twist " + lam.to_string() + " = " + to_string(c); });
    }
    finish(r, o, CheckStatus::pass);
}

void check_derivations(CheckResult& r, Truncation t)
{
    Outcome o;
    std::vector<BasisIndex> box = basis_box(t.max_i, t.max_j);
    for (int i = -1; i <= 1; ++i) {
        Cochain d = partial(i);  // construction checks the defining relations
        const Automorphism& s = d.twist();
        for (BasisIndex a : box)
            for (BasisIndex b : box) {
                if (o.failed())
                    break;
                AlgElem ea = AlgElem::basis(a), eb = AlgElem::basis(b);
                AlgElem lhs = d.eval({ea * eb});
                AlgElem rhs = s.apply(ea) * d.eval({eb}) + d.eval({ea}) * eb;
                o.expect(lhs == rhs, [&] {
                    return dname(i) + " fails Leibniz on " + render_monomial(a) + ", " + render_monomial(b);
                });
            }
    }
    finish(r, o, CheckStatus::bounded_pass);
}

void check_innerness(CheckResult& r, Truncation)
{
    Outcome o;
    Cochain x0 = Cochain::central(AlgElem::gen(0), Automorphism::modular(), "x0");
    RatFunc k = (q(1) - q(-1)).inverse();
    struct Case {
        int i;
        AlgElem want;
    };
    for (const Case& c : {Case{1, AlgElem::gen(-1) * k}, Case{-1, AlgElem::gen(1) * -k}}) {
        Cochain target = cup(partial(c.i), x0);
        std::optional<AlgElem> b = solve_inner(target, 3, 3);
        o.expect(b && *b == c.want, [&] {
            return dname(c.i) + " cup x0: " + (b ? "solved by " + render(*b) : std::string("no solution")) +
                   ", expected " + render(c.want);
        });
        if (b)
            for (int g = -1; g <= 1; ++g) {
                AlgElem x = AlgElem::gen(g);
                o.expect(inner(*b, target.twist()).eval({x}) == target.eval({x}),
                         [&] { return dname(c.i) + " cup x0 differs from its solution on a generator"; });
            }
    }
    std::optional<AlgElem> b0 = solve_inner(cup(partial(0), x0), 6, 6);
    o.expect(!b0, [&] { return "d0 cup x0 = inner(" + render(*b0) + ")"; });
    r.notes.push_back("d0 cup x0 has no inner solution supported on the box (6,6)");
    finish(r, o, CheckStatus::bounded_pass);
}

// Chain-level cap tables as displayed: degree 1 rows are coeff, a0, a1.
struct Row {
    const char* coeff;
    const char* a0;
    const char* a1;
};

const std::map<int, std::vector<Row>>& degree_one_displays()
{
    static const std::map<int, std::vector<Row>> d = {
        {0,
         {{"2*q^-2", "xm1*x0", "x1"},
          {"2*q^2", "x1*x0", "xm1"},
          {"-2*(q^2+q^-2)", "x0^2", "x0"},
          {"q^-1", "xm1", "x1"},
          {"q", "x1", "xm1"},
          {"-2*(q+q^-1)", "x0", "x0"}}},
        {-1,
         {{"-2*q^-1", "x1^2", "xm1"},
          {"-2*q^-1", "x0^2", "x1"},
          {"2*(q^3+q^-3)", "x1*x0", "x0"},
          {"-(1+q^-2)", "x0", "x1"},
          {"1+q^-2", "x1", "x0"},
          {"-q^-1", "1", "x1"}}},
        {1,
         {{"2*q", "xm1^2", "x1"},
          {"2*q", "x0^2", "xm1"},
          {"-2*(q^3+q^-3)", "xm1*x0", "x0"},
          {"q^2+1", "x0", "xm1"},
          {"-q^2-1", "xm1", "x0"},
          {"q", "1", "xm1"}}},
    };
    return d;
}

const std::map<std::pair<int, int>, const char*>& degree_zero_displays()
{
    static const std::map<std::pair<int, int>, const char*> d = {
        {{0, 0}, "2*(q^2-q^-2)*x0^3 + 3*(q-q^-1)*x0^2"},
        {{0, -1}, "2*(-q^5+q^-1)*x1*x0^2 + (-2*q^2+1+q^-2*1)*x1*x0 + q^-1*x1"},
        {{0, 1}, "2*(q-q^-5)*xm1*x0^2 + (q^2+1-2*q^-2)*xm1*x0 + q*xm1"},
        {{-1, 0}, "2*(q^-3-q^3)*x1*x0^2 + (-q^2-1+2*q^-2)*x1*x0 - q^-1*x1"},
        {{-1, -1}, "2*(q^2-q^-6)*x1^2*x0 + (q^-3-q^-5)*x1^2"},
        {{-1, 1}, "2*(q^-8-1)*x0^3 + (-q-2*q^-1+q^-5+2*q^-7)*x0^2 + (-2-q^-2+q^-4)*x0 - q^-1"},
        {{1, 0}, "2*(q^3-q^-3)*xm1*x0^2 + (2*q^2-1-q^-2)*xm1*x0 - q*xm1"},
        {{1, -1}, "2*(1-q^8)*x0^3 + (-2*q^7-q^5+2*q+q^-1)*x0^2 + (-q^4+q^2+2)*x0 + q"},
        {{1, 1}, "2*(q^6-q^-2)*xm1^2*x0 + (q^5-q^3)*xm1^2"},
    };
    return d;
}

struct TypoEntry {
    const char* display;
    const char* note;
};

// Known textual defects of the displays. A mismatch on a listed display is
// tolerated (pass with notes) provided the homology-level table still holds.
const std::vector<TypoEntry>& typo_ledger()
{
    static const std::vector<TypoEntry> t = {
        {"(dA cap d0) cap dm1",
         "the x1*x0 coefficient is printed as (-2q^2+1+q^-2 1); the stray 1 is read as a factor, which gives the "
         "recomputed value"},
    };
    return t;
}

Chain cap_i(int i) { return cap(fundamental_class(), partial(i)); }

Chain cap_ij(int i, int j) { return cap(cap_i(i), partial(j)); }

std::string pair_key(int i, int j) { return "(dA cap " + dname(i) + ") cap " + dname(j); }

bool homology_table_holds();

void check_cap_displays(CheckResult& r, Truncation)
{
    Outcome o;
    std::vector<std::string> mismatches;
    for (const auto& [i, rows] : degree_one_displays()) {
        Chain got = cap_i(i);
        Chain want(1, got.twist());
        for (const Row& row : rows)
            want += expand_tensor({parse(row.a0), parse(row.a1)}, got.twist()) * parse_scalar(row.coeff);
        if (got != want)
            mismatches.push_back("dA cap " + dname(i) + ": computed " + got.to_string());
        Chain b = boundary(got);
        o.expect(b.is_zero(), [&] { return "dA cap " + dname(i) + " is not a cycle: b = " + b.to_string(); });
    }
    for (const auto& [ij, text] : degree_zero_displays()) {
        AlgElem got = as_element(cap_ij(ij.first, ij.second));
        if (got != parse(text))
            mismatches.push_back(pair_key(ij.first, ij.second) + ": computed " + render(got));
    }
    for (const TypoEntry& e : typo_ledger())
        r.notes.push_back(std::string(e.display) + ": " + e.note);
    bool tolerated = true;
    for (const std::string& m : mismatches) {
        bool listed = std::any_of(typo_ledger().begin(), typo_ledger().end(), [&](const TypoEntry& e) {
            std::string key = e.display;
            return m.compare(0, key.size(), key) == 0 && m[key.size()] == ':';
        });
        tolerated = tolerated && listed;
    }
    o.expect(mismatches.empty() || (tolerated && homology_table_holds()), [&] { return mismatches.front(); });
    finish(r, o, mismatches.empty() ? CheckStatus::pass : CheckStatus::pass_with_notes);
    if (!o.failed() && !mismatches.empty()) {
        r.witness = mismatches.front();
        for (const std::string& m : mismatches)
            r.notes.push_back("tolerated deviation, " + m);
    }
}

H0Coordinates expected_table_entry(int i, int j)
{
    H0Coordinates c;
    if (i == j)
        return c;
    if (i == 0 && j == -1)
        c[H0Label::x(1, 1)] = q(-1);
    else if (i == -1 && j == 0)
        c[H0Label::x(1, 1)] = -q(-1);
    else if (i == 0 && j == 1)
        c[H0Label::x(-1, 1)] = q(1);
    else if (i == 1 && j == 0)
        c[H0Label::x(-1, 1)] = -q(1);
    else if (i == 1 && j == -1) {
        c[H0Label::unit()] = q(1);
        c[H0Label::x0()] = q(2) + RatFunc(1);
    } else {
        c[H0Label::unit()] = -q(-1);
        c[H0Label::x0()] = -(RatFunc(1) + q(-2));
    }
    return c;
}

bool homology_table_holds()
{
    for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j)
            if (h0_reduce(cap_ij(i, j)) != expected_table_entry(i, j))
                return false;
    return true;
}

void check_homology_table(CheckResult& r, Truncation)
{
    Outcome o;
    std::map<std::pair<int, int>, H0Coordinates> got;
    for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j) {
            H0Coordinates c = h0_reduce(cap_ij(i, j));
            got[{i, j}] = c;
            H0Coordinates want = expected_table_entry(i, j);
            o.expect(c == want, [&] {
                return pair_key(i, j) + " = " + to_string(c) + ", expected " + to_string(want);
            });
        }
    // The -q^2 relation between the two mixed d1/dm1 entries.
    H0Coordinates scaled;
    for (const auto& [l, v] : got[{-1, 1}])
        scaled[l] = -q(2) * v;
    o.expect(scaled == got[{1, -1}], [&] { return "(dA cap d1) cap dm1 is not -q^2 (dA cap dm1) cap d1"; });
    finish(r, o, CheckStatus::pass);
}

void check_q_exterior(CheckResult& r, Truncation)
{
    Outcome o;
    Chain dA = fundamental_class();
    for (int i = -1; i <= 1; ++i)
        for (int j = i; j <= 1; ++j) {
            Chain c = cap(dA, cup(partial(i), partial(j))) + cap(dA, cup(partial(j), partial(i))) * q(2 * i * j);
            H0Coordinates h = h0_reduce(c);
            o.expect(h.empty(), [&] {
                return "[dA cap (" + dname(i) + " cup " + dname(j) + " + q^" + std::to_string(2 * i * j) + " " +
                       dname(j) + " cup " + dname(i) + ")] = " + to_string(h);
            });
        }
    finish(r, o, CheckStatus::pass);
}

void check_volume(CheckResult& r, Truncation t)
{
    Outcome o;
    Chain dA = fundamental_class();
    for (PhiVariant v : {PhiVariant::delta, PhiVariant::efd, PhiVariant::cap}) {
        RatFunc x = phi(dA, v);
        o.expect(x == RatFunc(1), [&] { return "phi(dA) = " + x.to_string(); });
    }
    for (int s : {1, -1}) {
        RatFunc x = phi_pm(s, dA);
        o.expect(x == RatFunc(1), [&] { return std::string(s > 0 ? "phi_+" : "phi_-") + "(dA) = " + x.to_string(); });
    }
    const Automorphism mod = Automorphism::modular();
    std::optional<Tensor> differ;
    for_each_tensor(3, t.max_i, t.max_j, [&](const Tensor& x) {
        if (o.failed())
            return;
        Chain c = basis_chain(x, mod);
        RatFunc d = phi(c, PhiVariant::delta);
        RatFunc e = phi(c, PhiVariant::efd);
        RatFunc k = phi(c, PhiVariant::cap);
        o.expect(d == e && e == k, [&] {
            return "variants differ on " + tensor_text(x) + ": " + d.to_string() + ", " + e.to_string() + ", " +
                   k.to_string();
        });
        if (!differ && phi_pm(1, c) != d)
            differ = x;
    });
    if (differ) {
        Chain c = basis_chain(*differ, mod);
        r.notes.push_back("chain level: phi" + tensor_text(*differ) + " = " + phi(c, PhiVariant::delta).to_string() +
                          " but phi_+ gives " + phi_pm(1, c).to_string());
    }
    // On boundaries all three agree (zero); a smaller box keeps phi_pm cheap.
    int bi = std::min(t.max_i, 2), bj = std::min(t.max_j, 2);
    for_each_tensor(4, bi, bj, [&](const Tensor& x) {
        if (o.failed())
            return;
        Chain b = boundary(basis_chain(x, mod));
        RatFunc v[3] = {phi(b, PhiVariant::delta), phi_pm(1, b), phi_pm(-1, b)};
        o.expect(v[0].is_zero() && v[1].is_zero() && v[2].is_zero(), [&] {
            return "phi, phi_+, phi_- on b" + tensor_text(x) + ": " + v[0].to_string() + ", " + v[1].to_string() +
                   ", " + v[2].to_string();
        });
    });
    r.notes.push_back("phi, phi_+, phi_- vanish on b of the basis 3-chains of the box (" + std::to_string(bi) + "," +
                      std::to_string(bj) + ")");
    finish(r, o, CheckStatus::bounded_pass);
}

void check_volume_closed_form(CheckResult& r, Truncation t)
{
    Outcome o;
    const Tensor hit{kOne, BasisIndex{0, 1}, BasisIndex{0, -1}};
    const Automorphism mod = Automorphism::modular();
    for_each_tensor(3, t.max_i, t.max_j, [&](const Tensor& x) {
        if (o.failed())
            return;
        Chain c = basis_chain(x, mod);
        RatFunc want = x == hit ? q(-1) : RatFunc();
        for (PhiVariant v : {PhiVariant::efd, PhiVariant::cap}) {
            RatFunc got = phi(c, v);
            o.expect(got == want, [&] { return "phi" + tensor_text(x) + " = " + got.to_string(); });
        }
    });
    finish(r, o, CheckStatus::bounded_pass);
}

void check_cyclicity(CheckResult& r, Truncation t)
{
    Outcome o;
    const Automorphism mod = Automorphism::modular();
    Chain w = basis_chain({kOne, BasisIndex{0, 1}, BasisIndex{0, -1}}, mod);
    RatFunc defect = phi(cyclic_t(w), PhiVariant::delta) - phi(w, PhiVariant::delta);
    o.expect(defect == -q(-1), [&] { return "phi(t(1,x1,xm1)) - phi(1,x1,xm1) = " + defect.to_string(); });
    RatFunc e = eta(w);
    o.expect(e == -q(-1), [&] { return "eta(1,x1,xm1) = " + e.to_string(); });

    CyclicityReport rep = is_cyclic(Functional2::phi_plus_eta, t.max_i, t.max_j);
    o.expect(rep.cyclic(), [&] { return rep.to_string(); });
    r.notes.push_back("phi + eta is cyclic on " + std::to_string(rep.chains_checked) + " basis 2-chains");

    CyclicityReport three = is_cyclic(Functional2::phi_plus_eta_three_point, std::min(t.max_i, 2),
                                      std::min(t.max_j, 2), 1);
    if (!three.cyclic()) {
        const CyclicityViolation& v = three.violations.front();
        r.notes.push_back("with phi_2 supported on (1,x0), (1,x0^2), (x0,x0) only, phi + eta is not cyclic: " +
                          std::string(v.kind == CyclicityViolation::Kind::t_invariance ? "t-defect " : "value ") +
                          v.defect.to_string() + " at " + tensor_text(v.witness));
    }
    finish(r, o, CheckStatus::bounded_pass);
}

void check_eta_trivial(CheckResult& r, Truncation t)
{
    Outcome o;
    RatFunc v = eta(fundamental_class());
    o.expect(v.is_zero(), [&] { return "eta(dA) = " + v.to_string(); });
    const Automorphism mod = Automorphism::modular();
    std::size_t n = 0;
    for_each_tensor(4, t.max_i, t.max_j, [&](const Tensor& x) {
        if (o.failed())
            return;
        ++n;
        RatFunc e = eta(boundary(basis_chain(x, mod)));
        o.expect(e.is_zero(), [&] { return "eta(b" + tensor_text(x) + ") = " + e.to_string(); });
    });
    r.notes.push_back("eta vanishes on dA and on b of " + std::to_string(n) + " basis 3-chains");
    finish(r, o, CheckStatus::bounded_pass);
}

struct CheckDef {
    const char* name;
    const char* identity;
    void (*run)(CheckResult&, Truncation);
};

const std::vector<CheckDef>& registry()
{
    static const std::vector<CheckDef> defs = {
        {"C1", "b o b = 0 on basis chains of degrees 2 and 3", check_bb},
        {"C2", "the fundamental class dA is a cycle: b(dA) = 0", check_fundamental_cycle},
        {"C3", "x0^i is sigma_{q^{2i}}-central and the twisted centre is generated by x0", check_x0_central},
        {"C4", "closed forms of b(e_ij (x) x_k) for k = -1, 0, 1", check_b_closed_forms},
        {"C5", "twisted traces: int ab = int sigma(b)a, int o b = 0, duality with the H_0 basis", check_traces},
        {"C6", "cap action of x0 on H_0: [x_{+-1}^j] cap x0 = 0, [x0^i] cap x0 = [x0^{i+1}]", check_x0_cap_action},
        {"C7", "d_{-1}, d_0, d_1 are well-defined twisted derivations", check_derivations},
        {"C8", "d_{+-1} cup x0 are inner, d_0 cup x0 is not", check_innerness},
        {"C9", "chain-level caps of dA with d_i and d_i, d_j", check_cap_displays},
        {"C10", "homology-level table ([dA] cap [d_i]) cap [d_j]", check_homology_table},
        {"C11", "q-exterior relations [d_i] cup [d_j] = -q^{2ij} [d_j] cup [d_i] on [dA]", check_q_exterior},
        {"C12", "volume functional: three variants agree, phi(dA) = phi_+(dA) = phi_-(dA) = 1", check_volume},
        {"C13", "phi(e_ij (x) e_kl (x) e_mn) = q^-1 exactly at (1, x1, xm1), else 0", check_volume_closed_form},
        {"C14", "phi is not cyclic; phi + eta is cyclic", check_cyclicity},
        {"C15", "eta vanishes on cycles and on boundaries", check_eta_trivial},
    };
    return defs;
}

const CheckDef& find_check(const std::string& name)
{
    for (const CheckDef& d : registry())
        if (name == d.name)
            return d;
    throw ContractError("unknown check '" + name + "' (expected C1 .. C" + std::to_string(registry().size()) + ")");
}

} // namespace

Truncation parse_truncation(const std::string& text)
{
    auto comma = text.find(',');
    auto number = [&](const std::string& s, std::size_t pos) {
        if (s.empty() || s.size() > 4 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw ParseError("truncation must be I,J with nonnegative integers, got '" + text + "'", pos);
        return std::stoi(s);
    };
    if (comma == std::string::npos)
        throw ParseError("truncation must be I,J, got '" + text + "'", 0);
    return {number(text.substr(0, comma), 0), number(text.substr(comma + 1), comma + 1)};
}

Truncation truncation_from_env(Truncation fallback)
{
    const char* env = std::getenv("QS2_TRUNCATION");
    if (!env || !*env)
        return fallback;
    try {
        return parse_truncation(env);
    } catch (const ParseError&) {
        return fallback;
    }
}

std::string status_name(CheckStatus s)
{
    switch (s) {
    case CheckStatus::pass:
        return "pass";
    case CheckStatus::bounded_pass:
        return "bounded-pass";
    case CheckStatus::pass_with_notes:
        return "pass-with-notes";
    case CheckStatus::fail:
        return "fail";
    }
    return "?";
}

const std::vector<std::string>& check_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const CheckDef& d : registry())
            n.emplace_back(d.name);
        return n;
    }();
    return names;
}

const std::string& check_identity(const std::string& name)
{
    static const std::map<std::string, std::string> ids = [] {
        std::map<std::string, std::string> m;
        for (const CheckDef& d : registry())
            m[d.name] = d.identity;
        return m;
    }();
    find_check(name);
    return ids.at(name);
}

std::vector<std::string> parse_selection(const std::string& text)
{
    if (text == "all")
        return check_names();
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        find_check(item);
        out.push_back(item);
    }
    return out;
}

std::vector<CheckResult> run_suite(const std::vector<std::string>& selection, Truncation t)
{
    std::set<std::string> wanted;
    for (const std::string& s : selection) {
        find_check(s);
        wanted.insert(s);
    }
    std::vector<CheckResult> out;
    for (const CheckDef& d : registry()) {
        if (!wanted.count(d.name))
            continue;
        CheckResult r;
        r.name = d.name;
        r.identity = d.identity;
        auto start = std::chrono::steady_clock::now();
        try {
            d.run(r, t);
        } catch (const Error& e) {
            r.status = CheckStatus::fail;
            r.witness = std::string("error: ") + e.what();
        }
        r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        out.push_back(std::move(r));
    }
    return out;
}

bool all_ok(const std::vector<CheckResult>& results)
{
    return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.ok(); });
}

std::string emit_report(const std::vector<CheckResult>& results, ReportFormat format, Truncation t,
                        bool include_timing)
{
    std::size_t ok = std::count_if(results.begin(), results.end(), [](const CheckResult& r) { return r.ok(); });
    std::string summary = std::to_string(ok) + "/" + std::to_string(results.size());
    if (format == ReportFormat::json) {
        nlohmann::ordered_json j;
        j["truncation"] = {t.max_i, t.max_j};
        j["summary"] = summary;
        j["checks"] = nlohmann::ordered_json::array();
        for (const CheckResult& r : results) {
            nlohmann::ordered_json c;
            c["name"] = r.name;
            c["identity"] = r.identity;
            c["status"] = status_name(r.status);
            c["witness"] = r.witness ? nlohmann::ordered_json(*r.witness) : nlohmann::ordered_json(nullptr);
            c["notes"] = r.notes;
            if (include_timing)
                c["runtime_ms"] = static_cast<long long>(r.runtime_ms);
            j["checks"].push_back(std::move(c));
        }
        return j.dump(2) + "\n";
    }
    if (results.empty())
        return "";
    std::ostringstream os;
    os << "# Identity checks\n\n";
    os << "Truncation (" << t.max_i << "," << t.max_j << ")\n\n";
    os << "| check | status | identity |" << (include_timing ? " ms |" : "") << "\n";
    os << "|---|---|---|" << (include_timing ? "---|" : "") << "\n";
    for (const CheckResult& r : results) {
        os << "| " << r.name << " | " << status_name(r.status) << " | " << r.identity << " |";
        if (include_timing)
            os << " " << static_cast<long long>(r.runtime_ms) << " |";
        os << "\n";
    }
    bool details = false;
    for (const CheckResult& r : results) {
        if (!r.witness && r.notes.empty())
            continue;
        if (!details)
            os << "\n## Details\n";
        details = true;
        os << "\n### " << r.name << "\n\n";
        if (r.witness)
            os << "- witness: " << *r.witness << "\n";
        for (const std::string& n : r.notes)
            os << "- " << n << "\n";
    }
    os << "\n" << summary << " checks passed\n";
    return os.str();
}

} // namespace qs2
