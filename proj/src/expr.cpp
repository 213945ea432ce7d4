#include "qs2/expr.hpp"

#include "qs2/error.hpp"

#include <cctype>
#include <sstream>

namespace qs2 {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    AlgElem run()
    {
        skip_ws();
        if (at_end())
            throw ParseError("empty expression", pos_);
        AlgElem v = expr();
        skip_ws();
        if (!at_end())
            throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
        return v;
    }

private:
    bool at_end() const { return pos_ >= s_.size(); }

    void skip_ws()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_ws();
        if (!at_end() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    AlgElem expr()
    {
        bool neg = false;
        if (accept('-'))
            neg = true;
        else
            accept('+');
        AlgElem v = term();
        if (neg)
            v = -v;
        for (;;) {
            if (accept('+'))
                v += term();
            else if (accept('-'))
                v -= term();
            else
                return v;
        }
    }

    AlgElem term()
    {
        AlgElem v = factor();
        for (;;) {
            if (accept('*')) {
                v = mul(v, factor());
            }
            else if (accept('/')) {
                std::size_t at = pos_;
                AlgElem d = factor();
                if (!d.is_scalar())
                    throw ParseError("division by a non-scalar", at);
                if (d.is_zero())
                    throw ParseError("division by zero", at);
                v *= counit(d).inverse();
            }
            else {
                return v;
            }
        }
    }

    AlgElem factor()
    {
        skip_ws();
        std::size_t at = pos_;
        AlgElem base = atom();
        if (!accept('^'))
            return base;
        skip_ws();
        bool paren = accept('(');
        bool neg = accept('-');
        skip_ws();
        std::size_t exp_at = pos_;
        long e = integer();
        if (paren && !accept(')'))
            throw ParseError("expected ')'", pos_);
        if (neg)
            e = -e;
        if (e < 0) {
            if (!base.is_scalar())
                throw ParseError("negative exponent on a generator", exp_at);
            if (base.is_zero())
                throw ParseError("zero to a negative power", at);
            return AlgElem(counit(base).pow(static_cast<int>(e)));
        }
        if (base.is_scalar())
            return AlgElem(counit(base).pow(static_cast<int>(e)));
        AlgElem r(1);
        for (long k = 0; k < e; ++k)
            r = mul(r, base);
        return r;
    }

    long integer()
    {
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            throw ParseError("expected integer", pos_);
        if (pos_ - start > 9)
            throw ParseError("exponent too large", start);
        return std::stol(std::string(s_.substr(start, pos_ - start)));
    }

    AlgElem atom()
    {
        skip_ws();
        if (at_end())
            throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            AlgElem v = expr();
            if (!accept(')'))
                throw ParseError("expected ')'", pos_);
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            return AlgElem(RatFunc(Int(std::string(s_.substr(start, pos_ - start)))));
        }
        auto try_word = [&](std::string_view w) {
            if (s_.substr(pos_, w.size()) != w)
                return false;
            std::size_t end = pos_ + w.size();
            if (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end])))
                return false;
            pos_ = end;
            return true;
        };
        if (try_word("xm1"))
            return AlgElem::gen(-1);
        if (try_word("x0"))
            return AlgElem::gen(0);
        if (try_word("x1"))
            return AlgElem::gen(1);
        if (try_word("q"))
            return AlgElem(RatFunc::q());
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

// Scalars that can be written in front of '*' without parentheses.
bool is_bare(const RatFunc& c)
{
    if (!c.den().is_one() || !c.num().is_monomial())
        return false;
    return c.num().degree() == 0 || c.num().lead() == 1;
}

} // namespace

AlgElem parse(std::string_view text) { return Parser(text).run(); }

RatFunc parse_scalar(std::string_view text)
{
    AlgElem a = parse(text);
    if (!a.is_scalar())
        throw ParseError("expected a scalar in Q(q), got '" + render(a) + "'", 0);
    return counit(a);
}

std::string render_monomial(BasisIndex idx)
{
    std::string out;
    auto power = [&](const char* name, int e) {
        if (e == 0)
            return;
        if (!out.empty())
            out += '*';
        out += name;
        if (e > 1)
            out += '^' + std::to_string(e);
    };
    power("x0", idx.i);
    power(idx.j > 0 ? "x1" : "xm1", idx.j > 0 ? idx.j : -idx.j);
    return out;
}

std::string render(const AlgElem& a)
{
    if (a.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) {
        const auto& [idx, c] = *it;
        bool neg = c.lead_sign() < 0;
        RatFunc m = neg ? -c : c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        std::string mono = render_monomial(idx);
        std::string cs = is_bare(m) ? m.to_string() : "(" + m.to_string() + ")";
        if (mono.empty())
            os << cs;
        else if (m.is_one())
            os << mono;
        else
            os << cs << '*' << mono;
    }
    return os.str();
}

} // namespace qs2
