#include "qs2/cli.hpp"

#include "qs2/chain_io.hpp"
#include "qs2/error.hpp"
#include "qs2/expr.hpp"
#include "qs2/verify.hpp"
#include "qs2/volume.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>

namespace qs2 {

namespace {

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

int parse_exponent(const std::string& text, const std::string& whole)
{
    if (text.empty() || text.size() > 4 || !std::all_of(text.begin(), text.end(), ::isdigit))
        throw ParseError("bad exponent in '" + whole + "'", 0);
    return std::stoi(text);
}

// "x0^3" -> 3, "x0" -> 1; nullopt if `s` is not base or base^k.
std::optional<int> power_of(const std::string& s, const std::string& base)
{
    if (s == base)
        return 1;
    if (s.rfind(base + "^", 0) != 0)
        return std::nullopt;
    return parse_exponent(s.substr(base.size() + 1), s);
}

} // namespace

Cochain cochain_from_name(const std::string& raw)
{
    std::string name = trim(raw);
    if (name == "d1")
        return partial(1);
    if (name == "d0")
        return partial(0);
    if (name == "dm1")
        return partial(-1);
    if (auto k = power_of(name, "x0")) {
        AlgElem p = AlgElem::basis({*k, 0});
        return Cochain::central(p, Automorphism(RatFunc::q_power(2 * *k)), name);
    }
    if (name.rfind("inner:", 0) == 0) {
        auto at = name.rfind('@');
        if (at == std::string::npos || at < 6)
            throw ParseError("inner cochain needs inner:<expr>@<twist>, got '" + name + "'", 0);
        RatFunc lambda = parse_scalar(name.substr(at + 1));
        if (lambda.is_zero())
            throw DomainError("twist must be nonzero");
        return Cochain::inner(parse(name.substr(6, at - 6)), Automorphism(lambda), name);
    }
    if (name.rfind("cup(", 0) == 0 && name.back() == ')') {
        std::string inside = name.substr(4, name.size() - 5);
        int depth = 0;
        for (std::size_t k = 0; k < inside.size(); ++k) {
            char c = inside[k];
            if (c == '(')
                ++depth;
            else if (c == ')')
                --depth;
            else if (c == ',' && depth == 0)
                return cup(cochain_from_name(inside.substr(0, k)), cochain_from_name(inside.substr(k + 1)));
        }
        throw ParseError("cup needs two comma separated cochains, got '" + name + "'", 4);
    }
    throw ParseError("unknown cochain '" + name + "' (expected d1, d0, dm1, x0^i, inner:<expr>@<twist>, cup(a,b))", 0);
}

H0Label h0_label_from_name(const std::string& raw)
{
    std::string name = trim(raw);
    if (name.size() > 2 && name.front() == '[' && name.back() == ']')
        name = name.substr(1, name.size() - 2);
    if (name == "1")
        return H0Label::unit();
    if (auto k = power_of(name, "x1"); k && *k > 0)
        return H0Label::x(1, *k);
    if (auto k = power_of(name, "xm1"); k && *k > 0)
        return H0Label::x(-1, *k);
    if (auto k = power_of(name, "x0"); k && *k > 0)
        return *k == 1 ? H0Label::x0() : H0Label::x0_pow(*k);
    throw ParseError("unknown H_0 class '" + raw + "' (expected 1, x1^j, xm1^j, x0, x0^i)", 0);
}

Chain load_chain(const std::string& spec)
{
    if (spec == "fundamental")
        return fundamental_class();
    return read_chain(spec);
}

namespace {

Automorphism twist_from_text(const std::string& text)
{
    RatFunc lambda = parse_scalar(text);
    if (lambda.is_zero())
        throw DomainError("twist must be nonzero");
    return Automorphism(lambda);
}

void emit_chain(const Chain& c, const std::string& out_path, std::ostream& out)
{
    if (out_path.empty())
        out << chain_to_json(c);
    else
        write_chain(c, out_path);
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact twisted Hochschild calculus on the standard Podles sphere", "qs2"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand all help");

    std::string expr_a, expr_b, twist = "1", chain_spec, out_path, cochain_name, class_name;
    std::vector<std::string> cochain_args;
    int result = kExitOk;
    std::function<void()> action;

    auto* normalize = app.add_subcommand("normalize", "Print the PBW normal form of an expression");
    normalize->add_option("expr", expr_a, "Algebra expression")->required();
    normalize->callback([&] { out << render(parse(expr_a)) << "\n"; });

    auto* mulc = app.add_subcommand("mul", "Multiply two expressions");
    mulc->add_option("a", expr_a)->required();
    mulc->add_option("b", expr_b)->required();
    mulc->callback([&] { out << render(parse(expr_a) * parse(expr_b)) << "\n"; });

    auto* aut = app.add_subcommand("aut", "Apply sigma_lambda: x_n -> lambda^n x_n");
    aut->add_option("--twist", twist, "lambda")->required();
    aut->add_option("expr", expr_a)->required();
    aut->callback([&] { out << render(twist_from_text(twist).apply(parse(expr_a))) << "\n"; });

    auto* bnd = app.add_subcommand("boundary", "Hochschild boundary of a chain");
    bnd->add_option("--chain", chain_spec, "Chain file or 'fundamental'")->required();
    bnd->add_option("--out", out_path, "Write the result here instead of stdout");
    bnd->callback([&] { emit_chain(boundary(load_chain(chain_spec)), out_path, out); });

    auto* cyc = app.add_subcommand("cyclic", "Cyclic operator t on a chain");
    cyc->add_option("--chain", chain_spec)->required();
    cyc->add_option("--out", out_path);
    cyc->callback([&] { emit_chain(cyclic_t(load_chain(chain_spec)), out_path, out); });

    auto* capc = app.add_subcommand("cap", "Cap product of a chain with a named cochain");
    capc->add_option("--chain", chain_spec)->required();
    capc->add_option("--cochain", cochain_name, "d1, d0, dm1, x0^i, inner:<expr>@<twist>, cup(a,b)")->required();
    capc->add_option("--out", out_path);
    capc->callback([&] { emit_chain(cap(load_chain(chain_spec), cochain_from_name(cochain_name)), out_path, out); });

    auto* cupe = app.add_subcommand("cup-eval", "Evaluate a named cochain on expressions");
    cupe->add_option("--cochain", cochain_name)->required();
    cupe->add_option("args", cochain_args, "One expression per argument slot");
    cupe->callback([&] {
        std::vector<AlgElem> vals;
        for (const auto& a : cochain_args)
            vals.push_back(parse(a));
        out << render(cochain_from_name(cochain_name).eval(vals)) << "\n";
    });

    auto* trace = app.add_subcommand("trace", "Twisted trace dual to an H_0 basis class");
    trace->add_option("--twist", twist)->required();
    trace->add_option("--class", class_name, "1, x1^j, xm1^j, x0, x0^i")->required();
    trace->add_option("expr", expr_a)->required();
    trace->callback([&] {
        TraceFunctional t = make_trace(h0_label_from_name(class_name), twist_from_text(twist));
        out << trace_eval(t, parse(expr_a)).to_string() << "\n";
    });

    auto* h0 = app.add_subcommand("h0", "Coordinates of a class in H_0");
    auto* h0_twist = h0->add_option("--twist", twist);
    auto* h0_chain = h0->add_option("--chain", chain_spec, "Degree 0 chain file (uses its own twist)");
    auto* h0_expr = h0->add_option("expr", expr_a);
    h0_chain->excludes(h0_twist)->excludes(h0_expr);
    h0->callback([&] {
        if (!chain_spec.empty())
            out << to_string(h0_reduce(load_chain(chain_spec))) << "\n";
        else if (!expr_a.empty())
            out << to_string(h0_reduce(parse(expr_a), twist_from_text(twist))) << "\n";
        else
            throw CLI::RequiredError("h0 needs an expression or --chain");
    });

    auto* h2 = app.add_subcommand("h2class", "Coordinate of a degree 2 cycle at twist q^2 against [dA]");
    h2->add_option("--chain", chain_spec)->required();
    h2->callback([&] { out << h2_class(load_chain(chain_spec)).to_string() << "\n"; });

    std::string variant = "delta";
    auto* phic = app.add_subcommand("phi", "Volume functional on a degree 2 chain at twist q^2");
    phic->add_option("--variant", variant)->check(CLI::IsMember({"delta", "efd", "cap", "plus", "minus"}));
    phic->add_option("--chain", chain_spec)->required();
    phic->callback([&] {
        Chain c = load_chain(chain_spec);
        RatFunc v;
        if (variant == "plus" || variant == "minus")
            v = phi_pm(variant == "plus" ? 1 : -1, c);
        else
            v = phi(c, variant == "delta" ? PhiVariant::delta : (variant == "efd" ? PhiVariant::efd : PhiVariant::cap));
        out << v.to_string() << "\n";
    });

    std::string counter = "standard";
    auto* etac = app.add_subcommand("eta", "The counter-term eta = phi_2 o b");
    etac->add_option("--chain", chain_spec)->required();
    etac->add_option("--counter-term", counter)->check(CLI::IsMember({"standard", "three-point"}));
    etac->callback([&] {
        Chain c = load_chain(chain_spec);
        RatFunc v = counter == "standard" ? eta(c) : eta(c, CounterTerm::three_point_restriction());
        out << v.to_string() << "\n";
    });

    std::string functional = "phi+eta", trunc_text = "3,3";
    std::size_t witnesses = 8;
    auto* cc = app.add_subcommand("cyclic-check", "Check t-invariance and the unit slot on a truncation");
    cc->add_option("--functional", functional,
                   "phi, phi-delta, phi-efd, phi-cap, phi-plus, phi-minus, eta, phi+eta, eta-3pt, phi+eta-3pt");
    cc->add_option("--truncation", trunc_text, "I,J")->envname("QS2_TRUNCATION");
    cc->add_option("--witnesses", witnesses, "Violations reported per kind");
    cc->callback([&] {
        Functional2 f = functional_from_name(functional);
        Truncation t = parse_truncation(trunc_text);
        CyclicityReport rep = is_cyclic(f, t.max_i, t.max_j, witnesses);
        out << rep.to_string();
        if (!rep.cyclic())
            result = kExitCheckFailed;
    });

    std::string suite = "all", report = "md";
    bool timing = false;
    auto* ver = app.add_subcommand("verify", "Run the identity checks");
    ver->add_option("--suite", suite, "all or a comma separated list such as C1,C9");
    ver->add_option("--truncation", trunc_text, "I,J")->envname("QS2_TRUNCATION");
    ver->add_option("--report", report)->check(CLI::IsMember({"md", "json"}));
    ver->add_option("--out", out_path, "Write the report here instead of stdout");
    ver->add_flag("--timing", timing, "Include runtimes (makes the report nondeterministic)");
    ver->callback([&] {
        Truncation t = parse_truncation(trunc_text);
        std::vector<CheckResult> results = run_suite(parse_selection(suite), t);
        std::string text =
            emit_report(results, report == "json" ? ReportFormat::json : ReportFormat::markdown, t, timing);
        if (out_path.empty()) {
            out << text;
        } else {
            std::ofstream f(out_path);
            if (!(f << text))
                throw Error("cannot write report '" + out_path + "'");
        }
        if (!all_ok(results))
            result = kExitCheckFailed;
    });

    auto* chain = app.add_subcommand("chain", "Print a chain file, e.g. the built-in 'fundamental'");
    chain->add_option("--chain", chain_spec)->required();
    chain->add_option("--out", out_path);
    chain->callback([&] { emit_chain(load_chain(chain_spec), out_path, out); });

    if (!args.empty() && !args[0].empty() && args[0][0] != '-' && !app.get_subcommand_no_throw(args[0])) {
        err << "error: unknown command '" << args[0] << "'\n";
        return kExitError;
    }
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
    return result;
}

} // namespace qs2
