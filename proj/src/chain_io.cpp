#include "qs2/chain_io.hpp"

#include "qs2/error.hpp"
#include "qs2/expr.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace qs2 {

using nlohmann::json;

std::string chain_to_json(const Chain& c)
{
    // One term per line keeps files diffable.
    std::ostringstream os;
    os << "{\n  \"degree\": " << c.degree() << ",\n  \"twist\": " << json(c.twist().lambda().to_string()).dump()
       << ",\n  \"terms\": [";
    bool first = true;
    for (const auto& [t, coeff] : c.terms()) {
        json tensor = json::array();
        for (BasisIndex e : t)
            tensor.push_back({e.i, e.j});
        os << (first ? "\n" : ",\n") << "    {\"coeff\": " << json(coeff.to_string()).dump()
           << ", \"tensor\": " << tensor.dump() << "}";
        first = false;
    }
    os << (first ? "]\n}\n" : "\n  ]\n}\n");
    return os.str();
}

namespace {

const json& field(const json& obj, const char* key, const std::string& path, const std::string& source)
{
    auto it = obj.find(key);
    if (it == obj.end())
        throw FormatError(source, path, std::string("missing field '") + key + "'");
    return *it;
}

RatFunc scalar_field(const json& v, const std::string& path, const std::string& source)
{
    if (!v.is_string())
        throw FormatError(source, path, "expected a string");
    try {
        return parse_scalar(v.get<std::string>());
    } catch (const ParseError& e) {
        throw FormatError(source, path, e.what());
    }
}

int int_field(const json& v, const std::string& path, const std::string& source)
{
    if (!v.is_number_integer())
        throw FormatError(source, path, "expected an integer");
    auto x = v.get<long long>();
    if (x < -1000000 || x > 1000000)
        throw FormatError(source, path, "integer out of range");
    return static_cast<int>(x);
}

} // namespace

Chain chain_from_json(const std::string& text, const std::string& source)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        // e.what() carries "line L, column C"
        throw FormatError(source, "syntax", e.what());
    }
    if (!j.is_object())
        throw FormatError(source, "top level", "expected an object");
    int degree = int_field(field(j, "degree", "degree", source), "degree", source);
    if (degree < 0)
        throw FormatError(source, "degree", "must be nonnegative");
    RatFunc lambda = scalar_field(field(j, "twist", "twist", source), "twist", source);
    if (lambda.is_zero())
        throw FormatError(source, "twist", "must be nonzero");
    const json& terms = field(j, "terms", "terms", source);
    if (!terms.is_array())
        throw FormatError(source, "terms", "expected an array");

    Chain c(degree, Automorphism(lambda));
    for (std::size_t k = 0; k < terms.size(); ++k) {
        std::string at = "terms[" + std::to_string(k) + "]";
        const json& term = terms[k];
        if (!term.is_object())
            throw FormatError(source, at, "expected an object");
        RatFunc coeff = scalar_field(field(term, "coeff", at + ".coeff", source), at + ".coeff", source);
        const json& tensor = field(term, "tensor", at + ".tensor", source);
        if (!tensor.is_array())
            throw FormatError(source, at + ".tensor", "expected an array");
        if (tensor.size() != static_cast<std::size_t>(degree) + 1)
            throw FormatError(source, at + ".tensor",
                              "has " + std::to_string(tensor.size()) + " factors, degree " + std::to_string(degree) +
                                  " needs " + std::to_string(degree + 1));
        Tensor t;
        for (std::size_t f = 0; f < tensor.size(); ++f) {
            std::string fat = at + ".tensor[" + std::to_string(f) + "]";
            const json& pair = tensor[f];
            if (!pair.is_array() || pair.size() != 2)
                throw FormatError(source, fat, "expected [i, j]");
            int i = int_field(pair[0], fat + "[0]", source);
            int jj = int_field(pair[1], fat + "[1]", source);
            if (i < 0)
                throw FormatError(source, fat + "[0]", "x0 exponent must be nonnegative");
            t.push_back({i, jj});
        }
        c.add_term(std::move(t), coeff);
    }
    return c;
}

Chain read_chain(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open chain file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return chain_from_json(ss.str(), path);
}

void write_chain(const Chain& c, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write chain file '" + path + "'");
    out << chain_to_json(c);
    if (!out)
        throw Error("error writing chain file '" + path + "'");
}

} // namespace qs2
