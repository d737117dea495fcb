#include "cli/symbol_parser.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <vector>

#include "json.hpp"

namespace shiftreal::cli {
namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

// Splits on sep at parenthesis depth zero.
std::vector<std::string> split_top(const std::string& s, char sep)
{
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (depth < 0) throw ParseError("unbalanced parentheses in '" + s + "'");
        if (c == sep && depth == 0) {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (depth != 0) throw ParseError("unbalanced parentheses in '" + s + "'");
    parts.push_back(trim(cur));
    return parts;
}

std::vector<cplx> parse_list(const std::string& s)
{
    std::vector<cplx> out;
    for (const std::string& item : split_top(s, ',')) out.push_back(parse_complex(item));
    return out;
}

cplx json_entry(const nlohmann::json& v)
{
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
    throw ParseError("matinner entries must be numbers or [re, im] pairs");
}

TransferSymbol parse_matinner(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open matinner file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("matinner file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.contains("a0") || !j.contains("b") || !j["a0"].is_array() || !j["b"].is_array())
        throw ParseError("matinner file needs arrays \"a0\" and \"b\"");
    const auto& a = j["a0"];
    const auto& b = j["b"];
    const Eigen::Index n = static_cast<Eigen::Index>(b.size());
    if (n == 0 || a.size() != b.size()) throw ParseError("matinner: a0 must be square with the size of b");
    Eigen::MatrixXcd a0(n, n);
    Eigen::VectorXcd bv(n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const auto& row = a[std::size_t(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
            throw ParseError("matinner: a0 must be square with the size of b");
        for (Eigen::Index c = 0; c < n; ++c) a0(r, c) = json_entry(row[std::size_t(c)]);
        bv[r] = json_entry(b[std::size_t(r)]);
    }
    try {
        return inner_from_skew(a0, bv);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("matinner: ") + e.what());
    }
}

}  // namespace

cplx parse_complex(const std::string& raw)
{
    const std::string s = trim(raw);
    if (s.empty()) throw ParseError("empty number");
    const char* p = s.c_str();
    const char* end = p + s.size();
    char* next = nullptr;
    errno = 0;

    if (s == "i" || s == "+i") return {0.0, 1.0};
    if (s == "-i") return {0.0, -1.0};

    const double first = std::strtod(p, &next);
    if (next == p || errno == ERANGE) throw ParseError("not a number: '" + s + "'");
    if (next == end) return {first, 0.0};
    if (*next == 'i' && next + 1 == end) return {0.0, first};
    if (*next == '+' || *next == '-') {
        const char* q = next;
        double second;
        if ((q[1] == 'i') && q + 2 == end) {
            second = (*q == '-') ? -1.0 : 1.0;
            return {first, second};
        }
        second = std::strtod(q, &next);
        if (next != q && next + 1 == end && *next == 'i') return {first, second};
    }
    throw ParseError("not a complex number: '" + s + "'");
}

TransferSymbol parse_symbol(const std::string& raw)
{
    const std::string text = trim(raw);
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("symbol '" + text + "' lacks a kind prefix (rational:, delay:, ...)");
    const std::string kind = text.substr(0, colon);
    const std::string body = trim(text.substr(colon + 1));
    try {
        if (kind == "rational") {
            const auto slash = body.find('/');
            if (slash == std::string::npos) throw ParseError("rational needs numerator/denominator");
            return make_rational(parse_list(body.substr(0, slash)), parse_list(body.substr(slash + 1)));
        }
        if (kind == "delay") {
            const cplx tau = parse_complex(body);
            if (tau.imag() != 0.0) throw ParseError("delay must be real");
            return make_delay(tau.real());
        }
        if (kind == "blaschke") return make_blaschke(parse_list(body));
        if (kind == "matinner") return parse_matinner(body);
        if (kind == "product") {
            if (body.size() < 2 || body.front() != '(' || body.back() != ')')
                throw ParseError("product needs a parenthesized list: product:(SYM;SYM)");
            std::vector<TransferSymbol> factors;
            for (const std::string& f : split_top(body.substr(1, body.size() - 2), ';')) factors.push_back(parse_symbol(f));
            return make_product(std::move(factors));
        }
    } catch (const std::invalid_argument& e) {
        throw ParseError("invalid symbol '" + text + "': " + e.what());
    } catch (const std::domain_error& e) {
        throw ParseError("invalid symbol '" + text + "': " + e.what());
    }
    throw ParseError("unknown symbol kind '" + kind + "'");
}

}  // namespace shiftreal::cli
