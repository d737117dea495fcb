#include "cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace shiftreal::cli {
namespace {

nlohmann::ordered_json number(double v)
{
    if (!std::isfinite(v)) return nullptr;
    return v;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

Check& SuiteReport::add(std::string id, std::string anchor, double value, double tol, Compare cmp)
{
    bool ok = cmp == Compare::at_most ? value <= tol : value >= tol;  // false for NaN
    checks.push_back(Check{std::move(id), std::move(anchor), value, tol, cmp, ok ? Status::pass : Status::fail});
    return checks.back();
}

Check& SuiteReport::add_status(std::string id, std::string anchor, double value, double tol, Status s, Compare cmp)
{
    checks.push_back(Check{std::move(id), std::move(anchor), value, tol, cmp, s});
    return checks.back();
}

bool SuiteReport::any_fail() const
{
    for (const Check& c : checks)
        if (c.status == Status::fail) return true;
    return false;
}

std::string to_string(Status s)
{
    switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    default: return "inconclusive";
    }
}

std::string format_double(double v)
{
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_json(const SuiteReport& r)
{
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["symbol"] = r.symbol;
    j["grid"] = {{"n", r.grid.n}, {"dt", r.grid.dt}, {"tail_tol", r.grid.tail_tol}};
    j["seed"] = r.seed;
    j["status"] = r.any_fail() ? "fail" : "pass";
    auto checks = nlohmann::ordered_json::array();
    for (const Check& c : r.checks) {
        checks.push_back({{"id", c.id},
                          {"anchor", c.anchor},
                          {"value", number(c.value)},
                          {"tolerance", number(c.tolerance)},
                          {"comparison", c.compare == Compare::at_most ? "<=" : ">="},
                          {"status", to_string(c.status)}});
    }
    j["checks"] = checks;
    if (!r.facts.empty()) {
        nlohmann::ordered_json f = nlohmann::ordered_json::object();
        for (const auto& [k, v] : r.facts) f[k] = v;
        j["results"] = f;
    }
    for (const Table& t : r.tables) {
        auto rows = nlohmann::ordered_json::array();
        for (const auto& row : t.rows) {
            nlohmann::ordered_json o = nlohmann::ordered_json::object();
            for (std::size_t c = 0; c < t.columns.size() && c < row.size(); ++c) o[t.columns[c]] = number(row[c]);
            rows.push_back(o);
        }
        j["tables"][t.name] = rows;
    }
    if (r.wall_seconds) j["wall_seconds"] = *r.wall_seconds;
    return j.dump(2) + "\n";
}

std::string to_csv(const SuiteReport& r)
{
    std::ostringstream os;
    if (r.primary_table) {
        const Table& t = r.tables.at(*r.primary_table);
        for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << csv_field(t.columns[c]);
        os << "\n";
        for (const auto& row : t.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_double(row[c]);
            os << "\n";
        }
        return os.str();
    }
    os << "id,anchor,value,tolerance,comparison,status\n";
    for (const Check& c : r.checks)
        os << csv_field(c.id) << ',' << csv_field(c.anchor) << ',' << format_double(c.value) << ','
           << format_double(c.tolerance) << ',' << (c.compare == Compare::at_most ? "<=" : ">=") << ','
           << to_string(c.status) << "\n";
    return os.str();
}

}  // namespace shiftreal::cli
