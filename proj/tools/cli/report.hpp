#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shiftreal/signal.hpp"

namespace shiftreal::cli {

enum class Status { pass, fail, inconclusive };
enum class Compare { at_most, at_least };

struct Check {
    std::string id;
    std::string anchor;  // phrase of the source text the check exercises
    double value = 0.0;  // NaN is written as null
    double tolerance = 0.0;
    Compare compare = Compare::at_most;
    Status status = Status::fail;
};

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct SuiteReport {
    std::string suite;
    std::string symbol;
    GridConfig grid;
    std::uint64_t seed = 0;
    std::vector<Check> checks;
    std::vector<std::pair<std::string, std::string>> facts;  // labelled scalar results
    std::vector<Table> tables;
    std::optional<std::size_t> primary_table;  // written by the CSV format
    std::optional<double> wall_seconds;

    // Status from the comparison; a NaN value is a failure.
    Check& add(std::string id, std::string anchor, double value, double tol, Compare cmp = Compare::at_most);
    // Check whose verdict is decided by the caller.
    Check& add_status(std::string id, std::string anchor, double value, double tol, Status s,
                      Compare cmp = Compare::at_most);
    void fact(std::string key, std::string value) { facts.emplace_back(std::move(key), std::move(value)); }

    bool any_fail() const;
};

std::string to_json(const SuiteReport& r);
std::string to_csv(const SuiteReport& r);
std::string to_string(Status s);
std::string format_double(double v);

}  // namespace shiftreal::cli
