#pragma once

#include <cstdint>
#include <string>

#include "cli/report.hpp"
#include "shiftreal/realization.hpp"

namespace shiftreal::cli {

struct SuiteInput {
    std::string literal;  // symbol as given on the command line
    TransferSymbol symbol;
    GridConfig grid;
    std::uint64_t seed = 1;
    double tol = 1e-6;  // membership tolerance (inner check, model space)
};

SuiteReport verify_suite(const SuiteInput& in);
// Throws std::invalid_argument when the symbol is not inner.
SuiteReport model_space_suite(const SuiteInput& in);
SuiteReport hankel_svd_report(const SuiteInput& in, int dim);
SuiteReport stability_report(const SuiteInput& in, double alpha, double rho);
SuiteReport simulate_report(const SuiteInput& in, const TimeSignal& u, cplx mu);
SuiteReport weighted_demo_report(const GridConfig& g, std::uint64_t seed, int n_max);

/// Square size of the Hankel matrix used for `count` reported values: past
/// the point where the impulse response keeps 1e-4 of its energy, at least
/// 256 and at most max(count, 2048) (and n/2).  `resolved` is false when
/// the cap cut the kernel short.
struct HankelSize {
    int size = 0;
    bool resolved = true;
};
HankelSize hankel_matrix_size(const TransferSymbol& g, const GridConfig& grid, int count);

}  // namespace shiftreal::cli
