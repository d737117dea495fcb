#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "shiftreal/realization.hpp"

namespace shiftreal {

/// M[j][k] = dt * h((j+k+1) dt): the impulse response of the strictly
/// proper part at the sum of the cell centres (j+1/2)dt + (k+1/2)dt.
struct HankelMatrix {
    int dim = 0;
    Eigen::MatrixXcd entries;
};

struct RangeDiagnostics {
    std::vector<double> singular_values;  // descending
    std::optional<int> gap_index;         // last index of the cluster above numerical zero
    bool closed_range_verdict = false;    // heuristic: gap factor 10, zero threshold 1e-8 * top
    double approx_ctrb_residual = 0.0;    // mean relative LS residual of random states vs the range
    double approx_obsv_residual = 0.0;    // mean relative error recovering random states from traces
    double exact_ctrb_margin = 0.0;       // smallest singular value of the input map above zero
    double exact_obsv_margin = 0.0;       // smallest singular value of the output map
};

/// Psi B u: the time trace of P+(G . u^(-.)).
TimeSignal hankel_apply(const RealizationContext& ctx, const TimeSignal& u);

/// Same operator by direct Hankel-structured summation over the impulse response.
TimeSignal hankel_matrix_apply(const RealizationContext& ctx, const TimeSignal& u);

HankelMatrix hankel_matrix(const RealizationContext& ctx, int dim);

std::vector<double> hankel_svd(const RealizationContext& ctx, int dim);

struct FactorizationResidual {
    double chain = 0.0;   // hankel_apply against observe_trace(control_map)
    double matrix = 0.0;  // hankel_apply against the matrix action
};
FactorizationResidual factorization_residual(const RealizationContext& ctx, const TimeSignal& u);

RangeDiagnostics range_diagnostics(const RealizationContext& ctx, int dim, std::uint64_t seed = 0);

}  // namespace shiftreal
