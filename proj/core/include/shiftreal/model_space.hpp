#pragma once

#include <memory>
#include <random>

#include <Eigen/Core>

#include "shiftreal/realization.hpp"

namespace shiftreal {

/// Realization context for an inner symbol, with lazily built caches for
/// the kernel basis of the input map and the range least-squares solver.
class ModelSpaceContext {
public:
    /// Throws std::invalid_argument when the symbol fails is_inner at tol.
    static ModelSpaceContext make(const RealizationContext& ctx, double tol = 1e-6);

    const RealizationContext& realization() const { return ctx_; }
    const GridConfig& grid() const { return ctx_.grid; }
    double tol() const { return tol_; }
    const InnerVerdict& verdict() const { return verdict_; }

    /// Orthonormal basis (columns, causal time samples scaled by sqrt(dt))
    /// of the kernel elements generated from the anticausal frame.
    const Eigen::MatrixXcd& kernel_basis() const;
    const std::vector<TimeSignal>& kernel_frame() const;
    /// Orthonormal basis of the span of the input-map columns B e_k.
    const Eigen::MatrixXcd& range_basis() const;

    struct Cache;

private:
    ModelSpaceContext(RealizationContext ctx, double tol, InnerVerdict v);

    RealizationContext ctx_;
    double tol_ = 1e-6;
    InnerVerdict verdict_;
    std::shared_ptr<Cache> cache_;
};

/// P_V x = x - G P+(conj(G) x).
StateVector project_model_space(const ModelSpaceContext& m, const StateVector& x);

/// |(I - P_V) T(t) P_V x| / (1 + |x|).
double invariance_residual(const ModelSpaceContext& m, const StateVector& x, double t);

/// Causal q with transform conj(G(-s)) v(-s) on the grid: the cell
/// reflection of conj(G) v.  Throws std::domain_error when v is not
/// anticausal up to grid.tail_tol.
TimeSignal kernel_element(const ModelSpaceContext& m, const FreqSignal& v);

/// Growth rates of the anticausal frame -exp(a t), t < 0, used for the kernel basis.
std::vector<double> kernel_frame_rates();

struct PartialIsometryResult {
    double residual = 0.0;       // ||B u| - |u_perp|| / (1 + |u|)
    double orthogonality = 0.0;  // |<G u(-.), P-(G u(-.))>| for the kernel-free part
    double kernel_norm = 0.0;    // |u_ker|
};
PartialIsometryResult partial_isometry_residual(const ModelSpaceContext& m, const TimeSignal& u);

/// Relative least-squares residual of v against the columns B e_k, with k
/// running over every cell before the delay tau, cells spaced 1/16 apart
/// over the next time unit and a geometric ladder of later cells.  Throws std::domain_error when v is not in V
/// within the context tolerance.
double range_completeness(const ModelSpaceContext& m, const StateVector& v);

/// P_V applied to a seeded random causal state.
StateVector random_model_space_element(const ModelSpaceContext& m, std::mt19937_64& rng);

/// Seeded input w + sum c_k q_k with w = B^* P_V(random) orthogonal to the
/// kernel and q_k the kernel frame elements.
TimeSignal random_split_input(const ModelSpaceContext& m, std::mt19937_64& rng);

}  // namespace shiftreal
