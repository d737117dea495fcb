#include "shiftreal/hankel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "shiftreal/random_inputs.hpp"

namespace shiftreal {
namespace {

constexpr double kGapFactor = 10.0;
constexpr double kZeroThreshold = 1e-8;

void check_dim(const GridConfig& g, int dim)
{
    if (dim < 1 || dim > g.half()) throw std::invalid_argument("Hankel dimension must lie in [1, n/2]");
}

bool is_real(const Eigen::MatrixXcd& m) { return m.imag().cwiseAbs().maxCoeff() == 0.0; }

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

template <class Matrix>
bool finite_svd(const Eigen::BDCSVD<Matrix>& svd, bool want_u)
{
    return svd.info() == Eigen::Success && svd.singularValues().allFinite() && (!want_u || svd.matrixU().allFinite());
}

// BDCSVD with a Jacobi fallback: Eigen 3.4.0's divide and conquer returns
// NaNs on some matrices with many equal singular values (delay Hankels).
template <class Matrix>
Eigen::VectorXd singular_values(const Matrix& m, Eigen::MatrixXcd* u)
{
    const unsigned opts = u ? unsigned(Eigen::ComputeThinU) : 0u;
    Eigen::BDCSVD<Matrix> svd(m, opts);
    if (finite_svd(svd, u != nullptr)) {
        if (u) *u = svd.matrixU().template cast<cplx>();
        return svd.singularValues();
    }
    Eigen::JacobiSVD<Matrix> jac(m, opts);
    if (u) *u = jac.matrixU().template cast<cplx>();
    return jac.singularValues();
}

Eigen::VectorXd hankel_singular_values(const Eigen::MatrixXcd& m, Eigen::MatrixXcd* u)
{
    if (is_real(m)) return singular_values<Eigen::MatrixXd>(m.real(), u);
    return singular_values<Eigen::MatrixXcd>(m, u);
}

}  // namespace

TimeSignal hankel_apply(const RealizationContext& ctx, const TimeSignal& u)
{
    return observe_trace(control_map(ctx, u));
}

TimeSignal hankel_matrix_apply(const RealizationContext& ctx, const TimeSignal& u)
{
    require_same_grid(ctx.grid, u.grid);
    if (u.support != Support::causal) throw std::invalid_argument("Hankel input must be causal");
    const GridConfig& g = ctx.grid;
    const int N = g.half();
    const CVector h = impulse_response(ctx.symbol, g).samples.head(N);
    const CVector uc = u.samples.head(N);
    int K = N;
    while (K > 0 && uc[K - 1] == cplx(0.0)) --K;

    TimeSignal y = TimeSignal::zeros(g, Support::causal);
    // y_j = dt * sum_k h_{j+k+1} u_k
    for (int j = 0; j + 1 < N; ++j) {
        const int len = std::min(K, N - j - 1);
        if (len <= 0) break;
        y.samples[j] = g.dt * (h.segment(j + 1, len).transpose() * uc.head(len))(0);
    }
    y.truncation_suspect = u.truncation_suspect;
    return y;
}

HankelMatrix hankel_matrix(const RealizationContext& ctx, int dim)
{
    const GridConfig& g = ctx.grid;
    check_dim(g, dim);
    const TimeSignal h = impulse_response(ctx.symbol, g);
    HankelMatrix m{dim, Eigen::MatrixXcd::Zero(dim, dim)};
    for (int k = 0; k < dim; ++k)
        for (int j = 0; j < dim; ++j) {
            const int idx = j + k + 1;
            if (idx < g.half()) m.entries(j, k) = g.dt * h.samples[idx];
        }
    return m;
}

std::vector<double> hankel_svd(const RealizationContext& ctx, int dim)
{
    return to_vector(hankel_singular_values(hankel_matrix(ctx, dim).entries, nullptr));
}

FactorizationResidual factorization_residual(const RealizationContext& ctx, const TimeSignal& u)
{
    const double scale = 1.0 + norm(u);
    const TimeSignal freq_path = hankel_apply(ctx, u);
    FactorizationResidual r;
    r.chain = norm(freq_path - observe_trace(control_map(ctx, u))) / scale;
    r.matrix = norm(freq_path - hankel_matrix_apply(ctx, u)) / scale;
    return r;
}

RangeDiagnostics range_diagnostics(const RealizationContext& ctx, int dim, std::uint64_t seed)
{
    const GridConfig& g = ctx.grid;
    const HankelMatrix m = hankel_matrix(ctx, dim);
    Eigen::MatrixXcd u_left;
    const Eigen::VectorXd sv = hankel_singular_values(m.entries, &u_left);

    RangeDiagnostics d;
    d.singular_values = to_vector(sv);
    const double top = dim > 0 ? sv[0] : 0.0;
    int rank = 0;
    while (rank < dim && sv[rank] > kZeroThreshold * top) ++rank;

    if (rank == 0) {
        d.closed_range_verdict = true;
    } else {
        int best = 0;
        double best_ratio = 0.0;
        for (int i = 0; i + 1 < dim; ++i) {
            double ratio = sv[i] / std::max(sv[i + 1], 1e-300);
            if (ratio > best_ratio) {
                best_ratio = ratio;
                best = i;
            }
        }
        if (rank < dim && sv[rank - 1] / std::max(sv[rank], 1e-300) >= kGapFactor) {
            d.closed_range_verdict = true;
            d.gap_index = rank - 1;
        } else if (dim > 1) {
            d.gap_index = best;
        }
        d.exact_ctrb_margin = sv[rank - 1];
    }

    // Reachability of random states on the first dim cells by the discretized input map.
    std::mt19937_64 rng(seed);
    const int trials = 5;
    const Eigen::MatrixXcd range = u_left.leftCols(rank);
    double ctrb = 0.0, obsv = 0.0;
    for (int i = 0; i < trials; ++i) {
        TimeSignal x = random_window_signal(g, rng, dim * g.dt);
        CVector v = x.samples.head(dim);
        CVector fit = range * (range.adjoint() * v);
        ctrb += (v - fit).norm() / v.norm();
        StateVector s = StateVector::from_time(x);
        StateVector back = StateVector::from_time(observe_trace(s));
        obsv += norm(back.freq() - s.freq()) / s.norm();
    }
    d.approx_ctrb_residual = ctrb / trials;
    d.approx_obsv_residual = obsv / trials;

    // Output map on cell indicator states; its block is the identity up to roundoff.
    const int cols = std::min(dim, 64);
    Eigen::MatrixXcd psi(dim, cols);
    for (int k = 0; k < cols; ++k) {
        CVector e = CVector::Zero(k + 1);
        e[k] = 1.0;
        StateVector s = StateVector::from_time(TimeSignal::causal_from(g, e));
        psi.col(k) = observe_trace(s).samples.head(dim);
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> psvd(psi);
    d.exact_obsv_margin = psvd.singularValues()[cols - 1];
    return d;
}

}  // namespace shiftreal
