#include "shiftreal/model_space.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include <Eigen/Dense>

#include "shiftreal/random_inputs.hpp"

namespace shiftreal {

struct ModelSpaceContext::Cache {
    std::once_flag kernel_once;
    std::vector<TimeSignal> frame;  // kernel elements of the anticausal frame
    Eigen::MatrixXcd basis;

    std::once_flag range_once;
    Eigen::MatrixXcd range_basis;  // orthonormal basis of the span of B e_k
};

namespace {

constexpr double kDropTol = 1e-10;

CVector scaled_head(const TimeSignal& x) { return x.samples.head(x.grid.half()) * std::sqrt(x.grid.dt); }

TimeSignal from_scaled(const GridConfig& g, const CVector& v) { return TimeSignal::causal_from(g, v / std::sqrt(g.dt)); }

FreqSignal multiply(const CVector& axis, const FreqSignal& f) { return FreqSignal{f.grid, axis.cwiseProduct(f.samples), f.truncation_suspect}; }

// Every cell before the delay, then later cells at a spacing of 1/16 time
// unit over one unit and on a geometric ladder out to the horizon.
std::vector<int> range_columns(const RealizationContext& ctx)
{
    const GridConfig& g = ctx.grid;
    double tau = 0.0;
    if (auto dr = as_delayed_rational(ctx.symbol)) tau = dr->tau;
    const int lag = static_cast<int>(std::min<long>(std::lround(tau / g.dt), g.half()));
    std::vector<int> cells;
    for (int k = 0; k < lag; ++k) cells.push_back(k);
    const int step = std::max(1, static_cast<int>(std::lround(1.0 / (16.0 * g.dt))));
    for (int j = 1; j < 16; ++j) cells.push_back(lag + j * step);
    for (long k = 1; lag + k - 1 < g.half(); k *= 2) cells.push_back(static_cast<int>(lag + k - 1));
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    while (!cells.empty() && cells.back() >= g.half()) cells.pop_back();
    return cells;
}

}  // namespace

std::vector<double> kernel_frame_rates()
{
    std::vector<double> a;
    for (int k = 0; k < 16; ++k) a.push_back(0.125 * std::pow(2.0, k / 2.0));
    return a;
}

ModelSpaceContext ModelSpaceContext::make(const RealizationContext& ctx, double tol)
{
    InnerVerdict v = is_inner(ctx.symbol, ctx.grid, tol);
    if (!v.is_inner)
        throw std::invalid_argument("symbol is not inner (boundary deviation " + std::to_string(v.max_boundary_deviation) +
                                    ", interior max modulus " + std::to_string(v.max_interior_modulus) + ")");
    return ModelSpaceContext(ctx, tol, v);
}

ModelSpaceContext::ModelSpaceContext(RealizationContext ctx, double tol, InnerVerdict v)
    : ctx_(std::move(ctx)), tol_(tol), verdict_(v), cache_(std::make_shared<Cache>())
{
}

const Eigen::MatrixXcd& ModelSpaceContext::kernel_basis() const
{
    std::call_once(cache_->kernel_once, [this] {
        const GridConfig& g = ctx_.grid;
        const std::vector<double> rates = kernel_frame_rates();
        Eigen::MatrixXcd cols(g.half(), static_cast<Eigen::Index>(rates.size()));
        for (std::size_t k = 0; k < rates.size(); ++k) {
            const double a = rates[k];
            TimeSignal v = TimeSignal::sample(g, Support::anticausal, [a](double t) { return cplx(-std::exp(a * t)); });
            TimeSignal q = kernel_element(*this, to_frequency(v));
            cols.col(static_cast<Eigen::Index>(k)) = scaled_head(q);
            cache_->frame.push_back(std::move(q));
        }
        Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr;
        qr.setThreshold(kDropTol);
        qr.compute(cols);
        const Eigen::Index r = qr.rank();
        cache_->basis = qr.householderQ() * Eigen::MatrixXcd::Identity(cols.rows(), r);
    });
    return cache_->basis;
}

const std::vector<TimeSignal>& ModelSpaceContext::kernel_frame() const
{
    kernel_basis();
    return cache_->frame;
}

const Eigen::MatrixXcd& ModelSpaceContext::range_basis() const
{
    std::call_once(cache_->range_once, [this] {
        const GridConfig& g = ctx_.grid;
        const std::vector<int> cells = range_columns(ctx_);
        Eigen::MatrixXcd a(g.half(), static_cast<Eigen::Index>(cells.size()));
        for (std::size_t c = 0; c < cells.size(); ++c) {
            CVector e = CVector::Zero(cells[c] + 1);
            e[cells[c]] = 1.0;
            a.col(Eigen::Index(c)) = scaled_head(observe_trace(control_map(ctx_, TimeSignal::causal_from(g, e))));
        }
        Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr;
        qr.setThreshold(kDropTol);
        qr.compute(a);
        cache_->range_basis = qr.householderQ() * Eigen::MatrixXcd::Identity(a.rows(), qr.rank());
    });
    return cache_->range_basis;
}

StateVector project_model_space(const ModelSpaceContext& m, const StateVector& x)
{
    const RealizationContext& ctx = m.realization();
    require_same_grid(ctx.grid, x.grid());
    FreqSignal inner = project_h2(multiply(ctx.axis.conjugate(), x.freq()), Half::plus);
    return StateVector(x.freq() - multiply(ctx.axis, inner));
}

double invariance_residual(const ModelSpaceContext& m, const StateVector& x, double t)
{
    StateVector shifted = semigroup_apply(project_model_space(m, x), t);
    StateVector out = project_model_space(m, shifted);
    return norm(shifted.freq() - out.freq()) / (1.0 + x.norm());
}

TimeSignal kernel_element(const ModelSpaceContext& m, const FreqSignal& v)
{
    const RealizationContext& ctx = m.realization();
    require_same_grid(ctx.grid, v.grid);
    const double leak = leakage_fraction(v, Half::minus);
    if (leak > ctx.grid.tail_tol)
        throw std::domain_error("v is not in H2 of the left half-plane (energy at nonnegative times " +
                                std::to_string(leak) + ")");
    FreqSignal q = reflect(multiply(ctx.axis.conjugate(), project_h2(v, Half::minus)));
    return to_time(q, Support::causal);
}

PartialIsometryResult partial_isometry_residual(const ModelSpaceContext& m, const TimeSignal& u)
{
    const RealizationContext& ctx = m.realization();
    const GridConfig& g = ctx.grid;
    require_same_grid(g, u.grid);
    if (u.support != Support::causal) throw std::invalid_argument("input must be causal");

    const Eigen::MatrixXcd& Q = m.kernel_basis();
    const CVector x = scaled_head(u);
    const CVector ker = Q * (Q.adjoint() * x);
    const CVector perp = x - ker;

    PartialIsometryResult r;
    r.kernel_norm = ker.norm();
    r.residual = std::abs(control_map(ctx, u).norm() - perp.norm()) / (1.0 + x.norm());

    FreqSignal f = multiply(ctx.axis, reflect(to_frequency(from_scaled(g, perp))));
    r.orthogonality = std::abs(inner_product(f, project_h2(f, Half::minus)));
    return r;
}

double range_completeness(const ModelSpaceContext& m, const StateVector& v)
{
    const RealizationContext& ctx = m.realization();
    const GridConfig& g = ctx.grid;
    require_same_grid(g, v.grid());
    const double vn = v.norm();
    if (vn == 0.0) return 0.0;
    const double off = norm(v.freq() - project_model_space(m, v).freq());
    if (off > m.tol() * vn)
        throw std::domain_error("state is not in the model space (relative distance " + std::to_string(off / vn) + ")");

    const Eigen::MatrixXcd& basis = m.range_basis();
    const CVector target = scaled_head(v.time());
    const CVector resid = target - basis * (basis.adjoint() * target);
    return resid.norm() / target.norm();
}

StateVector random_model_space_element(const ModelSpaceContext& m, std::mt19937_64& rng)
{
    return project_model_space(m, StateVector::from_time(random_causal_signal(m.grid(), rng)));
}

TimeSignal random_split_input(const ModelSpaceContext& m, std::mt19937_64& rng)
{
    const RealizationContext& ctx = m.realization();
    TimeSignal w = control_map_adjoint(ctx, random_model_space_element(m, rng));
    const double scale = 0.25 * norm(w);
    std::normal_distribution<double> gauss;
    for (const TimeSignal& q : m.kernel_frame()) {
        const double qn = norm(q);
        if (qn == 0.0) continue;
        double re = gauss(rng);
        double im = gauss(rng);
        w = w + (cplx(re, im) * (scale / qn)) * q;
    }
    return w;
}

}  // namespace shiftreal
