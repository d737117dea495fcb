#include "shiftreal/realization.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "fft.hpp"
#include "polynomial.hpp"

namespace shiftreal {
namespace {

void require_right_half_plane(cplx z, const char* what)
{
    if (!(z.real() > 0.0)) throw std::invalid_argument(std::string(what) + " must have positive real part");
}

int grid_steps(double t, const GridConfig& g)
{
    if (!(t >= 0.0)) throw std::invalid_argument("time argument must be nonnegative");
    double m = t / g.dt;
    double r = std::round(m);
    if (std::abs(m - r) > 1e-9 * std::max(1.0, m))
        throw std::invalid_argument("time argument must be an integer multiple of dt");
    return static_cast<int>(r);
}

// i*w_k for every slot.
CVector axis_points(const GridConfig& g)
{
    CVector s(g.n);
    for (int i = 0; i < g.n; ++i) s[i] = cplx(0.0, g.omega(g.signed_index(i)));
    return s;
}

CVector zero_negative_times(CVector x, const GridConfig& g)
{
    x.tail(g.half()).setZero();
    return x;
}

// Linear convolution c_m = sum_k a_{m-k} b_k, first `count` terms.
CVector linear_convolution(const CVector& a, const CVector& b, int count)
{
    int len = 1;
    while (len < a.size() + b.size()) len <<= 1;
    CVector pa = CVector::Zero(len), pb = CVector::Zero(len);
    pa.head(a.size()) = a;
    pb.head(b.size()) = b;
    CVector fa = fft::forward(pa), fb = fft::forward(pb);
    CVector c = fft::backward(CVector(fa.cwiseProduct(fb))) / double(len);
    CVector out = CVector::Zero(count);
    const Eigen::Index take = std::min<Eigen::Index>(count, len);
    out.head(take) = c.head(take);
    return out;
}

}  // namespace

StateVector StateVector::zero(const GridConfig& g) { return StateVector(FreqSignal::zeros(g)); }

StateVector StateVector::from_time(const TimeSignal& x)
{
    if (x.support != Support::causal) throw std::invalid_argument("state trace must be causal");
    return StateVector(to_frequency(x));
}

StateVector StateVector::from_frequency(const FreqSignal& f)
{
    f.grid.validate();
    double leak = leakage_fraction(f, Half::plus);
    if (leak > f.grid.tail_tol)
        throw std::domain_error("state is not numerically in H2 of the right half-plane (energy at negative times " +
                                std::to_string(leak) + ")");
    return StateVector(f);
}

StateVector StateVector::from_function(const GridConfig& g, const std::function<cplx(cplx)>& x_of_s)
{
    return from_frequency(FreqSignal::sample(g, x_of_s));
}

TimeSignal StateVector::time() const
{
    const GridConfig& g = grid();
    TimeSignal x{g, Support::causal, zero_negative_times(fft::backward(freq_.samples) / (g.n * g.dt), g), false};
    x.truncation_suspect = freq_.truncation_suspect || tail_fraction(x) > g.tail_tol;
    return x;
}

RealizationContext RealizationContext::make(const GridConfig& grid, const TransferSymbol& symbol)
{
    grid.validate();
    RealizationContext ctx{grid, symbol, feedthrough_limit(symbol).value, axis_samples(symbol, grid)};
    if (!ctx.axis.allFinite()) throw std::invalid_argument("symbol is not bounded on the axis grid");
    return ctx;
}

cplx boundary_value(const FreqSignal& f)
{
    const GridConfig& g = f.grid;
    const int quarter = g.n / 4;
    cplx full = 0.0, half = 0.0;
    for (int i = 0; i < g.n; ++i) {
        int k = g.signed_index(i);
        if (k == -g.half()) continue;
        full += f.samples[i];
        if (std::abs(k) < quarter) half += f.samples[i];
    }
    const double w = 1.0 / (g.n * g.dt);  // dw / 2pi
    return 2.0 * (2.0 * full - half) * w;
}

StateVector semigroup_apply(const StateVector& x, double t)
{
    const GridConfig& g = x.grid();
    const int m = grid_steps(t, g);
    if (m == 0) return x;
    CVector trace = fft::backward(x.freq().samples) / double(g.n);
    CVector shifted = CVector::Zero(g.n);
    const int h = g.half();
    if (m < h) shifted.head(h - m) = trace.segment(m, h - m);
    return StateVector(FreqSignal{g, fft::forward(shifted), x.freq().truncation_suspect});
}

cplx point_evaluate(const StateVector& x, cplx beta)
{
    require_right_half_plane(beta, "evaluation point");
    const GridConfig& g = x.grid();
    CVector s = axis_points(g);
    CVector r = (beta - s.array()).inverse();
    FreqSignal num{g, x.freq().samples.cwiseProduct(r), false};
    FreqSignal one{g, r, false};
    // Sherman-Morrison: the resolvent of s*x - C(x)*1 evaluated through C.
    return boundary_value(num) / (1.0 + boundary_value(one));
}

StateVector resolvent_apply(const StateVector& x, cplx beta)
{
    require_right_half_plane(beta, "resolvent parameter");
    const GridConfig& g = x.grid();
    const cplx xb = point_evaluate(x, beta);
    CVector s = axis_points(g);
    CVector out = (x.freq().samples.array() - xb) / (beta - s.array());
    return StateVector(FreqSignal{g, out, x.freq().truncation_suspect});
}

StateVector generator_apply(const StateVector& x, double domain_tol)
{
    const GridConfig& g = x.grid();
    const cplx x0 = boundary_value(x.freq());
    CVector s = axis_points(g);
    FreqSignal out{g, (s.array() * x.freq().samples.array() - x0).matrix(), x.freq().truncation_suspect};

    double total = out.samples.squaredNorm(), outer = 0.0;
    for (int i = 0; i < g.n; ++i)
        if (std::abs(g.signed_index(i)) >= g.n / 4) outer += std::norm(out.samples[i]);
    if (total > 0.0 && outer > domain_tol * total)
        throw std::domain_error("x is not in the domain of the generator: s*x(s) - x(0+) is not square integrable "
                                "on the axis (outer-band energy fraction " + std::to_string(outer / total) + ")");
    double leak = leakage_fraction(out, Half::plus);
    if (leak > domain_tol)
        throw std::domain_error("x is not in the domain of the generator: s*x(s) - x(0+) is not causal "
                                "(energy at negative times " + std::to_string(leak) + ")");
    return StateVector(std::move(out));
}

TimeSignal observe_trace(const StateVector& x) { return x.time(); }

StateVector resolvent_of_B(const RealizationContext& ctx, cplx z)
{
    require_right_half_plane(z, "resolvent parameter");
    const cplx gz = evaluate(ctx.symbol, z);
    CVector s = axis_points(ctx.grid);
    CVector out = (ctx.axis.array() - gz) / (z - s.array());
    return StateVector(FreqSignal{ctx.grid, out, false});
}

StateVector control_map(const RealizationContext& ctx, const TimeSignal& u)
{
    require_same_grid(ctx.grid, u.grid);
    if (u.support != Support::causal) throw std::invalid_argument("control input must be causal");
    const GridConfig& g = ctx.grid;
    CVector spec = fft::forward(reflect(u).samples) * g.dt;
    CVector prod = spec.cwiseProduct(ctx.axis);
    CVector trace = zero_negative_times(fft::backward(prod) / double(g.n), g);
    return StateVector(FreqSignal{g, fft::forward(trace), u.truncation_suspect});
}

TimeSignal control_map_adjoint(const RealizationContext& ctx, const StateVector& x)
{
    require_same_grid(ctx.grid, x.grid());
    const GridConfig& g = ctx.grid;
    CVector prod = x.freq().samples.cwiseProduct(ctx.axis.conjugate());
    TimeSignal t{g, Support::two_sided, fft::backward(prod) / (g.n * g.dt), false};
    TimeSignal r = reflect(t);
    r.samples = zero_negative_times(r.samples, g);
    r.support = Support::causal;
    return r;
}

double transfer_identity_residual(const RealizationContext& ctx, cplx s, cplx z)
{
    require_right_half_plane(s, "s");
    require_right_half_plane(z, "z");
    if (s == z) throw std::invalid_argument("transfer identity excludes s = z");
    const cplx lhs = point_evaluate(resolvent_of_B(ctx, z), s);
    const cplx rhs = (evaluate(ctx.symbol, s) - evaluate(ctx.symbol, z)) / (z - s);
    return std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
}

CVector step_increments(const RealizationContext& ctx, int count)
{
    const GridConfig& g = ctx.grid;
    CVector kappa = CVector::Zero(count);
    auto dr = as_delayed_rational(ctx.symbol);
    if (!dr) {
        // Sampled symbols: trapezoid on the discrete impulse response.
        TimeSignal h = impulse_response(ctx.symbol, g);
        for (int j = 1; j < count && j < g.half(); ++j) kappa[j] = 0.5 * g.dt * (h.at(j - 1) + h.at(j));
        return kappa;
    }
    const double lag = dr->tau / g.dt;
    const int L = static_cast<int>(std::llround(lag));
    if (std::abs(lag - L) > 1e-9 * std::max(1.0, lag))
        throw std::invalid_argument("delay must be an integer multiple of dt on the grid");

    poly::Coeffs num = poly::trim(dr->rational.num), den = poly::trim(dr->rational.den);
    const int d = static_cast<int>(den.size()) - 1;
    const cplx lead = den.back();
    const cplx d0 = (static_cast<int>(num.size()) - 1 == d) ? num.back() / lead : cplx(0.0);
    if (L > 0 && L < count) kappa[L] += d0;
    if (d == 0) return kappa;

    // Controllable canonical form of the strictly proper part.
    Eigen::MatrixXcd aug = Eigen::MatrixXcd::Zero(d + 1, d + 1);
    for (int i = 0; i + 1 < d; ++i) aug(i, i + 1) = 1.0;
    for (int i = 0; i < d; ++i) aug(d - 1, i) = -den[i] / lead;
    aug(d - 1, d) = 1.0;
    Eigen::RowVectorXcd c(d);
    for (int i = 0; i < d; ++i) {
        cplx ni = i < static_cast<int>(num.size()) ? num[i] : cplx(0.0);
        c[i] = (ni - d0 * den[i]) / lead;
    }
    // Zero-order hold: exp of the augmented matrix gives Phi and Gamma together.
    Eigen::MatrixXcd e = (aug * g.dt).exp();
    Eigen::MatrixXcd phi = e.topLeftCorner(d, d);
    Eigen::VectorXcd v = e.topRightCorner(d, 1);
    for (int j = 1; j + L < count; ++j) {
        kappa[j + L] += (c * v)(0);
        v = phi * v;
    }
    return kappa;
}

Trajectory simulate(const RealizationContext& ctx, const StateVector& x0, const TimeSignal& u, cplx mu,
                    const SimulateOptions& opts)
{
    require_right_half_plane(mu, "mu");
    require_same_grid(ctx.grid, u.grid);
    require_same_grid(ctx.grid, x0.grid());
    if (u.support != Support::causal) throw std::invalid_argument("input must be causal");
    const GridConfig& g = ctx.grid;
    const int N = g.half();

    const CVector kappa = step_increments(ctx, g.n);
    const CVector uc = u.samples.head(N);
    const CVector free = x0.time().samples.head(N);

    CVector conv;
    if (opts.direct_convolution) {
        conv = CVector::Zero(N);
        for (int m = 0; m < N; ++m)
            for (int k = 0; k < m; ++k) conv[m] += kappa[m - k] * uc[k];
    } else {
        conv = linear_convolution(kappa.head(N), uc, N);
    }

    // C((mu - A)^{-1} B) from the symbol's own axis values: the boundary
    // functional on bilinear samples is off by O(dt) from the warped tail.
    const cplx g_mu = evaluate(ctx.symbol, mu);
    CVector q(g.n);
    for (int i = 0; i < g.n; ++i) {
        const int k = g.signed_index(i);
        const cplx s(0.0, g.omega(k));
        q[i] = k == -g.half() ? cplx(0.0) : (evaluate(ctx.symbol, s) - g_mu) / (mu - s);
    }
    const cplx c_q = boundary_value(FreqSignal{g, q, false});

    Trajectory out;
    out.y = TimeSignal::zeros(g, Support::causal);
    for (int m = 0; m < N; ++m) out.y.samples[m] = free[m] + conv[m] + (g_mu - c_q) * uc[m];
    out.y.truncation_suspect = tail_fraction(out.y) > g.tail_tol;

    for (int m : opts.snapshots) {
        if (m < 0 || m >= N) throw std::invalid_argument("snapshot index outside the causal grid");
        // trace_j = x0(t_m + t_j) + sum_{k<m} kappa_{m+j-k} u_k
        CVector past = uc.head(m);
        CVector tail = linear_convolution(kappa, past, m + N);
        CVector trace = CVector::Zero(N);
        for (int j = 0; j < N; ++j) {
            trace[j] = tail[m + j];
            if (m + j < N) trace[j] += free[m + j];
        }
        out.snapshot_indices.push_back(m);
        out.states.push_back(StateVector::from_time(TimeSignal::causal_from(g, trace)));
    }
    return out;
}

}  // namespace shiftreal
