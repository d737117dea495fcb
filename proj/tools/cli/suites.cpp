#include "cli/suites.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "shiftreal/hankel.hpp"
#include "shiftreal/model_space.hpp"
#include "shiftreal/random_inputs.hpp"
#include "shiftreal/stability.hpp"
#include "shiftreal/weighted.hpp"

namespace shiftreal::cli {
namespace {

const double kNaN = std::nan("");

std::string format_complex(cplx z)
{
    std::string s = format_double(z.real());
    if (z.imag() >= 0.0 || std::isnan(z.imag())) s += "+";
    return s + format_double(z.imag()) + "i";
}

SuiteReport header(const std::string& suite, const SuiteInput& in)
{
    SuiteReport r;
    r.suite = suite;
    r.symbol = in.literal;
    r.grid = in.grid;
    r.seed = in.seed;
    return r;
}

StateVector random_state(const GridConfig& g, std::mt19937_64& rng)
{
    return StateVector::from_time(random_causal_signal(g, rng));
}

std::vector<std::pair<cplx, cplx>> random_pairs(std::mt19937_64& rng, int count)
{
    std::uniform_real_distribution<double> re(0.2, 4.0), im(-4.0, 4.0);
    std::vector<std::pair<cplx, cplx>> out;
    while (static_cast<int>(out.size()) < count) {
        double a = re(rng), b = im(rng), c = re(rng), d = im(rng);
        cplx s(a, b), z(c, d);
        if (std::abs(s - z) > 1e-3) out.emplace_back(s, z);
    }
    return out;
}

double max_transfer_residual(const RealizationContext& ctx, const std::vector<std::pair<cplx, cplx>>& pairs)
{
    double worst = 0.0;
    for (const auto& [s, z] : pairs) worst = std::max(worst, transfer_identity_residual(ctx, s, z));
    return worst;
}

double rel(double err, double scale) { return scale > 0.0 ? err / scale : err; }

void add_model_space_checks(SuiteReport& r, const RealizationContext& ctx, const ModelSpaceContext& m,
                            std::mt19937_64& rng)
{
    const GridConfig& g = ctx.grid;

    double inv = 0.0, lands = 0.0, obs = 0.0, idem = 0.0, adj = 0.0;
    for (int i = 0; i < 5; ++i) {
        StateVector x = random_state(g, rng);
        StateVector y = random_state(g, rng);
        inv = std::max(inv, invariance_residual(m, x, 0.25));

        TimeSignal u = random_causal_signal(g, rng);
        StateVector bu = control_map(ctx, u);
        lands = std::max(lands, rel(norm(bu.freq() - project_model_space(m, bu).freq()), norm(u)));

        StateVector px = project_model_space(m, x);
        obs = std::max(obs, rel(std::abs(norm(observe_trace(px)) - px.norm()), px.norm()));
        idem = std::max(idem, rel(norm(project_model_space(m, px).freq() - px.freq()), x.norm()));
        StateVector py = project_model_space(m, y);
        adj = std::max(adj, std::abs(inner_product(px.freq(), y.freq()) - inner_product(x.freq(), py.freq())) /
                                (x.norm() * y.norm()));
    }
    r.add("model_space_invariance", "thus we have that", inv, 1e-8);
    r.add("control_map_lands_in_model_space", "maps into $V$", lands, 1e-8);
    r.add("model_space_observability_isometry", "is exactly observable", obs, 1e-12);
    r.add("model_space_projector_idempotent", "V=[G \\bmi{H}_2", idem, 1e-10);
    r.add("model_space_projector_self_adjoint", "V=[G \\bmi{H}_2", adj, 1e-10);

    double ker = 0.0;
    for (const TimeSignal& q : m.kernel_frame()) ker = std::max(ker, rel(control_map(ctx, q).norm(), norm(q)));
    r.add("kernel_elements_annihilated", "We claim that", ker, 1e-6);

    double pi = 0.0, orth = 0.0;
    for (int i = 0; i < 10; ++i) {
        TimeSignal u = random_split_input(m, rng);
        PartialIsometryResult p = partial_isometry_residual(m, u);
        pi = std::max(pi, p.residual);
        const double un = norm(u);
        orth = std::max(orth, rel(p.orthogonality, un * un));
    }
    r.add("partial_isometry", "it is a partial isometry", pi, 1e-3);
    r.add("partial_isometry_orthogonality", "inner product in Laplace domain equals", orth, 1e-6);

    double range = 0.0;
    for (int i = 0; i < 5; ++i) range = std::max(range, range_completeness(m, random_model_space_element(m, rng)));
    r.add("range_completeness", "This proves that the range of", range, 1e-6);

    if (ctx.feedthrough) {
        const HankelSize hs = hankel_matrix_size(ctx.symbol, g, 1);
        double dist = 0.0;
        for (double s : hankel_svd(ctx, hs.size)) dist = std::max(dist, std::min(std::abs(s), std::abs(s - 1.0)));
        Check& c = r.add("hankel_spectrum_partial_isometry", "the Hankel operator with symbol", dist, 1e-2);
        // A capped matrix truncates the kernel; a miss then says nothing about the operator.
        if (!hs.resolved && c.status == Status::fail) c.status = Status::inconclusive;
    } else {
        r.add_status("hankel_spectrum_partial_isometry", "the Hankel operator with symbol", kNaN, 1e-2,
                     Status::inconclusive);
    }
}

}  // namespace

HankelSize hankel_matrix_size(const TransferSymbol& g, const GridConfig& grid, int count)
{
    const int cap = std::min(grid.half(), std::max(count, 2048));
    int want = 1024;
    if (feedthrough_limit(g).value) {
        // Smallest size past which the impulse response keeps < 1e-4 of its energy.
        const CVector h = impulse_response(g, grid).samples.head(grid.half());
        const double total = h.squaredNorm();
        double tail = total;
        want = 0;
        while (want < grid.half() && tail > 1e-4 * total) tail -= std::norm(h[want++]);
        want = std::max(want + 1, 256);
    }
    want = std::max(want, count);
    return HankelSize{std::min(want, cap), want <= cap};
}

SuiteReport verify_suite(const SuiteInput& in)
{
    SuiteReport r = header("verify", in);
    const RealizationContext ctx = RealizationContext::make(in.grid, in.symbol);
    const GridConfig& g = ctx.grid;
    std::mt19937_64 rng(in.seed);

    double iso = 0.0;
    for (int i = 0; i < 20; ++i) {
        StateVector x = random_state(g, rng);
        iso = std::max(iso, rel(std::abs(norm(observe_trace(x)) - x.norm()), x.norm()));
    }
    r.add("observability_isometry", "is exactly observable", iso, 1e-12);

    {
        StateVector x = random_state(g, rng);
        StateVector a = semigroup_apply(semigroup_apply(x, 0.25), 0.5);
        StateVector b = semigroup_apply(x, 0.75);
        r.add("semigroup_law", "we get from the equation above", rel(norm(a.freq() - b.freq()), x.norm()), 1e-12);
    }

    const cplx beta(1.0, 0.5), gamma(2.0, -1.0);
    double ri = 0.0, gr = 0.0, rz = 0.0;
    for (int i = 0; i < 5; ++i) {
        StateVector x = random_state(g, rng);
        StateVector rb = resolvent_apply(x, beta);
        StateVector rg = resolvent_apply(x, gamma);
        FreqSignal lhs = rb.freq() - rg.freq();
        FreqSignal rhs = (gamma - beta) * resolvent_apply(rg, beta).freq();
        ri = std::max(ri, rel(norm(lhs - rhs), x.norm()));
        try {
            FreqSignal arx = generator_apply(rb).freq();
            gr = std::max(gr, rel(norm(arx - (beta * rb.freq() - x.freq())), x.norm()));
        } catch (const std::domain_error&) {
            gr = kNaN;  // the grid cannot resolve the resolvent output as a domain element
        }
        const cplx xb = point_evaluate(x, beta);
        rz = std::max(rz, std::abs(boundary_value(rb.freq()) - xb) / (1.0 + std::abs(xb)));
    }
    r.add("resolvent_identity", "formula for the resolvent operator", ri, 1e-8);
    r.add("generator_resolvent_relation", "has as infinitesimal generator", gr, 1e-8);
    r.add("resolvent_value_at_zero", "is the Laplace transform of", rz, 1e-10);

    const auto pairs = random_pairs(rng, 20);
    const double coarse = max_transfer_residual(ctx, pairs);
    r.add("transfer_identity", "well-posed linear system", coarse, 1e-4);
    if (coarse <= 1e-12) {
        r.add("transfer_identity_refinement", "well-posed linear system", coarse, 1e-12);
    } else if (g.n <= (1 << 21) && !ctx.symbol.get_if<Sampled>()) {
        GridConfig fine = g;
        fine.n *= 2;
        fine.dt /= 2.0;
        const double ratio = coarse / max_transfer_residual(RealizationContext::make(fine, in.symbol), pairs);
        r.add("transfer_identity_refinement", "well-posed linear system", ratio, 1.8, Compare::at_least);
    } else {
        r.add_status("transfer_identity_refinement", "well-posed linear system", kNaN, 1.8, Status::inconclusive);
    }

    if (ctx.feedthrough) {
        double fac = 0.0, bound = 0.0;
        const double sup = sup_on_grid(ctx.symbol, g);
        for (int i = 0; i < 3; ++i) {
            TimeSignal u = random_causal_signal(g, rng);
            FactorizationResidual f = factorization_residual(ctx, u);
            fac = std::max({fac, f.chain, f.matrix});
            bound = std::max(bound, rel(norm(hankel_apply(ctx, u)), sup * norm(u)));
        }
        r.add("hankel_factorization", "H_G = \\Psi", fac, 1e-6);
        r.add("hankel_norm_bound", "the Hankel operator with symbol", bound, 1.0 + 1e-12);

        TimeSignal u = random_causal_signal(g, rng);
        StateVector x0 = random_state(g, rng);
        const int N = g.half();
        SimulateOptions opts;
        opts.snapshots = {N / 16, N / 8};
        Trajectory t1 = simulate(ctx, x0, u, 1.0, opts);
        double dev = 0.0;
        for (double mu : {2.0, 5.0}) {
            Trajectory t = simulate(ctx, x0, u, mu);
            dev = std::max(dev, rel(norm(t.y - t1.y), norm(t1.y)));
        }
        r.add("trajectory_mu_independence", "does not depend on", dev, 1e-4);
        double ft = 0.0;
        for (std::size_t k = 0; k < t1.states.size(); ++k) {
            const int m = t1.snapshot_indices[k];
            const cplx ym = t1.y.at(m);
            const cplx cx = t1.states[k].time().at(0);
            ft = std::max(ft, std::abs(ym - cx - *ctx.feedthrough * u.at(m)) / (1.0 + std::abs(ym)));
        }
        r.add("trajectory_feedthrough", "regular system", ft, 1e-4);
    } else {
        for (const char* id : {"hankel_factorization", "hankel_norm_bound", "trajectory_mu_independence",
                               "trajectory_feedthrough"})
            r.add_status(id, "regular system", kNaN, kNaN, Status::inconclusive);
    }

    const InnerVerdict iv = is_inner(ctx.symbol, g, in.tol);
    r.fact("is_inner", iv.is_inner ? "true" : "false");
    r.fact("feedthrough", ctx.feedthrough ? format_complex(*ctx.feedthrough) : "none");
    if (iv.is_inner) add_model_space_checks(r, ctx, ModelSpaceContext::make(ctx, in.tol), rng);
    return r;
}

SuiteReport model_space_suite(const SuiteInput& in)
{
    SuiteReport r = header("model-space", in);
    const RealizationContext ctx = RealizationContext::make(in.grid, in.symbol);
    const ModelSpaceContext m = ModelSpaceContext::make(ctx, in.tol);
    std::mt19937_64 rng(in.seed);
    r.fact("max_boundary_deviation", format_double(m.verdict().max_boundary_deviation));
    r.fact("kernel_basis_rank", std::to_string(m.kernel_basis().cols()));
    add_model_space_checks(r, ctx, m, rng);
    return r;
}

SuiteReport hankel_svd_report(const SuiteInput& in, int dim)
{
    SuiteReport r = header("hankel-svd", in);
    const RealizationContext ctx = RealizationContext::make(in.grid, in.symbol);
    if (dim < 1) throw std::invalid_argument("--dim must be positive");
    const HankelSize hs = hankel_matrix_size(ctx.symbol, ctx.grid, dim);
    const int size = hs.size;
    if (dim > size) throw std::invalid_argument("--dim exceeds n/2");
    const RangeDiagnostics d = range_diagnostics(ctx, size, in.seed);

    Table t{"singular_values", {"index", "value"}, {}};
    bool sorted = true;
    for (int i = 0; i < dim; ++i) {
        t.rows.push_back({double(i), d.singular_values[std::size_t(i)]});
        if (i > 0 && d.singular_values[std::size_t(i)] > d.singular_values[std::size_t(i - 1)]) sorted = false;
    }
    r.tables.push_back(t);
    r.primary_table = 0;

    r.fact("matrix_size", std::to_string(size));
    r.fact("kernel_resolved", hs.resolved ? "true" : "false");
    r.fact("gap_index", d.gap_index ? std::to_string(*d.gap_index) : "none");
    r.fact("closed_range_heuristic", d.closed_range_verdict ? "true" : "false");
    r.fact("approx_ctrb_residual", format_double(d.approx_ctrb_residual));
    r.fact("approx_obsv_residual", format_double(d.approx_obsv_residual));
    r.fact("exact_ctrb_margin", format_double(d.exact_ctrb_margin));
    r.fact("exact_obsv_margin", format_double(d.exact_obsv_margin));

    r.add_status("singular_values_sorted", "the Hankel operator with symbol", sorted ? 0.0 : 1.0, 0.0,
                 sorted ? Status::pass : Status::fail);
    r.add("output_map_margin", "is exactly observable", std::abs(d.exact_obsv_margin - 1.0), 1e-10);
    // Heuristic (gap factor 10, zero threshold 1e-8 of the top value); never a failure.
    r.add_status("closed_range_heuristic", "has closed range, then all", d.gap_index ? double(*d.gap_index) : kNaN,
                 10.0, d.closed_range_verdict ? Status::pass : Status::inconclusive);
    return r;
}

SuiteReport stability_report(const SuiteInput& in, double alpha, double rho)
{
    SuiteReport r = header("stability", in);
    const StabilityOptions opts;
    const StabilityVerdict v = stability_verdict(in.symbol, alpha, rho, opts);
    r.fact("alpha", format_double(alpha));
    r.fact("rho", format_double(rho));
    r.fact("exp_stable", to_string(v.exp_stable));
    r.fact("group", to_string(v.group));
    r.fact("strip_inf_modulus", format_double(v.strip.value));
    r.fact("strip_argmin", format_complex(v.strip.argmin));
    r.fact("halfplane_inf_modulus", format_double(v.halfplane.value));
    r.fact("halfplane_argmin", format_complex(v.halfplane.argmin));
    r.fact("halfplane_from_asymptote", v.halfplane.from_asymptote ? "true" : "false");
    r.fact("strip_zero", v.strip_zero ? format_complex(*v.strip_zero) : "none");
    r.fact("halfplane_zero", v.halfplane_zero ? format_complex(*v.halfplane_zero) : "none");
    r.fact("feedthrough", v.feedthrough ? format_complex(*v.feedthrough) : "none");

    auto conclusive = [](Tri t) { return t == Tri::inconclusive ? Status::inconclusive : Status::pass; };
    r.add_status("exp_stable_verdict", "exponentially stable if and only if", v.strip.value, opts.margin,
                 conclusive(v.exp_stable), Compare::at_least);
    r.add_status("group_verdict", "a group if and only if", v.halfplane.value, opts.margin, conclusive(v.group),
                 Compare::at_least);

    RegionSpec fine = RegionSpec::strip(alpha);
    fine.re_points = 2 * opts.re_points;
    fine.im_points = 2 * opts.im_points;
    r.add("lattice_refinement_monotone", "exponentially stable if and only if",
          inf_modulus(in.symbol, fine).value - v.strip.value, 1e-12);

    if (const MatrixInner* mi = in.symbol.get_if<MatrixInner>()) {
        const double rate = matrix_inner_decay_rate(*mi);
        const Tri expected = alpha < rate ? Tri::yes : Tri::no;
        r.fact("matrix_decay_rate", format_double(rate));
        r.add("matrix_oracle_agreement", "exponentially stable if and only if", v.exp_stable == expected ? 0.0 : 1.0,
              0.0);
    }
    return r;
}

SuiteReport simulate_report(const SuiteInput& in, const TimeSignal& u, cplx mu)
{
    SuiteReport r = header("simulate", in);
    const RealizationContext ctx = RealizationContext::make(in.grid, in.symbol);
    const GridConfig& g = ctx.grid;
    const int N = g.half();
    SimulateOptions opts;
    opts.snapshots = {N / 16, N / 8};
    const Trajectory t = simulate(ctx, StateVector::zero(g), u, mu, opts);

    Table y{"output", {"t", "re", "im"}, {}};
    for (int m = 0; m < N; ++m) y.rows.push_back({g.time(m), t.y.samples[m].real(), t.y.samples[m].imag()});
    r.tables.push_back(std::move(y));
    r.primary_table = 0;
    r.fact("mu", format_complex(mu));

    if (ctx.feedthrough) {
        double ft = 0.0;
        for (std::size_t k = 0; k < t.states.size(); ++k) {
            const int m = t.snapshot_indices[k];
            const cplx ym = t.y.at(m);
            ft = std::max(ft, std::abs(ym - t.states[k].time().at(0) - *ctx.feedthrough * u.at(m)) / (1.0 + std::abs(ym)));
        }
        r.add("trajectory_feedthrough", "regular system", ft, 1e-4);
    }
    r.add_status("output_tail_clean", "the system trajectory of a", t.y.truncation_suspect ? 1.0 : 0.0, 0.0,
                 t.y.truncation_suspect ? Status::inconclusive : Status::pass);
    return r;
}

SuiteReport weighted_demo_report(const GridConfig& g, std::uint64_t seed, int n_max)
{
    SuiteReport r;
    r.suite = "weighted-demo";
    r.symbol = "none";
    r.grid = g;
    r.seed = seed;
    std::mt19937_64 rng(seed);

    const auto rows = inequivalence_demo(g, n_max);
    Table t{"inequivalence", {"n", "unweighted_norm", "weighted_norm", "ratio"}, {}};
    double table_err = 0.0;
    for (const auto& row : rows) {
        t.rows.push_back({double(row.n), row.unweighted_norm, row.weighted_norm, row.ratio});
        const double want = std::exp(-2.0 * row.n) * (1.0 - std::exp(-2.0)) / 2.0;
        table_err = std::max(table_err, std::abs(row.ratio * row.ratio - want));
    }
    r.tables.push_back(std::move(t));
    r.primary_table = 0;
    r.add("inequivalence_closed_form", "would be equivalent", table_err, 1e-10);

    double growth = 0.0, below = 0.0;
    for (int i = 0; i < 100; ++i) {
        WeightedSignal f{random_causal_signal(g, rng), 1.0};
        below = std::max(below, weighted_norm(f) / norm(f.base));
        for (double s : {g.dt, 0.5, 1.0, 2.0}) growth = std::max(growth, weighted_growth_ratio(f, s) / std::exp(s));
    }
    r.add("growth_bound", "Now we shall calculate the norm", growth, 1.0 + 1e-12);
    r.add("weighted_below_unweighted", "closure of $V$ in the topology of", below, 1.0);

    TimeSignal late = random_causal_signal(g, rng);
    late.samples.head(std::lround(1.0 / g.dt)).setZero();
    r.add("growth_equality_case", "Now we shall calculate the norm",
          std::abs(weighted_growth_ratio(WeightedSignal{late, 1.0}, 1.0) - std::exp(1.0)), 1e-10);

    TimeSignal decay = TimeSignal::sample(g, Support::causal, [](double s) { return cplx(std::exp(-s)); });
    r.add("finite_time_ratio", "Thus for $t_0$", std::abs(finite_time_ratio(decay, 1.0) - (1.0 - std::exp(-2.0))),
          1e-4);
    return r;
}

}  // namespace shiftreal::cli
