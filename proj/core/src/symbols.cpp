#include "shiftreal/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "polynomial.hpp"

namespace shiftreal {
namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void validate(const Rational& r)
{
    auto num = poly::trim(r.num);
    auto den = poly::trim(r.den);
    if (den.empty()) throw std::invalid_argument("rational symbol: zero denominator");
    if (poly::degree(num) > poly::degree(den))
        throw std::invalid_argument("rational symbol: numerator degree exceeds denominator degree");
    for (cplx p : poly::roots(den))
        if (!(p.real() < 0.0))
            throw std::invalid_argument("rational symbol: denominator root with nonnegative real part");
}

void validate(const MatrixInner& m)
{
    if (m.a0.rows() != m.a0.cols()) throw std::invalid_argument("matrix-inner symbol: a0 must be square");
    if (m.b.size() != m.a0.rows()) throw std::invalid_argument("matrix-inner symbol: b has wrong length");
    double scale = 1.0 + m.a0.norm();
    if ((m.a0 + m.a0.adjoint()).norm() > 1e-12 * scale)
        throw std::invalid_argument("matrix-inner symbol: a0 is not skew-Hermitian");
}

cplx sampled_value(const Sampled& sm, cplx s)
{
    const GridConfig& g = sm.samples.grid;
    const CVector& v = sm.samples.samples;
    const double dw = g.domega();
    const int h = g.half();
    if (s.real() <= 0.0) {
        double p = s.imag() / dw;
        double r = std::round(p);
        if (std::abs(p - r) < 1e-9) {
            int k = static_cast<int>(r);
            if (k >= -h && k < h) return v[g.slot(k)];
        }
        if (p <= -h) return v[g.slot(-h)];
        if (p >= h - 1) return v[g.slot(h - 1)];
        int k0 = static_cast<int>(std::floor(p));
        double w = p - k0;
        return (1.0 - w) * v[g.slot(k0)] + w * v[g.slot(k0 + 1)];
    }
    // Poisson integral of the boundary values; the weight outside the band
    // goes to the edge sample.
    const double x = s.real(), y = s.imag();
    cplx acc = 0.0;
    double mass = 0.0;
    for (int i = 0; i < g.n; ++i) {
        double w = g.omega(g.signed_index(i));
        double kern = x / (std::numbers::pi * (x * x + (w - y) * (w - y))) * dw;
        acc += kern * v[i];
        mass += kern;
    }
    return acc + std::max(0.0, 1.0 - mass) * v[g.slot(-h)];
}

cplx at_infinity(const TransferSymbol& g)
{
    return std::visit(
        overloaded{
            [](const Rational& r) -> cplx {
                auto num = poly::trim(r.num);
                auto den = poly::trim(r.den);
                return num.size() == den.size() ? num.back() / den.back() : cplx(0.0);
            },
            [](const Blaschke&) -> cplx { return 1.0; },
            [](const MatrixInner&) -> cplx { return 1.0; },
            [](const auto&) -> cplx { throw std::logic_error("no value at infinity for this variant"); }},
        g.variant());
}

cplx grid_value(const TransferSymbol& g, const GridConfig& grid, int slot)
{
    const int k = grid.signed_index(slot);
    return std::visit(
        overloaded{
            [&](const Delay& d) -> cplx {
                double m = d.tau / grid.dt;
                long long mi = std::llround(m);
                if (std::abs(m - double(mi)) > 1e-9 * std::max(1.0, m))
                    throw std::invalid_argument("delay must be an integer multiple of dt on the grid");
                long long phase = (static_cast<long long>(k) * mi) % grid.n;
                return std::polar(1.0, -2.0 * std::numbers::pi * double(phase) / grid.n);
            },
            [&](const Product& p) -> cplx {
                cplx acc = 1.0;
                for (const auto& f : p.factors) acc *= grid_value(f, grid, slot);
                return acc;
            },
            [&](const Sampled& sm) -> cplx {
                require_same_grid(sm.samples.grid, grid);
                return sm.samples.samples[slot];
            },
            [&](const auto&) -> cplx {
                if (k == -grid.half()) return at_infinity(g);
                double sigma = (2.0 / grid.dt) * std::tan(0.5 * grid.omega(k) * grid.dt);
                return evaluate(g, cplx(0.0, sigma));
            }},
        g.variant());
}

std::string num_literal(cplx c)
{
    char buf[96];
    if (c.imag() == 0.0)
        std::snprintf(buf, sizeof buf, "%.17g", c.real());
    else
        std::snprintf(buf, sizeof buf, "%.17g%+.17gi", c.real(), c.imag());
    return buf;
}

std::string join(const std::vector<cplx>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + num_literal(v[i]);
    return s;
}

}  // namespace

TransferSymbol::TransferSymbol(Variant v) : v_(std::move(v))
{
    std::visit(overloaded{[](const Rational& r) { validate(r); },
                          [](const Delay& d) {
                              if (!(d.tau >= 0.0) || !std::isfinite(d.tau))
                                  throw std::invalid_argument("delay must be nonnegative");
                          },
                          [](const Blaschke& b) {
                              for (cplx z : b.zeros)
                                  if (!(z.real() > 0.0))
                                      throw std::invalid_argument("Blaschke zero must have positive real part");
                          },
                          [](const MatrixInner& m) { validate(m); },
                          [](const Product&) {},
                          [](const Sampled& s) {
                              s.samples.grid.validate();
                              if (s.samples.samples.size() != s.samples.grid.n)
                                  throw std::invalid_argument("sampled symbol has wrong length");
                          }},
               v_);
}

TransferSymbol make_constant(cplx c) { return TransferSymbol(Rational{{c}, {1.0}}); }
TransferSymbol make_rational(std::vector<cplx> num, std::vector<cplx> den)
{
    return TransferSymbol(Rational{std::move(num), std::move(den)});
}
TransferSymbol make_delay(double tau) { return TransferSymbol(Delay{tau}); }
TransferSymbol make_blaschke(std::vector<cplx> zeros) { return TransferSymbol(Blaschke{std::move(zeros)}); }
TransferSymbol make_product(std::vector<TransferSymbol> factors)
{
    return TransferSymbol(Product{std::move(factors)});
}
TransferSymbol make_sampled(FreqSignal samples) { return TransferSymbol(Sampled{std::move(samples)}); }

TransferSymbol inner_from_skew(const Eigen::MatrixXcd& a0, const Eigen::VectorXcd& b)
{
    return TransferSymbol(MatrixInner{a0, b});
}

cplx evaluate(const TransferSymbol& g, cplx s)
{
    return std::visit(
        overloaded{
            [&](const Rational& r) -> cplx {
                cplx d = poly::horner(r.den, s);
                if (d == cplx(0.0)) throw std::domain_error("evaluation at a pole");
                return poly::horner(r.num, s) / d;
            },
            [&](const Delay& d) -> cplx { return std::exp(-d.tau * s); },
            [&](const Blaschke& b) -> cplx {
                cplx acc = 1.0;
                for (cplx z : b.zeros) acc *= (s - z) / (s + std::conj(z));
                return acc;
            },
            [&](const MatrixInner& m) -> cplx {
                const Eigen::Index n = m.a0.rows();
                if (n == 0) return 1.0;
                Eigen::MatrixXcd x = s * Eigen::MatrixXcd::Identity(n, n) - m.a0 + 0.5 * m.b * m.b.adjoint();
                Eigen::FullPivLU<Eigen::MatrixXcd> lu(x);
                if (!lu.isInvertible()) throw std::domain_error("evaluation at a pole");
                return 1.0 - m.b.dot(lu.solve(m.b));
            },
            [&](const Product& p) -> cplx {
                cplx acc = 1.0;
                for (const auto& f : p.factors) acc *= evaluate(f, s);
                return acc;
            },
            [&](const Sampled& sm) -> cplx { return sampled_value(sm, s); }},
        g.variant());
}

CVector axis_samples(const TransferSymbol& g, const GridConfig& grid)
{
    grid.validate();
    CVector v(grid.n);
    for (int i = 0; i < grid.n; ++i) v[i] = grid_value(g, grid, i);
    return v;
}

InnerVerdict is_inner(const TransferSymbol& g, const GridConfig& grid, double tol)
{
    grid.validate();
    InnerVerdict out;
    for (int i = 0; i < grid.n; ++i) {
        cplx v = evaluate(g, cplx(0.0, grid.omega(grid.signed_index(i))));
        out.max_boundary_deviation = std::max(out.max_boundary_deviation, std::abs(std::abs(v) - 1.0));
    }
    static const double re[] = {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0};
    static const double im[] = {-50.0, -10.0, -3.0, -1.0, 0.0, 1.0, 3.0, 10.0, 50.0};
    for (double x : re)
        for (double y : im) out.max_interior_modulus = std::max(out.max_interior_modulus, std::abs(evaluate(g, {x, y})));
    out.interior_bound_ok = out.max_interior_modulus <= 1.0 + tol;
    out.is_inner = out.max_boundary_deviation <= tol && out.interior_bound_ok;
    return out;
}

FeedthroughResult feedthrough_limit(const TransferSymbol& g)
{
    std::vector<cplx> vals;
    for (int k = 3; k <= 20; ++k) vals.push_back(evaluate(g, std::ldexp(1.0, k)));
    // One Richardson step removes the leading 1/s term of a proper symbol.
    std::vector<cplx> ext;
    for (std::size_t i = 0; i + 1 < vals.size(); ++i) ext.push_back(2.0 * vals[i + 1] - vals[i]);
    const std::size_t m = ext.size();
    double spread = std::max({std::abs(ext[m - 1] - ext[m - 2]), std::abs(ext[m - 1] - ext[m - 3]),
                              std::abs(ext[m - 2] - ext[m - 3])});
    FeedthroughResult r;
    r.oscillation = spread;
    if (spread <= 1e-8) r.value = ext[m - 1];
    return r;
}

TimeSignal impulse_response(const TransferSymbol& g, const GridConfig& grid)
{
    auto d = feedthrough_limit(g);
    if (!d.value)
        throw std::domain_error("feedthrough limit does not exist (oscillation " + std::to_string(d.oscillation) +
                                "); subtract a known constant from the symbol first");
    FreqSignal f{grid, axis_samples(g, grid), false};
    f.samples.array() -= *d.value;
    return to_time(f, Support::causal);
}

std::optional<DelayedRational> as_delayed_rational(const TransferSymbol& g)
{
    return std::visit(
        overloaded{
            [](const Rational& r) -> std::optional<DelayedRational> { return DelayedRational{r, 0.0}; },
            [](const Delay& d) -> std::optional<DelayedRational> { return DelayedRational{{{1.0}, {1.0}}, d.tau}; },
            [](const Blaschke& b) -> std::optional<DelayedRational> {
                std::vector<cplx> poles;
                for (cplx z : b.zeros) poles.push_back(-std::conj(z));
                return DelayedRational{{poly::from_roots(b.zeros), poly::from_roots(poles)}, 0.0};
            },
            [](const MatrixInner& m) -> std::optional<DelayedRational> {
                if (m.a0.rows() == 0) return DelayedRational{{{1.0}, {1.0}}, 0.0};
                Eigen::MatrixXcd half = 0.5 * m.b * m.b.adjoint();
                Eigen::ComplexEigenSolver<Eigen::MatrixXcd> zs(m.a0 + half, false), ps(m.a0 - half, false);
                std::vector<cplx> z(zs.eigenvalues().begin(), zs.eigenvalues().end());
                std::vector<cplx> p(ps.eigenvalues().begin(), ps.eigenvalues().end());
                return DelayedRational{{poly::from_roots(z), poly::from_roots(p)}, 0.0};
            },
            [](const Product& p) -> std::optional<DelayedRational> {
                DelayedRational acc{{{1.0}, {1.0}}, 0.0};
                for (const auto& f : p.factors) {
                    auto part = as_delayed_rational(f);
                    if (!part) return std::nullopt;
                    acc.rational.num = poly::multiply(acc.rational.num, part->rational.num);
                    acc.rational.den = poly::multiply(acc.rational.den, part->rational.den);
                    acc.tau += part->tau;
                }
                return acc;
            },
            [](const Sampled&) -> std::optional<DelayedRational> { return std::nullopt; }},
        g.variant());
}

double sup_on_grid(const TransferSymbol& g, const GridConfig& grid)
{
    return axis_samples(g, grid).cwiseAbs().maxCoeff();
}

std::string describe(const TransferSymbol& g)
{
    return std::visit(
        overloaded{[](const Rational& r) { return "rational:" + join(r.num) + "/" + join(r.den); },
                   [](const Delay& d) { return "delay:" + num_literal(d.tau); },
                   [](const Blaschke& b) { return "blaschke:" + join(b.zeros); },
                   [](const MatrixInner& m) {
                       return "matinner:" + std::to_string(m.a0.rows()) + "x" + std::to_string(m.a0.cols());
                   },
                   [](const Product& p) {
                       std::string s = "product:(";
                       for (std::size_t i = 0; i < p.factors.size(); ++i) s += (i ? ";" : "") + describe(p.factors[i]);
                       return s + ")";
                   },
                   [](const Sampled& s) { return "sampled:" + std::to_string(s.samples.grid.n); }},
        g.variant());
}

}  // namespace shiftreal
