#include "shiftreal/stability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "polynomial.hpp"

namespace shiftreal {
namespace {

constexpr double kZeroTol = 1e-10;
constexpr double kHalfplaneDepth = 50.0;
constexpr int kNewtonSeeds = 8;

struct Sample {
    double modulus;
    cplx z;
};

std::vector<Sample> lattice(const TransferSymbol& g, const RegionSpec& r)
{
    std::vector<Sample> out;
    out.reserve(std::size_t(r.re_points + 1) * std::size_t(r.im_points + 1));
    for (int i = 0; i <= r.re_points; ++i) {
        const double re = r.re_lo() + (r.re_hi() - r.re_lo()) * i / r.re_points;
        for (int j = 0; j <= r.im_points; ++j) {
            const double im = r.im_max * (2.0 * j / r.im_points - 1.0);
            const cplx z(re, im);
            out.push_back({std::abs(evaluate(g, z)), z});
        }
    }
    return out;
}

std::optional<cplx> newton_zero(const TransferSymbol& g, cplx z)
{
    for (int it = 0; it < 60; ++it) {
        if (!(z.real() >= 0.0)) return std::nullopt;
        const cplx f = evaluate(g, z);
        const double h = 1e-6 * std::max(1.0, std::abs(z));
        cplx df;
        if (z.real() > h)
            df = (evaluate(g, z + h) - evaluate(g, z - h)) / (2.0 * h);
        else
            df = (evaluate(g, z + h) - f) / h;
        if (df == cplx(0.0)) return std::nullopt;
        const cplx step = f / df;
        z -= step;
        if (std::abs(step) < 1e-12 * (1.0 + std::abs(z))) {
            if (z.real() >= 0.0 && std::abs(evaluate(g, z)) < kZeroTol) return z;
            return std::nullopt;
        }
    }
    return std::nullopt;
}

// Roots of the rational factor, when the symbol has one.  A zero that nearly
// cancels a pole is invisible on the lattice, so these seed Newton first.
std::vector<cplx> rational_zero_seeds(const TransferSymbol& g)
{
    const auto dr = as_delayed_rational(g);
    if (!dr || poly::degree(dr->rational.num) < 1) return {};
    return poly::roots(dr->rational.num);
}

// Newton from the known rational zeros and the smallest lattice samples;
// returns a zero inside (lo, hi) on the real part.
std::optional<cplx> locate_zero(const TransferSymbol& g, std::vector<Sample> samples, double lo, double hi)
{
    const std::size_t count = std::min<std::size_t>(kNewtonSeeds, samples.size());
    std::partial_sort(samples.begin(), samples.begin() + std::ptrdiff_t(count), samples.end(),
                      [](const Sample& a, const Sample& b) { return a.modulus < b.modulus; });
    std::vector<cplx> seeds;
    for (cplx r : rational_zero_seeds(g))
        if (r.real() > lo && r.real() < hi) seeds.push_back(r);
    for (std::size_t i = 0; i < count; ++i) seeds.push_back(samples[i].z);
    for (cplx seed : seeds) {
        try {
            auto z = newton_zero(g, seed);
            if (z && z->real() > lo && z->real() < hi) return z;
        } catch (const std::domain_error&) {
            // Newton stepped onto a pole; try the next seed.
        }
    }
    return std::nullopt;
}

InfModulus minimum(const std::vector<Sample>& s)
{
    auto it = std::min_element(s.begin(), s.end(), [](const Sample& a, const Sample& b) { return a.modulus < b.modulus; });
    return InfModulus{it->modulus, it->z, false};
}

}  // namespace

RegionSpec RegionSpec::strip(double alpha)
{
    RegionSpec r;
    r.kind = Kind::strip;
    r.alpha = alpha;
    return r;
}

RegionSpec RegionSpec::halfplane(double rho)
{
    RegionSpec r;
    r.kind = Kind::halfplane;
    r.rho = rho;
    return r;
}

void RegionSpec::validate() const
{
    if (kind == Kind::strip && !(alpha > 0.0)) throw std::invalid_argument("strip width alpha must be positive");
    if (kind == Kind::halfplane && !(rho > 0.0)) throw std::invalid_argument("half-plane abscissa rho must be positive");
    if (re_points < 8 || im_points < 8) throw std::invalid_argument("region sampling counts must be at least 8");
    if (!(im_max > 0.0)) throw std::invalid_argument("im_max must be positive");
}

double RegionSpec::re_lo() const { return kind == Kind::strip ? 0.0 : rho; }
double RegionSpec::re_hi() const { return kind == Kind::strip ? alpha : rho + kHalfplaneDepth; }

InfModulus inf_modulus(const TransferSymbol& g, const RegionSpec& region)
{
    region.validate();
    InfModulus m = minimum(lattice(g, region));
    if (region.kind == RegionSpec::Kind::halfplane) {
        auto d = feedthrough_limit(g).value;
        if (d && std::abs(*d) < m.value) m = InfModulus{std::abs(*d), cplx(region.re_hi(), 0.0), true};
    }
    return m;
}

std::string to_string(Tri t)
{
    switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    default: return "inconclusive";
    }
}

StabilityVerdict stability_verdict(const TransferSymbol& g, double alpha, double rho, const StabilityOptions& opts)
{
    auto region = [&](RegionSpec r) {
        r.re_points = opts.re_points;
        r.im_points = opts.im_points;
        r.im_max = opts.im_max;
        r.validate();
        return r;
    };
    const RegionSpec strip = region(RegionSpec::strip(alpha));
    const RegionSpec half = region(RegionSpec::halfplane(rho));

    StabilityVerdict v;
    v.feedthrough = feedthrough_limit(g).value;

    const std::vector<Sample> ss = lattice(g, strip);
    v.strip = minimum(ss);
    v.strip_zero = locate_zero(g, ss, 0.0, alpha);
    if (v.strip_zero)
        v.exp_stable = Tri::no;
    else if (v.strip.value > opts.margin)
        v.exp_stable = Tri::yes;

    const std::vector<Sample> hs = lattice(g, half);
    v.halfplane = minimum(hs);
    if (v.feedthrough && std::abs(*v.feedthrough) < v.halfplane.value)
        v.halfplane = InfModulus{std::abs(*v.feedthrough), cplx(half.re_hi(), 0.0), true};
    v.halfplane_zero = locate_zero(g, hs, rho, INFINITY);
    if (v.halfplane_zero || (v.feedthrough && std::abs(*v.feedthrough) < kZeroTol))
        v.group = Tri::no;
    else if (v.halfplane.value > opts.margin)
        v.group = Tri::yes;
    return v;
}

double matrix_inner_decay_rate(const MatrixInner& m)
{
    const Eigen::MatrixXcd a = m.a0 - 0.5 * m.b * m.b.adjoint();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a, false);
    return -es.eigenvalues().real().maxCoeff();
}

}  // namespace shiftreal
