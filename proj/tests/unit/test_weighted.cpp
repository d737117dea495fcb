#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "shiftreal/random_inputs.hpp"
#include "shiftreal/weighted.hpp"

using namespace shiftreal;
using fixtures::cplx;

namespace {

// Exact cell weight (1 - e^{-2 dt})/2 * e^{-2 t_k}.
double cell_weight(const GridConfig& g, int k) { return -std::expm1(-2.0 * g.dt) / 2.0 * std::exp(-2.0 * k * g.dt); }

}  // namespace

TEST(WeightedNorm, Indicator)
{
    const GridConfig g = fixtures::default_grid();
    const double v = weighted_norm({fixtures::indicator(g, 0.0, 1.0)});
    EXPECT_NEAR(v, std::sqrt((1.0 - std::exp(-2.0)) / 2.0), 1e-12);
    EXPECT_NEAR(v, 0.6575, 1e-4);
    EXPECT_EQ(weighted_norm({TimeSignal::zeros(g)}), 0.0);
}

TEST(WeightedNorm, SampledExponential)
{
    // Samples e^{-2 t_k} as cell values: sum e^{-4 t_k} w_k in closed form, and 1/6 up to O(dt).
    const GridConfig g = fixtures::default_grid();
    const double v = weighted_norm({fixtures::exp_decay(g, 2.0)});
    const double exact = cell_weight(g, 0) / (1.0 - std::exp(-6.0 * g.dt));
    EXPECT_NEAR(v * v, exact, 1e-12);
    EXPECT_NEAR(v, std::sqrt(1.0 / 6.0), g.dt);
}

TEST(WeightedNorm, NeverExceedsUnweighted)
{
    const GridConfig g = fixtures::default_grid();
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        const TimeSignal f = random_causal_signal(g, rng);
        EXPECT_LE(weighted_norm({f}), norm(f));
    }
}

TEST(GrowthRatio, Examples)
{
    const GridConfig g = fixtures::default_grid();
    const TimeSignal f = fixtures::exp_decay(g, 2.0);
    EXPECT_NEAR(weighted_growth_ratio({f}, 1.0), std::exp(-2.0), 1e-12);
    EXPECT_NEAR(weighted_growth_ratio({f}, 0.0), 1.0, 1e-15);
    const TimeSignal late = fixtures::indicator(g, 1.0, 3.0);
    EXPECT_NEAR(weighted_growth_ratio({late}, 1.0), std::exp(1.0), 1e-10);
    EXPECT_THROW(weighted_growth_ratio({TimeSignal::zeros(g)}, 1.0), std::domain_error);
    EXPECT_THROW(weighted_growth_ratio({f}, 0.3 * g.dt), std::invalid_argument);
}

TEST(GrowthRatio, BoundOnRandomSignals)
{
    const GridConfig g = fixtures::default_grid();
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 100; ++rep) {
        const TimeSignal f = random_causal_signal(g, rng);
        for (double t : {g.dt, 0.5, 1.0, 2.0}) EXPECT_LE(weighted_growth_ratio({f}, t), std::exp(t) * (1.0 + 1e-12));
    }
}

TEST(GrowthRatio, EqualityWhenSignalStartsLate)
{
    const GridConfig g = fixtures::default_grid();
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 10; ++rep) {
        TimeSignal f = random_causal_signal(g, rng);
        f.samples.head(512).setZero();
        for (double t : {0.5, 2.0}) EXPECT_NEAR(weighted_growth_ratio({f}, t) / std::exp(t), 1.0, 1e-10);
    }
}

TEST(FiniteTime, Examples)
{
    const GridConfig g = fixtures::default_grid();
    EXPECT_NEAR(finite_time_ratio(fixtures::indicator(g, 0.0, 1.0), 1.0), 1.0, 1e-15);
    EXPECT_NEAR(finite_time_ratio(fixtures::exp_decay(g), 1.0), 1.0 - std::exp(-2.0), 1e-10);
    EXPECT_EQ(finite_time_ratio(fixtures::indicator(g, 2.0, 3.0), 1.0), 0.0);
    EXPECT_THROW(finite_time_ratio(TimeSignal::zeros(g), 1.0), std::domain_error);
}

TEST(Inequivalence, TableMatchesClosedForm)
{
    const GridConfig g = fixtures::default_grid();
    const std::vector<InequivalenceRow> rows = inequivalence_demo(g, 10);
    ASSERT_EQ(rows.size(), 11u);
    const double c = (1.0 - std::exp(-2.0)) / 2.0;
    for (const InequivalenceRow& r : rows) {
        EXPECT_NEAR(r.unweighted_norm, 1.0, 1e-12);
        EXPECT_NEAR(r.ratio * r.ratio, std::exp(-2.0 * r.n) * c, 1e-10);
        EXPECT_NEAR(r.weighted_norm, r.ratio * r.unweighted_norm, 1e-15);
    }
    EXPECT_NEAR(rows[3].ratio * rows[3].ratio, 1.07e-3, 1e-5);
    EXPECT_NEAR(rows[0].weighted_norm, weighted_norm({fixtures::indicator(g, 0.0, 1.0)}), 1e-15);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_LT(rows[i].ratio, rows[i - 1].ratio);
        EXPECT_NEAR(rows[i].ratio / rows[i - 1].ratio, std::exp(-1.0), 1e-10);
    }
    EXPECT_THROW(inequivalence_demo(g, 40), std::invalid_argument);
}
