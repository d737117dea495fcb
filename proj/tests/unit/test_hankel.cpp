#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "shiftreal/hankel.hpp"
#include "shiftreal/random_inputs.hpp"

using namespace shiftreal;
using fixtures::cplx;

TEST(HankelApply, BlaschkeOnExponential)
{
    const GridConfig g = fixtures::default_grid();
    const RealizationContext ctx = RealizationContext::make(g, fixtures::blaschke1());
    const TimeSignal u = fixtures::exp_decay(g);
    const TimeSignal y = hankel_apply(ctx, u);
    EXPECT_LT(fixtures::rel_diff(y, -1.0 * u), 1e-2);
}

TEST(HankelApply, DelayFlipsAndAnnihilates)
{
    const GridConfig g = fixtures::default_grid();
    const RealizationContext ctx = RealizationContext::make(g, fixtures::delay1());
    const TimeSignal box = fixtures::indicator(g, 0.0, 1.0);
    EXPECT_LT((hankel_apply(ctx, box).samples - box.samples).cwiseAbs().maxCoeff(), 1e-12);

    std::mt19937_64 rng(5);
    TimeSignal late = random_causal_signal(g, rng);
    late.samples.head(256).setZero();
    EXPECT_LT(norm(hankel_apply(ctx, late)), 1e-12 * norm(late));
}

TEST(HankelApply, BoundedBySupNorm)
{
    const GridConfig g = fixtures::default_grid();
    std::mt19937_64 rng(9);
    for (const TransferSymbol& s : {fixtures::lowpass(), fixtures::blaschke1(), fixtures::matinner2()}) {
        const RealizationContext ctx = RealizationContext::make(g, s);
        const double bound = ctx.axis.cwiseAbs().maxCoeff();
        for (int rep = 0; rep < 5; ++rep) {
            const TimeSignal u = random_causal_signal(g, rng);
            EXPECT_LE(norm(hankel_apply(ctx, u)), bound * norm(u) * (1.0 + 1e-12)) << describe(s);
        }
    }
}

TEST(HankelMatrix, AntiDiagonalsConstant)
{
    const GridConfig g = fixtures::small_grid();
    const HankelMatrix m = hankel_matrix(RealizationContext::make(g, fixtures::matinner2()), 40);
    for (int j = 0; j + 1 < 40; ++j)
        for (int k = 1; k < 40; ++k) EXPECT_EQ(m.entries(j, k), m.entries(j + 1, k - 1));
    EXPECT_EQ((m.entries - m.entries.transpose()).norm(), 0.0);
}

TEST(HankelMatrix, ZeroSymbol)
{
    const GridConfig g = fixtures::small_grid();
    const HankelMatrix m = hankel_matrix(RealizationContext::make(g, make_constant(0.0)), 16);
    EXPECT_EQ(m.entries.norm(), 0.0);
    EXPECT_THROW(hankel_matrix(RealizationContext::make(g, make_constant(0.0)), 0), std::invalid_argument);
    EXPECT_THROW(hankel_matrix(RealizationContext::make(g, make_constant(0.0)), g.half() + 1), std::invalid_argument);
}

TEST(HankelSvd, LowpassIsRankOne)
{
    const GridConfig g = fixtures::default_grid();
    const std::vector<double> sv = hankel_svd(RealizationContext::make(g, fixtures::lowpass()), 1024);
    EXPECT_NEAR(sv[0], 0.5, 1e-3);
    EXPECT_LT(sv[1], 1e-8 * sv[0]);
    for (std::size_t i = 1; i < sv.size(); ++i) EXPECT_LE(sv[i], sv[i - 1]);
}

TEST(HankelSvd, BlaschkeIsRankOneUnit)
{
    const GridConfig g = fixtures::default_grid();
    const std::vector<double> sv = hankel_svd(RealizationContext::make(g, fixtures::blaschke1()), 1024);
    EXPECT_NEAR(sv[0], 1.0, 1e-3);
    for (std::size_t i = 1; i < sv.size(); ++i) EXPECT_LT(sv[i], 1e-3);
}

TEST(HankelSvd, DelayFlipIsIsometricOnUnitInterval)
{
    const GridConfig g = fixtures::default_grid();
    const std::vector<double> sv = hankel_svd(RealizationContext::make(g, fixtures::delay1()), 512);
    for (int i = 0; i < 256; ++i) EXPECT_NEAR(sv[i], 1.0, 1e-2) << "i=" << i;
    for (int i = 256; i < 512; ++i) EXPECT_LT(sv[i], 1e-2) << "i=" << i;
}

TEST(HankelSvd, DelayOnCoarseGridStaysFinite)
{
    // 128 equal singular values: a matrix the divide-and-conquer SVD mishandles.
    GridConfig g;
    g.n = 8192;
    g.dt = 1.0 / 128.0;
    const std::vector<double> sv = hankel_svd(RealizationContext::make(g, fixtures::delay1()), 256);
    for (int i = 0; i < 128; ++i) EXPECT_NEAR(sv[i], 1.0, 1e-12) << "i=" << i;
    for (int i = 128; i < 256; ++i) EXPECT_LT(sv[i], 1e-12) << "i=" << i;
    const RangeDiagnostics d = range_diagnostics(RealizationContext::make(g, fixtures::delay1()), 256, 1);
    EXPECT_TRUE(d.closed_range_verdict);
    EXPECT_NEAR(d.exact_ctrb_margin, 1.0, 1e-12);
}

TEST(HankelSvd, InnerSymbolsArePartialIsometries)
{
    const GridConfig g = fixtures::default_grid();
    for (const TransferSymbol& s :
         {fixtures::delay1(), fixtures::blaschke1(), make_product({make_delay(0.5), make_blaschke({2.0})})}) {
        for (double v : hankel_svd(RealizationContext::make(g, s), 768))
            EXPECT_LT(std::min(std::abs(v), std::abs(v - 1.0)), 1e-2) << describe(s) << " sv " << v;
    }
}

TEST(Factorization, RandomInputsAcrossCatalog)
{
    std::mt19937_64 rng(101);
    for (const TransferSymbol& s :
         {fixtures::lowpass(), fixtures::blaschke1(), fixtures::delay1(), fixtures::matinner2()}) {
        // The rotation example needs horizon 256 to keep its e^{-t/4} kernel from wrapping.
        GridConfig g = fixtures::small_grid();
        if (s.get_if<MatrixInner>()) g.n = 16384;
        const RealizationContext ctx = RealizationContext::make(g, s);
        for (int rep = 0; rep < 50; ++rep) {
            const TimeSignal u = rep % 2 ? random_causal_signal(g, rng) : random_window_signal(g, rng, 3.0);
            const FactorizationResidual r = factorization_residual(ctx, u);
            EXPECT_EQ(r.chain, 0.0);
            EXPECT_LT(r.matrix, 1e-6) << describe(s);
        }
    }
}

TEST(Factorization, DelayOnBoxAndZero)
{
    const GridConfig g = fixtures::default_grid();
    const RealizationContext ctx = RealizationContext::make(g, fixtures::delay1());
    EXPECT_LT(factorization_residual(ctx, fixtures::indicator(g, 0.0, 1.0)).matrix, 1e-6);
    const FactorizationResidual z = factorization_residual(ctx, TimeSignal::zeros(g));
    EXPECT_EQ(z.chain, 0.0);
    EXPECT_EQ(z.matrix, 0.0);
}

TEST(RangeDiagnostics, Delay)
{
    const GridConfig g = fixtures::default_grid();
    const RangeDiagnostics d = range_diagnostics(RealizationContext::make(g, fixtures::delay1()), 512, 3);
    EXPECT_TRUE(d.closed_range_verdict);
    ASSERT_TRUE(d.gap_index);
    EXPECT_EQ(*d.gap_index, 255);
    EXPECT_NEAR(d.exact_obsv_margin, 1.0, 1e-10);
    EXPECT_NEAR(d.exact_ctrb_margin, 1.0, 1e-2);
    EXPECT_LT(d.approx_obsv_residual, 1e-12);
}

TEST(RangeDiagnostics, BlaschkeAndZero)
{
    const GridConfig g = fixtures::default_grid();
    const RangeDiagnostics b = range_diagnostics(RealizationContext::make(g, fixtures::blaschke1()), 256, 3);
    EXPECT_TRUE(b.closed_range_verdict);
    const RangeDiagnostics z = range_diagnostics(RealizationContext::make(g, make_constant(0.0)), 64, 3);
    EXPECT_TRUE(z.closed_range_verdict);
    EXPECT_EQ(z.exact_ctrb_margin, 0.0);
    EXPECT_NEAR(z.approx_ctrb_residual, 1.0, 1e-12);
}

TEST(RangeDiagnostics, SingularValuesSorted)
{
    const GridConfig g = fixtures::small_grid();
    const RangeDiagnostics d = range_diagnostics(RealizationContext::make(g, fixtures::matinner2()), 200, 1);
    for (std::size_t i = 1; i < d.singular_values.size(); ++i) {
        EXPECT_GE(d.singular_values[i], 0.0);
        EXPECT_LE(d.singular_values[i], d.singular_values[i - 1]);
    }
}
