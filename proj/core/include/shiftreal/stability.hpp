#pragma once

#include <optional>
#include <string>

#include "shiftreal/symbols.hpp"

namespace shiftreal {

/// Sampling region for |G|: the closed strip 0 <= Re z <= alpha or the
/// truncated half-plane rho <= Re z <= rho + 50, both with |Im z| <= im_max.
/// Lattices with doubled counts contain the coarser ones.
struct RegionSpec {
    enum class Kind { strip, halfplane };
    Kind kind = Kind::strip;
    double alpha = 1.0;
    double rho = 1.0;
    int re_points = 32;
    int im_points = 400;
    double im_max = 100.0;

    static RegionSpec strip(double alpha);
    static RegionSpec halfplane(double rho);
    void validate() const;
    double re_lo() const;
    double re_hi() const;
};

struct InfModulus {
    double value = 0.0;  // upper bound for the infimum of |G| over the region
    cplx argmin;
    bool from_asymptote = false;  // value is |feedthrough| (Re z -> infinity)
};

InfModulus inf_modulus(const TransferSymbol& g, const RegionSpec& region);

enum class Tri { yes, no, inconclusive };
std::string to_string(Tri t);

struct StabilityOptions {
    double margin = 1e-3;
    int re_points = 32;
    int im_points = 400;
    double im_max = 100.0;
};

struct StabilityVerdict {
    Tri exp_stable = Tri::inconclusive;
    Tri group = Tri::inconclusive;
    InfModulus strip;
    InfModulus halfplane;
    std::optional<cplx> strip_zero;      // zero of G located inside the open strip
    std::optional<cplx> halfplane_zero;  // zero of G located with Re z > rho
    std::optional<cplx> feedthrough;
};

/// Exponential stability from the strip 0 < Re z < alpha, group property
/// from the half-plane Re z > rho.  A verdict is "yes" when the sampled
/// infimum exceeds the margin, "no" when a zero of G is located inside the
/// region (or the half-plane asymptote |D| vanishes), otherwise inconclusive.
StabilityVerdict stability_verdict(const TransferSymbol& g, double alpha, double rho,
                                   const StabilityOptions& opts = {});

/// -max Re of the eigenvalues of a0 - b b^H/2.  The restricted realization
/// of a MatrixInner symbol has no zero of G in 0 < Re z < alpha exactly when
/// alpha does not exceed this rate.
double matrix_inner_decay_rate(const MatrixInner& m);

}  // namespace shiftreal
