#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "shiftreal/signal.hpp"

namespace shiftreal {

class TransferSymbol;

/// num(s)/den(s), coefficients in ascending powers of s.
struct Rational {
    std::vector<cplx> num;
    std::vector<cplx> den;
};

/// exp(-tau s)
struct Delay {
    double tau = 0.0;
};

/// prod (s - z)/(s + conj z) over zeros with positive real part.
struct Blaschke {
    std::vector<cplx> zeros;
};

/// 1 - b^H (sI - a0 + b b^H/2)^{-1} b with a0 skew-Hermitian.
struct MatrixInner {
    Eigen::MatrixXcd a0;
    Eigen::VectorXcd b;
};

struct Product {
    std::vector<TransferSymbol> factors;
};

/// User samples on the axis grid; off-grid values come from linear
/// interpolation on the axis and the Poisson integral inside.
struct Sampled {
    FreqSignal samples;
};

class TransferSymbol {
public:
    using Variant = std::variant<Rational, Delay, Blaschke, MatrixInner, Product, Sampled>;

    // Validates the H-infinity membership conditions of each variant.
    explicit TransferSymbol(Variant v);

    const Variant& variant() const { return v_; }
    template <class T>
    const T* get_if() const
    {
        return std::get_if<T>(&v_);
    }

private:
    Variant v_;
};

TransferSymbol make_constant(cplx c);
TransferSymbol make_rational(std::vector<cplx> num, std::vector<cplx> den);
TransferSymbol make_delay(double tau);
TransferSymbol make_blaschke(std::vector<cplx> zeros);
TransferSymbol make_product(std::vector<TransferSymbol> factors);
TransferSymbol make_sampled(FreqSignal samples);

/// Inner symbol from a skew-Hermitian generator and input vector.
/// Throws std::invalid_argument when a0 is not skew-Hermitian.
TransferSymbol inner_from_skew(const Eigen::MatrixXcd& a0, const Eigen::VectorXcd& b);

/// G(s) for Re s >= 0.  Throws std::domain_error at a pole.
cplx evaluate(const TransferSymbol& g, cplx s);

/// Grid representation of G used by every discretized operator.
///
/// Finite-dimensional symbols are evaluated at the bilinear frequency
/// i(2/dt)tan(w dt/2) (their value at infinity on the Nyquist bin), which
/// keeps the discrete kernel causal and |G| = 1 exactly for inner G.
/// Delays use exp(-i w tau) and need tau to be a multiple of dt.
CVector axis_samples(const TransferSymbol& g, const GridConfig& grid);

struct InnerVerdict {
    bool is_inner = false;
    double max_boundary_deviation = 0.0;
    bool interior_bound_ok = false;
    double max_interior_modulus = 0.0;
};

InnerVerdict is_inner(const TransferSymbol& g, const GridConfig& grid, double tol = 1e-6);

struct FeedthroughResult {
    std::optional<cplx> value;
    double oscillation = 0.0;  // spread of the last three extrapolated ladder values
};

/// Limit of G along the positive real axis from the ladder s = 2^k, k = 3..20.
FeedthroughResult feedthrough_limit(const TransferSymbol& g);

/// Discrete impulse response of G - D on the grid (causal).  A jump at
/// t = 0 shows up as its midpoint value in the first sample.  Throws
/// std::domain_error when D does not exist.
TimeSignal impulse_response(const TransferSymbol& g, const GridConfig& grid);

/// exp(-tau s) * rational, when the symbol has that form.
struct DelayedRational {
    Rational rational;
    double tau = 0.0;
};
std::optional<DelayedRational> as_delayed_rational(const TransferSymbol& g);

/// max |G| over the grid samples.
double sup_on_grid(const TransferSymbol& g, const GridConfig& grid);

/// Literal form accepted by the command line parser.
std::string describe(const TransferSymbol& g);

}  // namespace shiftreal
