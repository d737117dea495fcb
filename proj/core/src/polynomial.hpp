#pragma once

#include <complex>
#include <vector>

namespace shiftreal::poly {

using cplx = std::complex<double>;
using Coeffs = std::vector<cplx>;  // ascending powers

Coeffs trim(Coeffs p);
int degree(const Coeffs& p);  // -1 for the zero polynomial
cplx horner(const Coeffs& p, cplx s);
Coeffs multiply(const Coeffs& a, const Coeffs& b);
Coeffs from_roots(const std::vector<cplx>& roots);
std::vector<cplx> roots(const Coeffs& p);

}  // namespace shiftreal::poly
