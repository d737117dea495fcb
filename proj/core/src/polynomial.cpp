#include "polynomial.hpp"

#include <Eigen/Eigenvalues>

namespace shiftreal::poly {

Coeffs trim(Coeffs p)
{
    while (!p.empty() && p.back() == cplx(0.0)) p.pop_back();
    return p;
}

int degree(const Coeffs& p) { return static_cast<int>(trim(p).size()) - 1; }

cplx horner(const Coeffs& p, cplx s)
{
    cplx acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * s + *it;
    return acc;
}

Coeffs multiply(const Coeffs& a, const Coeffs& b)
{
    if (a.empty() || b.empty()) return {};
    Coeffs c(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

Coeffs from_roots(const std::vector<cplx>& roots)
{
    Coeffs p{1.0};
    for (cplx r : roots) p = multiply(p, Coeffs{-r, 1.0});
    return p;
}

std::vector<cplx> roots(const Coeffs& p_in)
{
    Coeffs p = trim(p_in);
    const int d = static_cast<int>(p.size()) - 1;
    if (d < 1) return {};
    // companion matrix of the monic polynomial
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i < d; ++i) c(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) c(i, d - 1) = -p[i] / p[d];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(c, false);
    std::vector<cplx> r(d);
    for (int i = 0; i < d; ++i) r[i] = es.eigenvalues()[i];
    return r;
}

}  // namespace shiftreal::poly
