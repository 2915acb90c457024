#pragma once

// Closed-form integrals of polynomial densities against Cauchy-type kernels.
// A polynomial is stored by its coefficients in the local variable u.

#include <vector>

#include "freeconv/numerics.hpp"

namespace freeconv::poly {

using Coef = std::vector<double>;

double eval(const Coef& c, double u);

/// \int_a^b P(u) du
double integral(const Coef& c, double a, double b);

Coef multiply(const Coef& p, const Coef& q);

/// Coefficients of P(u0 + v) in v.
Coef taylor_shift(const Coef& c, double u0);

/// \int_a^b P(u) / (w - u) du for Im w != 0.
cplx cauchy(const Coef& c, double a, double b, cplx w);

/// \int_a^b P(u) / (w - u)^power du for real w and power 1 or 2.
/// When w lies in [a, b], P must vanish there to order >= power.
double real_kernel(const Coef& c, double a, double b, double w, int power);

}  // namespace freeconv::poly
