#pragma once

// Independent closed-form and brute-force oracles.

#include <functional>
#include <string>
#include <vector>

#include "freeconv/inversion.hpp"
#include "freeconv/measure.hpp"

namespace freeconv {

/// sqrt(max(0, 4t - s^2)) / (2 pi t).
double semicircle_density(double t, double s);

struct MPValue {
  double density = 0.0;
  double atom_at_zero = 0.0;
};

/// Marchenko-Pastur law of parameter t: density on [(1-sqrt t)^2, (1+sqrt t)^2]
/// and an atom max(1 - t, 0) at the origin.
MPValue marchenko_pastur_density(double t, double s);

/// (scale/pi) \int dnu(u) / ((s-u)^2 + scale^2).
double cauchy_poisson_density(double scale, const MeasureRep& nu, double s);

struct OracleCurve {
  std::string family;
  std::vector<double> params;
  double lo = 0.0, hi = 0.0;
  std::vector<Atom> atoms;
  std::function<double(double)> density;
};

OracleCurve semicircle_curve(double t);
OracleCurve marchenko_pastur_curve(double t);

/// Absolutely continuous mass of the curve, by quadrature.
double oracle_ac_mass(const OracleCurve& c);
/// k-th moment of the whole law (atoms included), by quadrature.
double oracle_moment(const OracleCurve& c, int k);

/// Solves H(z) = w by a coarse grid search over Omega followed by shrinking
/// grid refinement. Slow; for tests only.
cplx omega_dense_oracle(const ConvolutionModel& model, cplx w);

}  // namespace freeconv
