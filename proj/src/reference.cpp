#include "freeconv/reference.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include "freeconv/errors.hpp"

namespace freeconv {

double semicircle_density(double t, double s) {
  if (!(t > 0.0)) throw ValidationError("semicircle needs t > 0");
  return std::sqrt(std::max(0.0, 4.0 * t - s * s)) / (2.0 * kPi * t);
}

MPValue marchenko_pastur_density(double t, double s) {
  if (!(t > 0.0)) throw ValidationError("Marchenko-Pastur needs t > 0");
  MPValue v;
  v.atom_at_zero = std::max(1.0 - t, 0.0);
  if (s > 0.0) {
    const double d = s - 1.0 - t;
    v.density = std::sqrt(std::max(0.0, 4.0 * t - d * d)) / (2.0 * kPi * s);
  }
  return v;
}

double cauchy_poisson_density(double scale, const MeasureRep& nu, double s) {
  if (!(scale > 0.0)) throw ValidationError("Cauchy scale must be positive");
  return -cauchy_transform(nu, cplx(s, scale)).imag() / kPi;
}

OracleCurve semicircle_curve(double t) {
  OracleCurve c;
  c.family = "semicircle";
  c.params = {t};
  c.lo = -2.0 * std::sqrt(t);
  c.hi = 2.0 * std::sqrt(t);
  c.density = [t](double s) { return semicircle_density(t, s); };
  return c;
}

OracleCurve marchenko_pastur_curve(double t) {
  OracleCurve c;
  c.family = "marchenko-pastur";
  c.params = {t};
  c.lo = (1.0 - std::sqrt(t)) * (1.0 - std::sqrt(t));
  c.hi = (1.0 + std::sqrt(t)) * (1.0 + std::sqrt(t));
  if (t < 1.0) c.atoms.push_back({0.0, 1.0 - t});
  c.density = [t](double s) { return marchenko_pastur_density(t, s).density; };
  return c;
}

namespace {

double integrate_curve(const OracleCurve& c, const std::function<double(double)>& w) {
  // Square-root endpoints: tanh-sinh handles them at full accuracy.
  boost::math::quadrature::tanh_sinh<double> rule;
  return rule.integrate([&](double s) { return c.density(s) * w(s); }, c.lo, c.hi, 1e-14);
}

}  // namespace

double oracle_ac_mass(const OracleCurve& c) {
  return integrate_curve(c, [](double) { return 1.0; });
}

double oracle_moment(const OracleCurve& c, int k) {
  double m = integrate_curve(c, [k](double s) { return std::pow(s, k); });
  for (const auto& a : c.atoms) m += a.mass * std::pow(a.location, k);
  return m;
}

cplx omega_dense_oracle(const ConvolutionModel& model, cplx w) {
  if (!(w.imag() > 0.0)) throw ValidationError("omega oracle needs Im w > 0");
  auto miss = [&](cplx z) { return std::abs(H_eval(model, z) - w); };

  // Coarse search restricted to Omega (above the graph of f).
  const double spread = 2.0 + 2.0 * std::abs(H_eval(model, w) - w);
  double half = spread;
  cplx best;
  double best_miss = std::numeric_limits<double>::infinity();
  constexpr int kCoarse = 40;
  for (int expand = 0; expand < 6; ++expand, half *= 2.0) {
    best_miss = std::numeric_limits<double>::infinity();
    bool on_edge = false;
    for (int i = 0; i <= kCoarse; ++i) {
      const double x = w.real() - half + 2.0 * half * i / kCoarse;
      const double fx = f_boundary(model, x);
      for (int j = 1; j <= kCoarse; ++j) {
        const double y = fx + 2.0 * half * j / kCoarse;
        const double m = miss(cplx(x, y));
        if (m < best_miss) {
          best_miss = m;
          best = cplx(x, y);
          on_edge = i == 0 || i == kCoarse || j == kCoarse;
        }
      }
    }
    if (!on_edge) break;
    if (expand == 5) throw NumericalError("omega oracle exhausted its search window");
  }

  // Shrinking 5x5 stencil around the best point.
  double h = 2.0 * half / kCoarse;
  while (h > 1e-14 * std::max(1.0, std::abs(best))) {
    const cplx center = best;
    for (int i = -2; i <= 2; ++i) {
      for (int j = -2; j <= 2; ++j) {
        const cplx z = center + cplx(i * h, j * h);
        if (!(z.imag() > 0.0)) continue;
        const double m = miss(z);
        if (m < best_miss) {
          best_miss = m;
          best = z;
        }
      }
    }
    if (best == center) h *= 0.5;
  }
  return best;
}

}  // namespace freeconv
