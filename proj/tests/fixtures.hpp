#pragma once

// Models shared by the unit, property and acceptance tests.

#include <cmath>
#include <random>
#include <string>

#include "freeconv/inversion.hpp"
#include "freeconv/transform.hpp"
#include "oracles.hpp"

namespace freeconv::test {

/// Semicircle law of variance t: phi(w) = t / w.
inline PhiDescriptor semicircle_phi(double t) {
  return scale_semigroup(PhiDescriptor::stable(2.0, 0.0), t);
}

/// Marchenko-Pastur law of parameter t: gamma = t/2, sigma = (t/2) delta_1.
inline PhiDescriptor mp_phi(double t) {
  return PhiDescriptor::levy_hincin(t / 2, MeasureRep::point_mass(1.0, t / 2));
}

inline ConvolutionModel semicircle_model(double t, MeasureRep nu = MeasureRep::point_mass(0.0)) {
  return ConvolutionModel(semicircle_phi(t), std::move(nu));
}

inline ConvolutionModel mp_model(double t, MeasureRep nu = MeasureRep::point_mass(0.0)) {
  return ConvolutionModel(mp_phi(t), std::move(nu));
}

inline MeasureRep bernoulli() { return MeasureRep({{-1.0, 0.5}, {1.0, 0.5}}, {}); }

inline MeasureRep uniform01() { return MeasureRep({}, {DensityPiece::uniform(0.0, 1.0, 1.0)}); }

/// 2t delta_alpha + (1 - 2t) U[a, b].
inline MeasureRep atom_on_uniform(double t, double a = 0.0, double b = 1.0, double alpha = 0.5) {
  return MeasureRep({{alpha, 2 * t}}, {DensityPiece::uniform(a, b, (1 - 2 * t) / (b - a))});
}

/// Density s^2 / 3 on [-1, 2].
inline MeasureRep quadratic_on_m1_2() {
  return MeasureRep({}, {DensityPiece::monomial(-1.0, 2.0, 1.0 / 3, 2, 0.0)});
}

/// (12/7) s^2 on [-1, 0] and (12/7) s^3 on [0, 1].
inline MeasureRep quadratic_cubic() {
  return MeasureRep({}, {DensityPiece::monomial(-1.0, 0.0, 12.0 / 7, 2, 0.0),
                         DensityPiece::monomial(0.0, 1.0, 12.0 / 7, 3, 0.0)});
}

/// (3/8) s^2 on [-1, 1] and (3/8) s^-2 for |s| > 1.
inline MeasureRep quadratic_with_tails() {
  return MeasureRep({}, {DensityPiece::power_tail(-kInf, -1.0, 3.0 / 8, 2.0),
                         DensityPiece::monomial(-1.0, 1.0, 3.0 / 8, 2, 0.0),
                         DensityPiece::power_tail(1.0, kInf, 3.0 / 8, 2.0)});
}

inline MeasureRep normalized(const MeasureRep& m) { return m.scaled(1.0 / total_mass(m)); }

struct NamedModel {
  std::string name;
  ConvolutionModel model;
};

/// One of five model families with randomized parameters.
inline NamedModel random_model(std::mt19937& rng, int family) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  switch (family % 5) {
    case 0: {
      const double t = 0.3 + 1.5 * u(rng);
      return {"semicircle t=" + std::to_string(t) + " with Bernoulli", semicircle_model(t, bernoulli())};
    }
    case 1: {
      const double t = 0.2 + 1.5 * u(rng);
      return {"MP t=" + std::to_string(t) + " with uniform", mp_model(t, uniform01())};
    }
    case 2: {
      const double a = 0.55 + 1.35 * u(rng), th = 2 * u(rng) - 1;
      return {"stable a=" + std::to_string(a) + " with s^2/3",
              ConvolutionModel(PhiDescriptor::stable(a, th), quadratic_on_m1_2())};
    }
    case 3: {
      const double t = 0.1 + 0.3 * u(rng);
      return {"MP t=" + std::to_string(t) + " with atom on uniform",
              mp_model(t, atom_on_uniform(0.5 * t + 0.1))};
    }
    default: {
      const double c = 0.2 + u(rng);
      const auto sigma = MeasureRep({}, {DensityPiece::uniform(-1.0, 0.5, c)});
      return {"uniform sigma c=" + std::to_string(c) + " with random nu",
              ConvolutionModel(PhiDescriptor::levy_hincin(u(rng) - 0.5, sigma),
                               normalized(random_measure(rng)))};
    }
  }
}

/// A point of the closed region above the graph of f.
inline cplx point_in_closure(const ConvolutionModel& m, double x, double lift) {
  return {x, f_boundary(m, x) + lift};
}

}  // namespace freeconv::test
