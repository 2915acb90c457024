#pragma once

// Global inversion of H(z) = z + phi_mu(F_nu(z)).
//
// Omega = {Im H > 0} is the region above the graph of f, V = {f > 0}, and
// omega is the inverse of H from the closed upper half plane onto the
// closure of Omega. h(x) = H(x + i f(x)) maps the real line onto itself.

#include <optional>
#include <string>
#include <vector>

#include "freeconv/ext_real.hpp"
#include "freeconv/measure.hpp"
#include "freeconv/numerics.hpp"
#include "freeconv/transform.hpp"

namespace freeconv {

struct Tolerances {
  double y_floor_coef = 1e-9;  // f(x) below y_floor_coef * (1 + |x|) counts as 0
  double root_tol = 1e-12;
  double quad_tol = kQuadTol;
};

class ConvolutionModel {
 public:
  ConvolutionModel(PhiDescriptor phi, MeasureRep nu, Tolerances tol = {});

  const PhiDescriptor& phi() const { return phi_; }
  const MeasureRep& nu() const { return nu_; }
  const Tolerances& tol() const { return tol_; }
  /// Nevanlinna slope of H; always 1 for free additive convolution.
  double b() const { return 1.0; }

  double y_floor(double x) const { return tol_.y_floor_coef * (1.0 + std::abs(x)); }
  double zero_threshold(double x) const { return 10.0 * y_floor(x); }

 private:
  PhiDescriptor phi_;
  MeasureRep nu_;
  Tolerances tol_;
};

/// H(z) = z + phi(F_nu(z)), Im z > 0.
cplx H_eval(const ConvolutionModel& model, cplx z);

/// Height of the boundary of Omega above x; 0 when Im H(x + i y_floor) >= 0.
double f_boundary(const ConvolutionModel& model, double x);

/// x lies in V for structural reasons: nu has infinite inverse-square
/// integral at x and no atom there, so g(x) = +inf.
bool structurally_in_V(const ConvolutionModel& model, double x);

/// V membership with the D10 threshold, short-circuited by the structural rule.
bool in_V(const ConvolutionModel& model, double x);

struct GEvaluation {
  ExtReal value;
  double error = 0.0;
  /// "atom", "structural", "factored" or "extrapolated".
  std::string method;
  /// Independent extrapolated limit of b - Im H(x+iy)/y, when it converged.
  std::optional<double> extrapolated;
  double extrapolation_error = 0.0;
};

/// g(x) = lim_{y->0} [b - Im H(x + iy) / y] in (0, +inf].
GEvaluation g_evaluate(const ConvolutionModel& model, double x, bool cross_check = true);
ExtReal g_eval(const ConvolutionModel& model, double x);

/// Boundary value F*_nu(x) when it can be read off nu's structure:
/// 0 at atoms, 1/G*(x) when the inverse-square integral is finite, and
/// nullopt+infinite flag when G*(x) = 0.
struct FBoundary {
  enum class Kind { zero, finite, infinite, unknown };
  Kind kind = Kind::unknown;
  double value = 0.0;
  double g_star = 0.0;  // G*(x) when kind is finite or infinite
};
FBoundary F_boundary(const ConvolutionModel& model, double x);

/// h(x) = Re H(x + i f(x)), continuous and strictly increasing.
double h_map(const ConvolutionModel& model, double x);

/// Same, with f(x) already known.
double h_map_given_f(const ConvolutionModel& model, double x, double fx);

double h_inverse(const ConvolutionModel& model, double s);

/// The unique z in Omega with H(z) = w, Im w > 0.
cplx omega(const ConvolutionModel& model, cplx w);

/// omega on the real line: h^{-1}(s) + i f(h^{-1}(s)).
cplx omega_real(const ConvolutionModel& model, double s);

/// omega'(h(alpha)) = 1 / (b - g(alpha)) for alpha with f(alpha) = 0.
struct OmegaPrime {
  ExtReal value;
  /// g(alpha) - b, for audit of the tie rule.
  double margin = 0.0;
  bool tie = false;
};
OmegaPrime omega_prime_at(const ConvolutionModel& model, double alpha);

/// Ties g = b are declared within this band (or the extrapolation error).
inline constexpr double kTieBand = 1e-8;

struct OpenInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_cut = false;  // the window boundary truncates the component
  bool hi_cut = false;
  bool contains(double x) const { return lo < x && x < hi; }
};

struct IntervalSet {
  std::vector<OpenInterval> parts;
  std::vector<std::string> warnings;
  bool contains(double x) const;
};

/// Components of V inside [lo, hi].
IntervalSet positivity_set(const ConvolutionModel& model, double lo, double hi, int n_seed = 400);

}  // namespace freeconv
