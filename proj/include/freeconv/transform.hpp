#pragma once

// Analytic transforms: F-transform of nu, the Voiculescu transform phi of a
// freely infinitely divisible law mu, semigroup scaling, and quantities that
// depend on mu alone.

#include <optional>
#include <string>

#include "freeconv/ext_real.hpp"
#include "freeconv/measure.hpp"
#include "freeconv/numerics.hpp"

namespace freeconv {

/// Free Levy-Hincin data: phi(w) = gamma + \int (1 + s w) / (w - s) dsigma(s).
struct LevyTriple {
  double gamma = 0.0;
  MeasureRep sigma;
};

class PhiDescriptor {
 public:
  enum class Kind { levy_hincin, stable, cauchy };

  /// sigma = 0 is accepted only with `allow_degenerate` (mu = delta_gamma).
  static PhiDescriptor levy_hincin(double gamma, MeasureRep sigma, bool allow_degenerate = false);
  /// a in (0,1) u (1,2) or a = 1 with theta in [-1, 1]; a = 2 ignores theta.
  static PhiDescriptor stable(double a, double theta);
  /// phi(w) = location - i * scale (Cauchy law with that scale, shifted).
  static PhiDescriptor cauchy(double location, double scale);

  Kind kind() const { return kind_; }
  bool is_levy() const { return kind_ == Kind::levy_hincin; }
  const LevyTriple& levy() const;
  double a() const { return a_; }
  double theta() const { return theta_; }
  double location() const { return location_; }
  double scale() const { return scale_; }
  /// Semigroup time accumulated on closed forms (1 for fresh descriptors).
  double factor() const { return factor_; }
  bool degenerate() const { return is_levy() && triple_.sigma.is_zero(); }

  std::string describe() const;

 private:
  PhiDescriptor() = default;
  friend PhiDescriptor scale_semigroup(const PhiDescriptor& phi, double t);

  Kind kind_ = Kind::levy_hincin;
  LevyTriple triple_;
  double a_ = 2.0, theta_ = 0.0;
  double location_ = 0.0, scale_ = 1.0;
  double factor_ = 1.0;
};

/// F_nu(z) = 1 / G_nu(z), Im z > 0, nu a probability measure.
cplx F_transform(const MeasureRep& nu, cplx z);

/// phi(w), Im w > 0.
cplx phi_eval(const PhiDescriptor& phi, cplx w);

/// phi_{mu_t} = t * phi_mu.
PhiDescriptor scale_semigroup(const PhiDescriptor& phi, double t);

/// Spot check that -phi maps the upper half plane into its closure.
bool nevanlinna_probe_ok(const PhiDescriptor& phi);

struct SMu {
  bool exists = false;
  std::optional<double> location;
  double atom_mass = 0.0;
  /// g0 = \int (1 + s^2) / s^2 dsigma, the quantity compared with 1.
  ExtReal g0;
  bool undecided = false;
  std::string reason;
};

/// The real zero of F_mu, if any, and the atom of mu there.
SMu s_mu(const LevyTriple& triple);

/// var(mu) = sigma(R) + m_2(sigma).
ExtReal variance_of_mu(const LevyTriple& triple);

/// m_1(mu) = gamma + m_1(sigma).
ExtReal mean_of_mu(const LevyTriple& triple);

/// gamma + \int (1 + s w) / (w - s) dsigma at a real w where the
/// inverse-square integral of sigma is finite; nullopt otherwise.
std::optional<double> phi_real_boundary(const LevyTriple& triple, double w);

}  // namespace freeconv
