#pragma once

// Density, atoms, boundary classification, property (H), support structure
// and analyticity verdicts for mu boxplus nu.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "freeconv/ext_real.hpp"
#include "freeconv/inversion.hpp"

namespace freeconv {

enum class BoundaryKind { A, B, C };

std::string to_string(BoundaryKind k);

/// Singular integrals behind a classification. I1 = \int dnu/(alpha-s)^2,
/// I2 = 1/nu({alpha}), I3 = \int (1+s^2)/s^2 dsigma, I4 the sigma factor of
/// type B or C. Entries that do not apply stay undecided.
struct Certificates {
  ExtReal I1 = ExtReal::undecided();
  ExtReal I2 = ExtReal::undecided();
  ExtReal I3 = ExtReal::undecided();
  ExtReal I4 = ExtReal::undecided();
  ExtReal product = ExtReal::undecided();
  /// G*_nu(alpha) for types B and C.
  std::optional<double> g_star;
};

struct BoundaryPoint {
  double alpha = 0.0;
  BoundaryKind kind = BoundaryKind::B;
  ExtReal omega_prime;
  double image = 0.0;
  Certificates cert;
  /// product - 1; ties within the band give omega' = +inf.
  double margin = 0.0;
  bool tie = false;
  /// For ties, omega' if the product were just below 1 (the at-equality verdict is +inf).
  ExtReal omega_prime_below = ExtReal::undecided();
};

struct Classification {
  enum class Status { interior_of_V, boundary, undecided, conflict };
  Status status = Status::undecided;
  std::optional<BoundaryPoint> point;
  std::string reason;
};

Classification classify_boundary_point(const ConvolutionModel& model, double alpha);

/// p(s) for the absolutely continuous part of mu boxplus nu.
double density_at(const ConvolutionModel& model, double s);

struct ConvolutionAtom {
  double location = 0.0;
  double mass = 0.0;
  /// nu-atom generating this atom.
  double alpha = 0.0;
  /// nu({alpha}) / omega'(h(alpha)), the second route to the same mass.
  ExtReal mass_via_omega_prime;
  bool boundary_equality = false;
};

struct AtomsResult {
  std::vector<ConvolutionAtom> atoms;
  /// Set when s_mu does not exist, so that type A points are impossible.
  bool no_atoms = false;
  std::string reason;
};

AtomsResult atoms_of_convolution(const ConvolutionModel& model);

struct PropertyHVerdict {
  enum class Kind { holds, fails, undecided };
  Kind kind = Kind::undecided;
  std::optional<double> witness;
  /// "finite-variance" for the moment failure, otherwise a short reason.
  std::string detail;
};

std::string to_string(const PropertyHVerdict& v);

PropertyHVerdict property_H(const PhiDescriptor& phi, double probe_lo = -10.0,
                            double probe_hi = 10.0, int n_probe = 201);

struct SupportComponent {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_cut = false;  // continues past the window
  bool hi_cut = false;
  bool degenerate() const { return lo == hi; }
};

/// Everything read off the refined positivity set inside an s-window.
struct SupportStructure {
  double x_lo = 0.0, x_hi = 0.0;
  IntervalSet V;
  AtomsResult atoms;
  std::vector<SupportComponent> components;
  std::vector<std::pair<double, BoundaryPoint>> zero_points;
  std::vector<std::string> warnings;
};

SupportStructure support_structure(const ConvolutionModel& model, double s_lo, double s_hi,
                                   int n_seed = 400);

struct DensityProfile {
  std::vector<std::pair<double, double>> samples;
  std::vector<ConvolutionAtom> atoms;
  std::vector<SupportComponent> components;
  std::vector<std::pair<double, BoundaryPoint>> zero_points;
  std::vector<std::string> warnings;
};

DensityProfile density_profile(const ConvolutionModel& model, double s_lo, double s_hi, int n,
                               int n_seed = 400);

struct SupportReport {
  std::vector<SupportComponent> components;
  int count = 0;
  int bound = 0;
  bool bound_satisfied = false;
  std::vector<std::string> warnings;
};

/// Number of connected components of a measure's support, and of its complement.
int support_count(const MeasureRep& m);
int complement_count(const MeasureRep& m);

/// Component-count bound 2 + n(nu) + [1 + 3 n(sigma)] n(R \ supp nu) + [1 / (1 - mu({s_mu}))].
int component_bound(const ConvolutionModel& model);

SupportReport support_report(const ConvolutionModel& model, double s_lo, double s_hi,
                             int n_seed = 400);

struct AnalyticityReport {
  double zero = 0.0;  // s0 = h(alpha)
  double alpha = 0.0;
  /// nullopt is "unknown".
  std::optional<bool> analytic;
  std::string reason;
  bool isolated = false;
  /// Residual of the location identity for types B and C.
  std::optional<double> identity_residual;
};

/// `v` is a refined positivity set around the zero; computed locally when absent.
AnalyticityReport analyticity_report(const ConvolutionModel& model, const BoundaryPoint& zero,
                                     const IntervalSet* v = nullptr);

/// f(alpha +- d) / d at shrinking d; tends to 0 when the boundary curve is
/// tangent to the axis at alpha. Reported only, never asserted.
struct TangencyCheck {
  double alpha = 0.0;
  std::vector<std::pair<double, double>> ratios;  // (d, max over both sides)
};

TangencyCheck tangency_check(const ConvolutionModel& model, double alpha);

struct Diagnosis {
  PropertyHVerdict property_H;
  ExtReal variance_mu;
  std::optional<Atom> s_mu;
  int component_count = 0;
  int component_bound = 0;
  bool bound_satisfied = false;
  std::vector<SupportComponent> components;
  std::vector<ConvolutionAtom> atoms;
  std::vector<BoundaryPoint> zeros;
  std::vector<AnalyticityReport> analyticity_reports;
  /// Boundary points with finite omega'.
  std::vector<TangencyCheck> tangency;
  /// Structural expectations that are noted with what was observed, not enforced.
  std::vector<std::string> expectations;
  std::vector<std::string> warnings;
};

Diagnosis diagnose(const ConvolutionModel& model, double s_lo, double s_hi, int n_seed = 400);

}  // namespace freeconv
