#pragma once

// Finite positive Borel measures on the real line, stored as finitely many
// atoms plus typed density pieces. Each density family carries enough
// structure that divergence of the singular integrals
//   \int dm(s) / (x - s)^2   and   \int (1 + s^2) dm(s) / (x - s)^2
// is decided from metadata instead of from quadrature.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "freeconv/ext_real.hpp"
#include "freeconv/numerics.hpp"

namespace freeconv {

struct Atom {
  double location = 0.0;
  double mass = 0.0;
};

enum class TailSide { left, right };

/// c on the interval.
struct UniformFamily {
  double c = 0.0;
};

/// c * |s - center|^k on the interval. For odd k the interval lies on one
/// side of the center, so the density is a polynomial there.
struct MonomialFamily {
  double c = 0.0;
  int k = 0;
  double center = 0.0;
};

/// c * |s - origin|^-p on an unbounded interval that excludes the origin.
struct PowerTailFamily {
  double c = 0.0;
  double p = 2.0;
  TailSide side = TailSide::right;
  double origin = 0.0;
};

/// Sampled density, linearly interpolated between the sample points.
struct TableFamily {
  std::vector<double> s;
  std::vector<double> values;
};

class DensityPiece {
 public:
  using Family = std::variant<UniformFamily, MonomialFamily, PowerTailFamily, TableFamily>;

  static DensityPiece uniform(double lo, double hi, double c);
  static DensityPiece monomial(double lo, double hi, double c, int k, double center);
  /// One of lo/hi must be infinite; the finite end must exclude `origin`.
  static DensityPiece power_tail(double lo, double hi, double c, double p, double origin = 0.0);
  static DensityPiece table(std::vector<double> s, std::vector<double> values, bool analytic);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const Family& family() const { return family_; }
  /// Declared real-analytic on the open interval (always true for closed families).
  bool analytic() const { return analytic_; }
  bool is_table() const { return std::holds_alternative<TableFamily>(family_); }
  bool is_tail() const { return std::holds_alternative<PowerTailFamily>(family_); }

  double density(double s) const;
  double mass() const;

  /// Order of the zero of the density at x (x in the closed interval).
  /// 0 means the density is positive at x. nullopt for table pieces whose
  /// local behavior cannot be certified.
  std::optional<int> vanishing_order(double x) const;

  DensityPiece scaled(double t) const;
  DensityPiece translated(double c) const;

  std::string describe() const;

 private:
  DensityPiece(double lo, double hi, Family f, bool analytic)
      : lo_(lo), hi_(hi), family_(std::move(f)), analytic_(analytic) {}

  double lo_ = 0.0;
  double hi_ = 0.0;
  Family family_;
  bool analytic_ = true;
};

struct ClosedInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool degenerate() const { return lo == hi; }
};

/// density(s) = sum_j coef[j] * (s - shift)^j for s in [shift + a, shift + b].
struct PolySegment {
  double shift = 0.0;
  double a = 0.0;
  double b = 0.0;
  std::vector<double> coef;
  std::size_t piece = 0;
};

class MeasureRep {
 public:
  /// The zero measure.
  MeasureRep() = default;
  MeasureRep(std::vector<Atom> atoms, std::vector<DensityPiece> pieces);

  static MeasureRep point_mass(double at, double mass = 1.0);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<DensityPiece>& pieces() const { return pieces_; }
  bool is_zero() const { return atoms_.empty() && pieces_.empty(); }

  /// Absolutely continuous density at s (sum over pieces whose closure holds s).
  double density(double s) const;

  MeasureRep scaled(double t) const;
  MeasureRep translated(double c) const;

  const std::vector<PolySegment>& segments() const { return segments_; }

 private:
  std::vector<Atom> atoms_;
  std::vector<DensityPiece> pieces_;
  std::vector<PolySegment> segments_;  // polynomial form of every bounded piece
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

double total_mass(const MeasureRep& m);

/// \int s^k dm for k >= 0. Divergent tails give +-inf; a first moment with both
/// tails divergent is undecided.
ExtReal moment(const MeasureRep& m, int k);

/// Mass of the atom located exactly at alpha, 0 when there is none.
double atom_mass(const MeasureRep& m, double alpha);

/// Connected components of the topological support, sorted.
std::vector<ClosedInterval> support_components(const MeasureRep& m);

/// G_m(z) = \int dm(s) / (z - s), Im z > 0.
cplx cauchy_transform(const MeasureRep& m, cplx z);

/// Same integral for any z off the real axis (used for reflections).
cplx cauchy_transform_offaxis(const MeasureRep& m, cplx z);

/// \int (1 + s w) / (w - s) dm(s), Im w != 0.
cplx nevanlinna_kernel_integral(const MeasureRep& m, cplx w);

/// \int dm(s) / (x - s)^2 in (0, +inf].
ExtReal inverse_square_integral(const MeasureRep& m, double x);

/// \int (1 + s^2) / (x - s)^2 dm(s) in (0, +inf].
ExtReal weighted_quadratic_integral(const MeasureRep& m, double x);

/// \int dm(s) / (x - s), only when the inverse-square integral at x is finite
/// (then it converges absolutely). Otherwise undecided.
ExtReal real_cauchy_integral(const MeasureRep& m, double x);

struct VerticalLimit {
  enum class Kind { value, infinite, nonconvergent };
  Kind kind = Kind::value;
  cplx value{};
  double error = 0.0;
  bool is_real() const { return kind == Kind::value && value.imag() == 0.0; }
};

/// Vertical limit lim_{eps->0+} G_m(alpha + i eps).
VerticalLimit vertical_limit_G(const MeasureRep& m, double alpha);

/// Local structure used for analyticity verdicts: whether the measure admits
/// an analytic density on a neighborhood of x (ignoring an atom at x itself
/// when `allow_atom_at_x`). nullopt when a table piece prevents a verdict.
std::optional<bool> analytic_near(const MeasureRep& m, double x, bool allow_atom_at_x);

bool is_probability(const MeasureRep& m, double tol = 1e-9);

}  // namespace freeconv
