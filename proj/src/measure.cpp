#include "freeconv/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "freeconv/errors.hpp"
#include "polynomial.hpp"

namespace freeconv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

bool is_integer(double p) { return std::floor(p) == p && p < 64.0; }

struct Tail {
  double c, p, origin, L;  // L: distance from origin to the finite end
  bool right;
};

Tail tail_of(const DensityPiece& piece) {
  const auto& f = std::get<PowerTailFamily>(piece.family());
  const bool right = f.side == TailSide::right;
  const double end = right ? piece.lo() : piece.hi();
  return Tail{f.c, f.p, f.origin, std::abs(end - f.origin), right};
}

double tail_mass(const Tail& t) { return t.c * std::pow(t.L, 1.0 - t.p) / (t.p - 1.0); }

// (1 + u)^-p - 1 + p u without cancellation.
double binomial_remainder(double p, double u) {
  if (std::abs(u) >= 1e-2) return std::pow(1.0 + u, -p) - 1.0 + p * u;
  double term = 1.0, sum = 0.0;
  for (int k = 1; k <= 25; ++k) {
    term *= (-p - k + 1.0) / k * u;
    if (k >= 2) sum += term;
  }
  return sum;
}

// int_L^inf c r^-p N(r) / (zeta - r)^power dr for a polynomial N of degree <= 2.
// Split at R >= 2|zeta|: quadrature on [L, R], expansion in 1/r beyond. On
// [L, R], when zeta is close to the finite end, the first-order Taylor part
// of the density at L is integrated exactly so the integrand stays bounded.
cplx tail_kernel_r(const Tail& t, const std::vector<double>& num, cplx zeta, int power) {
  const double R = std::max(t.L, 2.0 * std::abs(zeta));
  cplx sum = 0.0;
  if (R > t.L) {
    const double L = t.L;
    const double n0 = poly::eval(num, L);
    const double n1 = (num.size() > 1 ? num[1] : 0.0) + (num.size() > 2 ? 2.0 * num[2] * L : 0.0);
    const double n2 = num.size() > 2 ? num[2] : 0.0;
    const double scale = t.c * std::pow(L, -t.p);
    const double psi0 = scale * n0;
    const double psi1 = scale * (n1 - t.p * n0 / L);
    const cplx dl = L - zeta, dr = R - zeta;
    // Only near the finite end; far away the exact parts would cancel badly.
    const bool subtract = std::abs(dl) < 0.5 * L;
    const cplx lg = subtract ? std::log(dr / dl) : cplx(0.0);
    if (subtract && power == 2) {
      sum += psi0 * (1.0 / dl - 1.0 / dr);
      sum += psi1 * (lg - dl * (1.0 / dl - 1.0 / dr));
    } else if (subtract) {
      sum -= psi0 * lg;
      sum -= psi1 * ((R - L) - dl * lg);
    }
    const auto integrand = [&](double r) -> cplx {
      if (!subtract) {
        cplx k = 1.0 / (zeta - r);
        if (power == 2) k *= k;
        return t.c * std::pow(r, -t.p) * poly::eval(num, r) * k;
      }
      const double d = r - L, u = d / L;
      const double a = std::expm1(-t.p * std::log1p(u));
      const double rem = scale * (binomial_remainder(t.p, u) * n0 + n2 * d * d + a * (n1 * d + n2 * d * d));
      cplx k = 1.0 / (zeta - r);
      if (power == 2) k *= k;
      return rem * k;
    };
    // Graded breakpoints resolve the transition at scale |L - zeta|.
    const std::function<cplx(double)> fn(integrand);
    double a = L, h = std::max(std::abs(dl), 1e-12 * L);
    while (a < R) {
      const double b = std::min(R, L + h);
      sum += integrate(fn, a, b);
      a = b;
      h *= 8.0;
    }
  }
  for (std::size_t m = 0; m < num.size(); ++m) {
    if (num[m] == 0.0) continue;
    cplx zn = 1.0;
    cplx part = 0.0;
    for (int n = 0; n < 400; ++n) {
      // 1/(zeta - r) = -sum zeta^n r^(-n-1), 1/(zeta - r)^2 = sum (n+1) zeta^n r^(-n-2)
      const double weight = power == 1 ? -1.0 : n + 1.0;
      const double e = static_cast<double>(m) - t.p - n - power + 1.0;
      const cplx term = weight * zn * std::pow(R, e) / (-e);
      part += term;
      if (n > 2 && std::abs(term) <= 1e-17 * std::abs(part)) break;
      zn *= zeta;
    }
    sum += num[m] * t.c * part;
  }
  return sum;
}

// Kernel in s mapped to the tail variable r = |s - origin|.
cplx tail_kernel(const Tail& t, std::vector<double> num_r_right, std::vector<double> num_r_left,
                 cplx z, int power) {
  const cplx zeta = z - t.origin;
  if (t.right) return tail_kernel_r(t, num_r_right, zeta, power);
  const double sign = power == 1 ? -1.0 : 1.0;
  return sign * tail_kernel_r(t, num_r_left, -zeta, power);
}

// int c r^-q / (zeta - r) dr over the tail, oriented like the Cauchy transform.
// u = L / r turns the integrand into u^(q-1) / (zeta u - L) on [0, 1]; integer q >= 1.
cplx tail_cauchy_closed(const Tail& t, int q, cplx z) {
  const cplx zeta = t.right ? z - t.origin : t.origin - z;
  std::vector<double> mono(static_cast<std::size_t>(q), 0.0);
  mono.back() = 1.0;
  const cplx v = -(t.c * std::pow(t.L, 1.0 - q) / zeta) * poly::cauchy(mono, 0.0, 1.0, t.L / zeta);
  return t.right ? v : -v;
}

cplx tail_cauchy(const Tail& t, cplx z) {
  if (is_integer(t.p)) return tail_cauchy_closed(t, static_cast<int>(t.p), z);
  return tail_kernel(t, {1.0}, {1.0}, z, 1);
}

// Same with an extra factor r = |s - origin|.
cplx tail_cauchy_first(const Tail& t, cplx z) {
  if (is_integer(t.p) && t.p >= 2.0) return tail_cauchy_closed(t, static_cast<int>(t.p) - 1, z);
  return tail_kernel(t, {0.0, 1.0}, {0.0, 1.0}, z, 1);
}

double tail_inverse_square(const Tail& t, double x) {
  return tail_kernel(t, {1.0}, {1.0}, x, 2).real();
}

double tail_weighted(const Tail& t, double x) {
  const double o = t.origin;
  return tail_kernel(t, {1.0 + o * o, 2.0 * o, 1.0}, {1.0 + o * o, -2.0 * o, 1.0}, x, 2).real();
}

double tail_real_cauchy(const Tail& t, double x) { return tail_kernel(t, {1.0}, {1.0}, x, 1).real(); }

ExtReal tail_moment(const Tail& t, int k) {
  if (t.p <= k + 1.0) {
    if (k == 0) return ExtReal::infinity();
    return (t.right || k % 2 == 0) ? ExtReal::infinity() : ExtReal::neg_infinity();
  }
  // s = origin +- r, expanded binomially.
  double sum = 0.0, binom = 1.0;
  for (int j = 0; j <= k; ++j) {
    if (j > 0) binom = binom * (k - j + 1) / j;
    const double sign = (t.right || j % 2 == 0) ? 1.0 : -1.0;
    sum += binom * std::pow(t.origin, k - j) * sign * t.c * std::pow(t.L, j + 1.0 - t.p) /
           (t.p - j - 1.0);
  }
  return sum;
}

bool in_closure(const DensityPiece& p, double x) { return p.lo() <= x && x <= p.hi(); }

// Value of an interpolated table strictly positive around x.
bool table_positive_near(const TableFamily& tab, double x) {
  const auto& s = tab.s;
  const auto& v = tab.values;
  const auto it = std::lower_bound(s.begin(), s.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - s.begin());
  std::vector<std::size_t> idx;
  if (i < s.size() && s[i] == x) {
    if (i > 0) idx.push_back(i - 1);
    idx.push_back(i);
    if (i + 1 < s.size()) idx.push_back(i + 1);
  } else {
    if (i > 0) idx.push_back(i - 1);
    if (i < s.size()) idx.push_back(i);
  }
  return std::all_of(idx.begin(), idx.end(), [&](std::size_t j) { return v[j] > 0.0; });
}

std::vector<PolySegment> segments_of(const DensityPiece& piece, std::size_t index) {
  std::vector<PolySegment> out;
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, UniformFamily>) {
          out.push_back({piece.lo(), 0.0, piece.hi() - piece.lo(), {f.c}, index});
        } else if constexpr (std::is_same_v<T, MonomialFamily>) {
          std::vector<double> coef(f.k + 1, 0.0);
          const bool flip = (f.k % 2 == 1) && piece.hi() <= f.center;
          coef[f.k] = flip ? -f.c : f.c;
          out.push_back({f.center, piece.lo() - f.center, piece.hi() - f.center, coef, index});
        } else if constexpr (std::is_same_v<T, TableFamily>) {
          for (std::size_t i = 0; i + 1 < f.s.size(); ++i) {
            const double h = f.s[i + 1] - f.s[i];
            const double slope = (f.values[i + 1] - f.values[i]) / h;
            std::vector<double> coef{f.values[i]};
            if (slope != 0.0) coef.push_back(slope);
            out.push_back({f.s[i], 0.0, h, coef, index});
          }
        }
      },
      piece.family());
  return out;
}

// Weight (1 + s^2) expressed in the local variable u = s - shift.
std::vector<double> with_quadratic_weight(const PolySegment& seg) {
  const double c = seg.shift;
  return poly::multiply(seg.coef, {1.0 + c * c, 2.0 * c, 1.0});
}

enum class Verdict { finite, infinite, undecided };

// Divergence verdict of the inverse-square type integrals at x.
Verdict singular_verdict(const MeasureRep& m, double x) {
  if (atom_mass(m, x) > 0.0) return Verdict::infinite;
  bool undecided = false;
  for (const auto& p : m.pieces()) {
    if (!in_closure(p, x)) continue;
    const auto beta = p.vanishing_order(x);
    if (!beta) {
      undecided = true;
      continue;
    }
    if (*beta <= 1) return Verdict::infinite;
  }
  return undecided ? Verdict::undecided : Verdict::finite;
}

// Sum over bounded segments of a real kernel integral of power 1 or 2.
double segment_sum(const MeasureRep& m, double x, int power, bool weighted) {
  double sum = 0.0;
  for (const auto& seg : m.segments()) {
    const auto coef = weighted ? with_quadratic_weight(seg) : seg.coef;
    sum += poly::real_kernel(coef, seg.a, seg.b, x - seg.shift, power);
  }
  return sum;
}

}  // namespace

// ---------------------------------------------------------------------------
// DensityPiece
// ---------------------------------------------------------------------------

DensityPiece DensityPiece::uniform(double lo, double hi, double c) {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi))
    throw ValidationError("uniform piece needs a bounded interval with lo < hi");
  if (!(c > 0.0 && std::isfinite(c))) throw ValidationError("uniform piece needs c > 0");
  return DensityPiece(lo, hi, UniformFamily{c}, true);
}

DensityPiece DensityPiece::monomial(double lo, double hi, double c, int k, double center) {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi))
    throw ValidationError("monomial piece needs a bounded interval with lo < hi");
  if (!(c > 0.0 && std::isfinite(c))) throw ValidationError("monomial piece needs c > 0");
  if (k < 0 || k > 40) throw ValidationError("monomial exponent must lie in [0, 40]");
  if (!std::isfinite(center)) throw ValidationError("monomial center must be finite");
  if (k % 2 == 1 && lo < center && center < hi)
    throw ValidationError("odd monomial must not straddle its center");
  return DensityPiece(lo, hi, MonomialFamily{c, k, center}, true);
}

DensityPiece DensityPiece::power_tail(double lo, double hi, double c, double p, double origin) {
  if (!(c > 0.0 && std::isfinite(c))) throw ValidationError("power tail needs c > 0");
  if (!(p > 1.0 && std::isfinite(p))) throw ValidationError("power tail needs p > 1");
  if (!std::isfinite(origin)) throw ValidationError("power tail origin must be finite");
  if (std::isfinite(lo) && hi == kInf) {
    if (!(lo > origin)) throw ValidationError("right power tail must start beyond its origin");
    return DensityPiece(lo, hi, PowerTailFamily{c, p, TailSide::right, origin}, true);
  }
  if (lo == -kInf && std::isfinite(hi)) {
    if (!(hi < origin)) throw ValidationError("left power tail must end before its origin");
    return DensityPiece(lo, hi, PowerTailFamily{c, p, TailSide::left, origin}, true);
  }
  throw ValidationError("power tail needs exactly one infinite endpoint");
}

DensityPiece DensityPiece::table(std::vector<double> s, std::vector<double> values, bool analytic) {
  if (s.size() < 2 || s.size() != values.size())
    throw ValidationError("table piece needs at least two (point, value) pairs");
  bool positive = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!std::isfinite(s[i]) || !std::isfinite(values[i]))
      throw ValidationError("table entries must be finite");
    if (values[i] < 0.0) throw ValidationError("table values must be nonnegative");
    if (i > 0 && !(s[i] > s[i - 1])) throw ValidationError("table points must increase");
    positive = positive || values[i] > 0.0;
  }
  if (!positive) throw ValidationError("table piece has zero mass");
  const double lo = s.front(), hi = s.back();
  return DensityPiece(lo, hi, TableFamily{std::move(s), std::move(values)}, analytic);
}

double DensityPiece::density(double x) const {
  if (!in_closure(*this, x)) return 0.0;
  return std::visit(
      [&](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, UniformFamily>) {
          return f.c;
        } else if constexpr (std::is_same_v<T, MonomialFamily>) {
          return f.c * std::pow(std::abs(x - f.center), f.k);
        } else if constexpr (std::is_same_v<T, PowerTailFamily>) {
          return f.c * std::pow(std::abs(x - f.origin), -f.p);
        } else {
          const auto it = std::upper_bound(f.s.begin(), f.s.end(), x);
          if (it == f.s.end()) return f.values.back();
          const std::size_t i = static_cast<std::size_t>(it - f.s.begin());
          const double w = (x - f.s[i - 1]) / (f.s[i] - f.s[i - 1]);
          return (1.0 - w) * f.values[i - 1] + w * f.values[i];
        }
      },
      family_);
}

double DensityPiece::mass() const {
  if (is_tail()) return tail_mass(tail_of(*this));
  double sum = 0.0;
  for (const auto& seg : segments_of(*this, 0)) sum += poly::integral(seg.coef, seg.a, seg.b);
  return sum;
}

std::optional<int> DensityPiece::vanishing_order(double x) const {
  return std::visit(
      [&](const auto& f) -> std::optional<int> {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, MonomialFamily>) {
          return x == f.center ? f.k : 0;
        } else if constexpr (std::is_same_v<T, TableFamily>) {
          if (analytic_ && table_positive_near(f, x)) return 0;
          return std::nullopt;
        } else {
          return 0;
        }
      },
      family_);
}

DensityPiece DensityPiece::scaled(double t) const {
  DensityPiece out = *this;
  std::visit(
      [&](auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, TableFamily>) {
          for (auto& v : f.values) v *= t;
        } else {
          f.c *= t;
        }
      },
      out.family_);
  return out;
}

DensityPiece DensityPiece::translated(double c) const {
  DensityPiece out = *this;
  out.lo_ += c;
  out.hi_ += c;
  std::visit(
      [&](auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, MonomialFamily>) {
          f.center += c;
        } else if constexpr (std::is_same_v<T, PowerTailFamily>) {
          f.origin += c;
        } else if constexpr (std::is_same_v<T, TableFamily>) {
          for (auto& s : f.s) s += c;
        }
      },
      out.family_);
  return out;
}

std::string DensityPiece::describe() const {
  const std::string iv = "[" + fmt(lo_) + ", " + fmt(hi_) + "]";
  return std::visit(
      [&](const auto& f) -> std::string {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, UniformFamily>) {
          return "uniform(c=" + fmt(f.c) + ") on " + iv;
        } else if constexpr (std::is_same_v<T, MonomialFamily>) {
          return "monomial(c=" + fmt(f.c) + ", k=" + std::to_string(f.k) +
                 ", center=" + fmt(f.center) + ") on " + iv;
        } else if constexpr (std::is_same_v<T, PowerTailFamily>) {
          return "power_tail(c=" + fmt(f.c) + ", p=" + fmt(f.p) + ", origin=" + fmt(f.origin) +
                 ") on " + iv;
        } else {
          return "table(" + std::to_string(f.s.size()) + " points" +
                 (analytic_ ? ", analytic" : "") + ") on " + iv;
        }
      },
      family_);
}

// ---------------------------------------------------------------------------
// MeasureRep
// ---------------------------------------------------------------------------

MeasureRep::MeasureRep(std::vector<Atom> atoms, std::vector<DensityPiece> pieces)
    : atoms_(std::move(atoms)), pieces_(std::move(pieces)) {
  for (const auto& a : atoms_) {
    if (!std::isfinite(a.location)) throw ValidationError("atom location must be finite");
    if (!(a.mass > 0.0 && std::isfinite(a.mass)))
      throw ValidationError("atom mass must be positive, got " + fmt(a.mass) + " at " +
                            fmt(a.location));
  }
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& a, const Atom& b) { return a.location < b.location; });
  for (std::size_t i = 1; i < atoms_.size(); ++i)
    if (atoms_[i].location == atoms_[i - 1].location)
      throw ValidationError("duplicate atom at " + fmt(atoms_[i].location));
  std::sort(pieces_.begin(), pieces_.end(),
            [](const DensityPiece& a, const DensityPiece& b) { return a.lo() < b.lo(); });
  for (std::size_t i = 1; i < pieces_.size(); ++i)
    if (pieces_[i].lo() < pieces_[i - 1].hi())
      throw ValidationError("density pieces overlap: " + pieces_[i - 1].describe() + " and " +
                            pieces_[i].describe());
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    auto segs = segments_of(pieces_[i], i);
    segments_.insert(segments_.end(), segs.begin(), segs.end());
  }
}

MeasureRep MeasureRep::point_mass(double at, double mass) { return MeasureRep({{at, mass}}, {}); }

double MeasureRep::density(double s) const {
  double sum = 0.0;
  for (const auto& p : pieces_)
    if (p.lo() <= s && (s < p.hi() || (s == p.hi() && s != kInf))) sum += p.density(s);
  return sum;
}

MeasureRep MeasureRep::scaled(double t) const {
  if (!(t > 0.0 && std::isfinite(t))) throw ValidationError("scale factor must be positive");
  std::vector<Atom> atoms = atoms_;
  for (auto& a : atoms) a.mass *= t;
  std::vector<DensityPiece> pieces;
  for (const auto& p : pieces_) pieces.push_back(p.scaled(t));
  return MeasureRep(std::move(atoms), std::move(pieces));
}

MeasureRep MeasureRep::translated(double c) const {
  std::vector<Atom> atoms = atoms_;
  for (auto& a : atoms) a.location += c;
  std::vector<DensityPiece> pieces;
  for (const auto& p : pieces_) pieces.push_back(p.translated(c));
  return MeasureRep(std::move(atoms), std::move(pieces));
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

double total_mass(const MeasureRep& m) {
  double sum = 0.0;
  for (const auto& a : m.atoms()) sum += a.mass;
  for (const auto& p : m.pieces()) sum += p.mass();
  return sum;
}

bool is_probability(const MeasureRep& m, double tol) {
  return std::abs(total_mass(m) - 1.0) <= tol;
}

ExtReal moment(const MeasureRep& m, int k) {
  if (k < 0) throw ValidationError("moment order must be nonnegative");
  double finite = 0.0;
  for (const auto& a : m.atoms()) finite += a.mass * std::pow(a.location, k);
  for (const auto& seg : m.segments()) {
    std::vector<double> sk{1.0};
    for (int j = 0; j < k; ++j) sk = poly::multiply(sk, {seg.shift, 1.0});
    finite += poly::integral(poly::multiply(seg.coef, sk), seg.a, seg.b);
  }
  ExtReal total = finite;
  for (const auto& p : m.pieces())
    if (p.is_tail()) total = total + tail_moment(tail_of(p), k);
  return total;
}

double atom_mass(const MeasureRep& m, double alpha) {
  for (const auto& a : m.atoms())
    if (a.location == alpha) return a.mass;
  return 0.0;
}

std::vector<ClosedInterval> support_components(const MeasureRep& m) {
  std::vector<ClosedInterval> iv;
  for (const auto& p : m.pieces()) iv.push_back({p.lo(), p.hi()});
  std::sort(iv.begin(), iv.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  std::vector<ClosedInterval> merged;
  for (const auto& i : iv) {
    if (!merged.empty() && i.lo <= merged.back().hi)
      merged.back().hi = std::max(merged.back().hi, i.hi);
    else
      merged.push_back(i);
  }
  for (const auto& a : m.atoms()) {
    const bool covered = std::any_of(merged.begin(), merged.end(), [&](const auto& i) {
      return i.lo <= a.location && a.location <= i.hi;
    });
    if (!covered) merged.push_back({a.location, a.location});
  }
  std::sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  return merged;
}

cplx cauchy_transform_offaxis(const MeasureRep& m, cplx z) {
  if (!(z.imag() != 0.0) || !std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw ValidationError("Cauchy transform needs a point off the real axis");
  cplx sum = 0.0;
  for (const auto& a : m.atoms()) sum += a.mass / (z - a.location);
  for (const auto& seg : m.segments()) sum += poly::cauchy(seg.coef, seg.a, seg.b, z - seg.shift);
  for (const auto& p : m.pieces())
    if (p.is_tail()) sum += tail_cauchy(tail_of(p), z);
  return sum;
}

cplx cauchy_transform(const MeasureRep& m, cplx z) {
  if (!(z.imag() > 0.0)) throw ValidationError("Cauchy transform needs Im z > 0");
  return cauchy_transform_offaxis(m, z);
}

cplx nevanlinna_kernel_integral(const MeasureRep& m, cplx w) {
  // Written without the -w * mass + (1 + w^2) G(w) cancellation, which loses
  // all of Im at large |w|.
  cplx sum = 0.0;
  for (const auto& a : m.atoms()) sum += a.mass * (1.0 + a.location * w) / (w - a.location);
  // Bounded segments: (1 + s w)/(w - s) = s + (1 + s^2)/(w - s).
  for (const auto& seg : m.segments()) {
    sum += poly::integral(poly::multiply(seg.coef, {seg.shift, 1.0}), seg.a, seg.b);
    sum += poly::cauchy(with_quadratic_weight(seg), seg.a, seg.b, w - seg.shift);
  }
  // Tails: G = (mass + K) / zeta with K = \int r rho(r) / (zeta - r) dr, zeta = +-(w - origin).
  for (const auto& p : m.pieces()) {
    if (!p.is_tail()) continue;
    const Tail t = tail_of(p);
    const double o = t.origin;
    const cplx k = tail_cauchy_first(t, w);
    sum += (tail_mass(t) * (1.0 + w * o) + (t.right ? 1.0 : -1.0) * (1.0 + w * w) * k) / (w - o);
  }
  return sum;
}

ExtReal inverse_square_integral(const MeasureRep& m, double x) {
  switch (singular_verdict(m, x)) {
    case Verdict::infinite: return ExtReal::infinity();
    case Verdict::undecided: return ExtReal::undecided("table piece without certified floor");
    default: break;
  }
  double sum = segment_sum(m, x, 2, false);
  for (const auto& a : m.atoms()) sum += a.mass / ((x - a.location) * (x - a.location));
  for (const auto& p : m.pieces())
    if (p.is_tail())
      sum += tail_inverse_square(tail_of(p), x);
  return sum;
}

ExtReal weighted_quadratic_integral(const MeasureRep& m, double x) {
  switch (singular_verdict(m, x)) {
    case Verdict::infinite: return ExtReal::infinity();
    case Verdict::undecided: return ExtReal::undecided("table piece without certified floor");
    default: break;
  }
  double sum = segment_sum(m, x, 2, true);
  for (const auto& a : m.atoms())
    sum += a.mass * (1.0 + a.location * a.location) / ((x - a.location) * (x - a.location));
  for (const auto& p : m.pieces())
    if (p.is_tail())
      sum += tail_weighted(tail_of(p), x);
  return sum;
}

ExtReal real_cauchy_integral(const MeasureRep& m, double x) {
  if (singular_verdict(m, x) != Verdict::finite)
    return ExtReal::undecided("inverse-square integral not finite");
  double sum = segment_sum(m, x, 1, false);
  for (const auto& a : m.atoms()) sum += a.mass / (x - a.location);
  for (const auto& p : m.pieces())
    if (p.is_tail()) sum += tail_real_cauchy(tail_of(p), x);
  return sum;
}

VerticalLimit vertical_limit_G(const MeasureRep& m, double alpha) {
  VerticalLimit out;
  if (atom_mass(m, alpha) > 0.0) {
    out.kind = VerticalLimit::Kind::infinite;
    return out;
  }
  const auto direct = real_cauchy_integral(m, alpha);
  if (direct.is_finite()) {
    out.value = direct.value();
    return out;
  }
  const auto est = limit_at_zero(
      [&](double eps) { return cauchy_transform(m, cplx(alpha, eps)); });
  if (est.converged()) {
    out.value = est.value;
    out.error = est.error;
    if (std::abs(out.value.imag()) <= 10.0 * est.error + 1e-12) out.value.imag(0.0);
    return out;
  }
  std::vector<double> mod;
  for (const auto& s : est.samples) mod.push_back(std::abs(s));
  out.kind = shows_unbounded_growth(mod) ? VerticalLimit::Kind::infinite
                                         : VerticalLimit::Kind::nonconvergent;
  out.value = est.value;
  out.error = est.error;
  return out;
}

std::optional<bool> analytic_near(const MeasureRep& m, double x, bool allow_atom_at_x) {
  if (!allow_atom_at_x && atom_mass(m, x) > 0.0) return false;
  std::vector<const DensityPiece*> touching;
  for (const auto& p : m.pieces())
    if (in_closure(p, x)) touching.push_back(&p);
  if (touching.empty()) return true;
  if (touching.size() == 1) {
    const auto& p = *touching.front();
    if (x == p.lo() || x == p.hi()) return false;  // density drops to zero on one side
    if (p.is_table()) return p.analytic() ? std::optional<bool>(true) : std::nullopt;
    return true;
  }
  // Two abutting pieces: analytic only when they continue the same polynomial.
  const auto& a = *touching[0];
  const auto& b = *touching[1];
  if (a.is_table() || b.is_table() || a.is_tail() || b.is_tail()) return false;
  if (a.family().index() != b.family().index()) return false;
  if (const auto* ua = std::get_if<UniformFamily>(&a.family()))
    return ua->c == std::get<UniformFamily>(b.family()).c;
  const auto& ma = std::get<MonomialFamily>(a.family());
  const auto& mb = std::get<MonomialFamily>(b.family());
  return ma.c == mb.c && ma.k == mb.k && ma.center == mb.center && ma.k % 2 == 0;
}

}  // namespace freeconv
