#include "freeconv/regularity.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "freeconv/errors.hpp"

namespace freeconv {

namespace {

constexpr double kZeroLimit = 1e-12;
constexpr double kSameTol = 1e-9;

bool near(double a, double b) { return std::abs(a - b) <= kSameTol * (1.0 + std::abs(a)); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

ExtReal variance_of(const PhiDescriptor& phi) {
  switch (phi.kind()) {
    case PhiDescriptor::Kind::levy_hincin: return variance_of_mu(phi.levy());
    case PhiDescriptor::Kind::stable:
      if (phi.a() == 2.0) return phi.factor();
      return ExtReal::infinity();
    default: return ExtReal::infinity();
  }
}

/// Whether the Levy measure of a closed-form phi is analytic at u (inf for u = +-inf).
bool closed_form_sigma_analytic(const PhiDescriptor& phi, double u) {
  if (phi.kind() == PhiDescriptor::Kind::cauchy) return true;
  return u != 0.0;
}

}  // namespace

std::string to_string(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::A: return "A";
    case BoundaryKind::B: return "B";
    default: return "C";
  }
}

std::string to_string(const PropertyHVerdict& v) {
  switch (v.kind) {
    case PropertyHVerdict::Kind::holds: return "holds";
    case PropertyHVerdict::Kind::fails:
      if (v.witness) return "fails(" + fmt(*v.witness) + ")";
      return "fails(" + v.detail + ")";
    default: return "undecided(" + v.detail + ")";
  }
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

Classification classify_boundary_point(const ConvolutionModel& model, double alpha) {
  Classification out;
  if (structurally_in_V(model, alpha) || f_boundary(model, alpha) > model.zero_threshold(alpha)) {
    out.status = Classification::Status::interior_of_V;
    out.reason = "f(alpha) > 0";
    return out;
  }
  const auto& nu = model.nu();
  const bool levy = model.phi().is_levy();
  BoundaryPoint bp;
  bp.alpha = alpha;
  auto& cert = bp.cert;

  const auto vl = vertical_limit_G(nu, alpha);
  if (vl.kind == VerticalLimit::Kind::infinite) {
    const double m = atom_mass(nu, alpha);
    if (m == 0.0) {
      out.status = Classification::Status::conflict;
      out.reason = "G* infinite without an atom of nu, yet f(alpha) = 0";
      return out;
    }
    bp.kind = BoundaryKind::A;
    cert.I2 = 1.0 / m;
    if (levy) {
      cert.I3 = weighted_quadratic_integral(model.phi().levy().sigma, 0.0);
      cert.product = cert.I2 * cert.I3;
    }
  } else if (vl.kind == VerticalLimit::Kind::value && vl.is_real()) {
    const double l = vl.value.real();
    cert.g_star = l;
    cert.I1 = inverse_square_integral(nu, alpha);
    if (std::abs(l) <= kZeroLimit) {
      bp.kind = BoundaryKind::C;
      cert.g_star = 0.0;
      if (levy) cert.I4 = variance_of_mu(model.phi().levy());
    } else {
      bp.kind = BoundaryKind::B;
      if (levy)
        cert.I4 = weighted_quadratic_integral(model.phi().levy().sigma, 1.0 / l) *
                  ExtReal(1.0 / (l * l));
    }
    if (levy) cert.product = cert.I1 * cert.I4;
  } else if (vl.kind == VerticalLimit::Kind::value) {
    out.status = Classification::Status::conflict;
    out.reason = "G*(alpha) is not real, yet f(alpha) = 0";
    return out;
  } else {
    out.status = Classification::Status::undecided;
    out.reason = "vertical limit of G_nu does not converge";
    return out;
  }

  double err = 0.0;
  if (!cert.product.is_finite() && !cert.product.is_pos_inf()) {
    const auto g = g_evaluate(model, alpha, false);
    if (!g.value.is_finite() && !g.value.is_pos_inf()) {
      out.status = Classification::Status::undecided;
      out.reason = "boundary integrals undecided: " + g.value.reason();
      return out;
    }
    cert.product = g.value;
    err = g.error;
    if (bp.kind != BoundaryKind::A && cert.I1.is_finite() && g.value.is_finite())
      cert.I4 = g.value.value() / cert.I1.value();
  }
  if (cert.product.is_pos_inf()) {
    out.status = Classification::Status::conflict;
    out.reason = "f(alpha) = 0 but the type " + to_string(bp.kind) + " product is +inf";
    return out;
  }
  const double p = cert.product.value();
  bp.margin = p - 1.0;
  if (std::abs(bp.margin) <= std::max(kTieBand, err)) {
    bp.tie = true;
    bp.omega_prime = ExtReal::infinity();
    bp.omega_prime_below = p < 1.0 ? ExtReal(1.0 / (1.0 - p)) : ExtReal::infinity();
  } else if (bp.margin > 0.0) {
    out.status = Classification::Status::conflict;
    out.reason = "f(alpha) = 0 but the type " + to_string(bp.kind) + " product " + fmt(p) +
                 " exceeds 1";
    return out;
  } else {
    bp.omega_prime = 1.0 / (1.0 - p);
  }
  bp.image = h_map_given_f(model, alpha, 0.0);
  out.status = Classification::Status::boundary;
  out.point = bp;
  return out;
}

// ---------------------------------------------------------------------------
// Density and atoms
// ---------------------------------------------------------------------------

double density_at(const ConvolutionModel& model, double s) {
  const double x = h_inverse(model, s);
  const double fx = f_boundary(model, x);
  if (!(fx > 0.0)) return 0.0;
  return std::max(0.0, -cauchy_transform(model.nu(), cplx(x, fx)).imag() / kPi);
}

AtomsResult atoms_of_convolution(const ConvolutionModel& model) {
  AtomsResult out;
  if (!model.phi().is_levy()) {
    out.no_atoms = true;
    out.reason = "no-atoms: s_mu does not exist for " + model.phi().describe();
    return out;
  }
  const auto sm = s_mu(model.phi().levy());
  if (sm.undecided) {
    out.reason = "undecided: " + sm.reason;
    return out;
  }
  if (!sm.exists) {
    out.no_atoms = true;
    out.reason = "no-atoms: s_mu does not exist";
    return out;
  }
  for (const auto& a : model.nu().atoms()) {
    const double total = a.mass + sm.atom_mass;
    if (total < 1.0 - 1e-12) continue;
    ConvolutionAtom ca;
    ca.alpha = a.location;
    ca.location = a.location + *sm.location;
    ca.boundary_equality = total <= 1.0 + 1e-12;
    ca.mass = ca.boundary_equality ? 0.0 : total - 1.0;
    try {
      const auto wp = omega_prime_at(model, a.location);
      if (wp.value.is_pos_inf())
        ca.mass_via_omega_prime = 0.0;
      else if (wp.value.is_finite())
        ca.mass_via_omega_prime = a.mass / wp.value.value();
      else
        ca.mass_via_omega_prime = wp.value;
    } catch (const ValidationError& e) {
      ca.mass_via_omega_prime = ExtReal::undecided(e.what());
    }
    out.atoms.push_back(ca);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Property (H)
// ---------------------------------------------------------------------------

namespace {

PropertyHVerdict property_H_levy(const LevyTriple& triple) {
  PropertyHVerdict v;
  const auto var = variance_of_mu(triple);
  if (var.is_undecided()) {
    v.detail = "variance undecided: " + var.reason();
    return v;
  }
  if (var.is_finite()) {
    v.kind = PropertyHVerdict::Kind::fails;
    v.detail = "finite-variance";
    return v;
  }
  const auto& sigma = triple.sigma;
  auto w = [&](double x) { return weighted_quadratic_integral(sigma, x); };
  auto fail_at = [&](double x, double val) {
    PropertyHVerdict f;
    f.kind = PropertyHVerdict::Kind::fails;
    f.witness = x;
    f.detail = "W(" + fmt(x) + ") = " + fmt(val) + " <= 1";
    return f;
  };
  std::string undecided;

  // Inside the support: only points where the density vanishes can give a finite value.
  std::vector<double> cand;
  for (const auto& p : sigma.pieces()) {
    if (std::isfinite(p.lo())) cand.push_back(p.lo());
    if (std::isfinite(p.hi())) cand.push_back(p.hi());
    if (const auto* m = std::get_if<MonomialFamily>(&p.family()))
      if (m->center >= p.lo() && m->center <= p.hi()) cand.push_back(m->center);
    if (const auto* t = std::get_if<TableFamily>(&p.family())) {
      if (!p.analytic()) undecided = "table piece of sigma without analyticity";
      for (std::size_t i = 0; i < t->s.size(); ++i)
        if (t->values[i] == 0.0) undecided = "table piece of sigma with a zero sample";
    }
  }
  for (double x : cand) {
    if (atom_mass(sigma, x) > 0.0) continue;
    const auto val = w(x);
    if (val.is_undecided()) {
      undecided = "W undecided at " + fmt(x);
      continue;
    }
    if (val.is_finite() && val.value() <= 1.0) return fail_at(x, val.value());
  }

  // Gaps: W is finite and strictly convex on each component of R \ supp(sigma).
  const auto comps = support_components(sigma);
  for (std::size_t i = 0; i + 1 < comps.size(); ++i) {
    const double a = comps[i].hi, b = comps[i + 1].lo;
    if (!(a < b)) continue;
    const double pad = 1e-9 * (b - a);
    const auto fw = [&](double x) { return w(x).value(); };
    const auto r = boost::math::tools::brent_find_minima(fw, a + pad, b - pad, 50);
    if (r.second <= 1.0) return fail_at(r.first, r.second);
  }
  if (!comps.empty()) {
    // W -> 0 along an unbounded gap.
    for (int side = 0; side < 2; ++side) {
      const double end = side == 0 ? comps.front().lo : comps.back().hi;
      if (!std::isfinite(end)) continue;
      for (int k = 0; k < 80; ++k) {
        const double x = side == 0 ? end - std::ldexp(1.0, k) : end + std::ldexp(1.0, k);
        const auto val = w(x);
        if (val.is_finite() && val.value() <= 1.0) return fail_at(x, val.value());
      }
      undecided = "W did not drop below 1 along an unbounded gap";
    }
  }
  if (!undecided.empty()) {
    v.detail = undecided;
    return v;
  }
  v.kind = PropertyHVerdict::Kind::holds;
  v.detail = "W(x) > 1 for all x and var(mu) = +inf";
  return v;
}

PropertyHVerdict property_H_closed(const PhiDescriptor& phi, double lo, double hi, int n) {
  PropertyHVerdict v;
  const auto tail = limit_at_infinity(
      [&](double y) { return cplx(-y * phi_eval(phi, cplx(0.0, y)).imag(), 0.0); }, 1e2, 21,
      1e-9, 1);
  if (tail.converged()) {
    v.kind = PropertyHVerdict::Kind::fails;
    v.detail = "finite-variance";
    return v;
  }
  if (!tail.diverges()) {
    v.detail = "tail limit of -y Im phi(iy) undecided";
    return v;
  }
  for (int i = 0; i < n; ++i) {
    const double x = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    const auto est = limit_at_zero(
        [&](double eps) { return cplx(-phi_eval(phi, cplx(x, eps)).imag() / eps, 0.0); }, {}, 1);
    if (est.converged() && est.value.real() <= 1.0) {
      v.kind = PropertyHVerdict::Kind::fails;
      v.witness = x;
      v.detail = "boundary limit " + fmt(est.value.real()) + " <= 1";
      return v;
    }
    if (!est.converged() && !est.diverges()) {
      v.detail = "boundary limit undecided at " + fmt(x);
      return v;
    }
  }
  v.kind = PropertyHVerdict::Kind::holds;
  v.detail = "both limit criteria verified on the probe grid [" + fmt(lo) + ", " + fmt(hi) + "]";
  return v;
}

}  // namespace

PropertyHVerdict property_H(const PhiDescriptor& phi, double probe_lo, double probe_hi,
                            int n_probe) {
  if (phi.is_levy()) return property_H_levy(phi.levy());
  if (!(probe_lo < probe_hi) || n_probe < 2) throw ValidationError("bad probe window");
  return property_H_closed(phi, probe_lo, probe_hi, n_probe);
}

// ---------------------------------------------------------------------------
// Support structure
// ---------------------------------------------------------------------------

SupportStructure support_structure(const ConvolutionModel& model, double s_lo, double s_hi,
                                   int n_seed) {
  if (!(s_lo < s_hi)) throw ValidationError("window needs lo < hi");
  SupportStructure st;
  st.x_lo = h_inverse(model, s_lo);
  st.x_hi = h_inverse(model, s_hi);
  st.V = positivity_set(model, st.x_lo, st.x_hi, n_seed);
  st.warnings = st.V.warnings;
  st.atoms = atoms_of_convolution(model);

  for (const auto& part : st.V.parts) {
    SupportComponent c;
    c.lo = part.lo_cut ? s_lo : h_map(model, part.lo);
    c.hi = part.hi_cut ? s_hi : h_map(model, part.hi);
    c.lo_cut = part.lo_cut;
    c.hi_cut = part.hi_cut;
    if (!st.components.empty() && near(st.components.back().hi, c.lo)) {
      st.components.back().hi = c.hi;
      st.components.back().hi_cut = c.hi_cut;
    } else {
      st.components.push_back(c);
    }
  }
  for (const auto& a : st.atoms.atoms) {
    if (!(a.mass > 0.0) || a.location < s_lo || a.location > s_hi) continue;
    const bool covered = std::any_of(st.components.begin(), st.components.end(), [&](const auto& c) {
      return c.lo - kSameTol <= a.location && a.location <= c.hi + kSameTol;
    });
    if (!covered) st.components.push_back({a.location, a.location, false, false});
  }
  std::sort(st.components.begin(), st.components.end(),
            [](const auto& a, const auto& b) { return a.lo < b.lo; });

  std::vector<double> zeros;
  auto add_zero = [&](double x) {
    if (std::none_of(zeros.begin(), zeros.end(), [&](double z) { return near(z, x); }))
      zeros.push_back(x);
  };
  for (const auto& part : st.V.parts) {
    if (!part.lo_cut) add_zero(part.lo);
    if (!part.hi_cut) add_zero(part.hi);
  }
  for (const auto& a : model.nu().atoms())
    if (a.location >= st.x_lo && a.location <= st.x_hi && !st.V.contains(a.location))
      add_zero(a.location);
  std::sort(zeros.begin(), zeros.end());
  for (double x : zeros) {
    const auto c = classify_boundary_point(model, x);
    if (c.status == Classification::Status::boundary) {
      if (c.point->image >= s_lo && c.point->image <= s_hi)
        st.zero_points.emplace_back(c.point->image, *c.point);
    } else {
      st.warnings.push_back("zero candidate x = " + fmt(x) + ": " + c.reason);
    }
  }
  return st;
}

DensityProfile density_profile(const ConvolutionModel& model, double s_lo, double s_hi, int n,
                               int n_seed) {
  if (n < 32) throw ValidationError("density_profile needs n >= 32");
  const auto st = support_structure(model, s_lo, s_hi, n_seed);
  DensityProfile out;
  for (const auto& part : st.V.parts) {
    for (int k = 0; k < n; ++k) {
      const double x = k == 0       ? part.lo
                       : k == n - 1 ? part.hi
                                    : 0.5 * (part.lo + part.hi) -
                                          0.5 * (part.hi - part.lo) * std::cos(kPi * k / (n - 1));
      const bool zero_end = (k == 0 && !part.lo_cut) || (k == n - 1 && !part.hi_cut);
      if (zero_end) {
        out.samples.emplace_back(h_map_given_f(model, x, 0.0), 0.0);
        continue;
      }
      const double fx = f_boundary(model, x);
      const double s = h_map_given_f(model, x, fx);
      const double p =
          fx > 0.0 ? std::max(0.0, -cauchy_transform(model.nu(), cplx(x, fx)).imag() / kPi) : 0.0;
      out.samples.emplace_back(s, p);
    }
  }
  std::sort(out.samples.begin(), out.samples.end());
  for (const auto& a : st.atoms.atoms)
    if (a.location >= s_lo && a.location <= s_hi) out.atoms.push_back(a);
  out.components = st.components;
  out.zero_points = st.zero_points;
  out.warnings = st.warnings;
  return out;
}

int support_count(const MeasureRep& m) { return static_cast<int>(support_components(m).size()); }

int complement_count(const MeasureRep& m) {
  const auto c = support_components(m);
  if (c.empty()) return 1;
  int n = static_cast<int>(c.size()) - 1;
  if (std::isfinite(c.front().lo)) ++n;
  if (std::isfinite(c.back().hi)) ++n;
  return n;
}

int component_bound(const ConvolutionModel& model) {
  const int n_nu = support_count(model.nu());
  const int n_gap = complement_count(model.nu());
  int n_sigma = 1;
  double atom = 0.0;
  if (model.phi().is_levy()) {
    n_sigma = support_count(model.phi().levy().sigma);
    const auto sm = s_mu(model.phi().levy());
    if (sm.exists) atom = sm.atom_mass;
  }
  return 2 + n_nu + (1 + 3 * n_sigma) * n_gap + static_cast<int>(std::floor(1.0 / (1.0 - atom)));
}

SupportReport support_report(const ConvolutionModel& model, double s_lo, double s_hi,
                             int n_seed) {
  const auto st = support_structure(model, s_lo, s_hi, n_seed);
  SupportReport r;
  r.components = st.components;
  r.count = static_cast<int>(st.components.size());
  r.bound = component_bound(model);
  r.bound_satisfied = r.count <= r.bound;
  r.warnings = st.warnings;
  return r;
}

// ---------------------------------------------------------------------------
// Analyticity at zeros
// ---------------------------------------------------------------------------

AnalyticityReport analyticity_report(const ConvolutionModel& model, const BoundaryPoint& zero,
                                     const IntervalSet* v) {
  AnalyticityReport r;
  r.zero = zero.image;
  r.alpha = zero.alpha;
  const double alpha = zero.alpha;

  IntervalSet local;
  if (v == nullptr) {
    const double d = 1e-2 * (1.0 + std::abs(alpha));
    local = positivity_set(model, alpha - d, alpha + d, 64);
    v = &local;
  }
  const bool left = std::any_of(v->parts.begin(), v->parts.end(),
                                [&](const auto& p) { return !p.hi_cut && near(p.hi, alpha); });
  const bool right = std::any_of(v->parts.begin(), v->parts.end(),
                                 [&](const auto& p) { return !p.lo_cut && near(p.lo, alpha); });
  r.isolated = left && right;

  if (model.phi().is_levy() && zero.kind != BoundaryKind::A) {
    const auto& tr = model.phi().levy();
    const auto est = limit_at_zero([&](double e) { return H_eval(model, cplx(alpha, e)); });
    std::optional<double> predicted;
    if (zero.kind == BoundaryKind::C) {
      const auto m = mean_of_mu(tr);
      if (m.is_finite()) predicted = alpha + m.value();
    } else if (zero.cert.g_star) {
      if (const auto phi_star = phi_real_boundary(tr, 1.0 / *zero.cert.g_star))
        predicted = alpha + *phi_star;
    }
    if (predicted && est.converged()) r.identity_residual = std::abs(est.value.real() - *predicted);
  }

  if (zero.omega_prime.is_pos_inf()) {
    r.analytic = false;
    r.reason = "omega' = +inf at the zero";
    return r;
  }
  if (!r.isolated) {
    r.analytic = false;
    r.reason = "zero is not isolated";
    return r;
  }
  if (!zero.omega_prime.is_finite()) {
    r.reason = "omega' undecided";
    return r;
  }

  std::optional<bool> sigma_ok;
  std::string where;
  switch (zero.kind) {
    case BoundaryKind::A: where = "0"; break;
    case BoundaryKind::B: where = fmt(1.0 / zero.cert.g_star.value_or(1.0)); break;
    default: where = "infinity"; break;
  }
  if (model.phi().is_levy()) {
    const auto& sigma = model.phi().levy().sigma;
    if (zero.kind == BoundaryKind::C)
      sigma_ok = true;  // only unbounded tails or nothing beyond the last bounded piece
    else if (zero.kind == BoundaryKind::A)
      sigma_ok = analytic_near(sigma, 0.0, false);
    else
      sigma_ok = analytic_near(sigma, 1.0 / *zero.cert.g_star, false);
  } else {
    const double u = zero.kind == BoundaryKind::A   ? 0.0
                     : zero.kind == BoundaryKind::B ? 1.0 / *zero.cert.g_star
                                                    : std::numeric_limits<double>::infinity();
    sigma_ok = closed_form_sigma_analytic(model.phi(), u);
  }
  if (!sigma_ok) {
    r.reason = "analyticity of sigma at F* = " + where + " cannot be certified";
    return r;
  }
  if (!*sigma_ok) {
    r.reason = "sigma is not analytic at F* = " + where + "; the criterion does not apply";
    return r;
  }
  const bool type_a = zero.kind == BoundaryKind::A;
  const auto nu_ok = analytic_near(model.nu(), alpha, type_a);
  if (!nu_ok) {
    r.reason = "analyticity of nu at alpha cannot be certified (table piece)";
    return r;
  }
  r.analytic = *nu_ok;
  if (type_a)
    r.reason = *nu_ok ? "nu is meromorphic at the type A point" : "nu is not meromorphic at the type A point";
  else
    r.reason = std::string(*nu_ok ? "nu is analytic" : "nu is not analytic") + " at the type " +
               to_string(zero.kind) + " point";
  return r;
}

TangencyCheck tangency_check(const ConvolutionModel& model, double alpha) {
  TangencyCheck out;
  out.alpha = alpha;
  const double scale = std::max(1.0, std::abs(alpha));
  for (double d : {1e-2, 1e-3, 1e-4}) {
    const double step = d * scale;
    const double r = std::max(f_boundary(model, alpha - step), f_boundary(model, alpha + step));
    out.ratios.emplace_back(step, r / step);
  }
  return out;
}

namespace {

std::vector<std::string> expectations_of(const ConvolutionModel& model, const Diagnosis& d) {
  std::vector<std::string> out;
  std::vector<double> at;
  for (const auto& a : d.atoms)
    if (a.mass > 0.0) at.push_back(a.location);
  std::sort(at.begin(), at.end());
  for (std::size_t i = 0; i + 1 < at.size(); ++i) {
    const bool seen = std::any_of(d.components.begin(), d.components.end(), [&](const auto& c) {
      return c.hi > at[i] && c.lo < at[i + 1];
    });
    out.push_back("density not identically zero between atoms " + fmt(at[i]) + " and " +
                  fmt(at[i + 1]) + " (observed: " + (seen ? "yes" : "no") + ")");
  }
  const auto comps = support_components(model.nu());
  const bool compact = !comps.empty() && std::isfinite(comps.front().lo) && std::isfinite(comps.back().hi);
  const bool has_H = d.property_H.kind == PropertyHVerdict::Kind::holds;
  if (compact || has_H)
    out.push_back(std::string("density uniformly bounded (") +
                  (compact ? "nu compactly supported" : "property (H)") + ")");
  if (has_H) out.push_back("support unbounded (property (H))");
  return out;
}

}  // namespace

Diagnosis diagnose(const ConvolutionModel& model, double s_lo, double s_hi, int n_seed) {
  Diagnosis d;
  d.property_H = property_H(model.phi(), s_lo, s_hi, 201);
  d.variance_mu = variance_of(model.phi());
  if (model.phi().is_levy()) {
    const auto sm = s_mu(model.phi().levy());
    if (sm.exists) d.s_mu = Atom{*sm.location, sm.atom_mass};
  }
  const auto st = support_structure(model, s_lo, s_hi, n_seed);
  d.components = st.components;
  d.component_count = static_cast<int>(st.components.size());
  d.component_bound = component_bound(model);
  d.bound_satisfied = d.component_count <= d.component_bound;
  d.atoms = st.atoms.atoms;
  d.warnings = st.warnings;
  if (!st.atoms.reason.empty()) d.warnings.push_back(st.atoms.reason);
  for (const auto& [s, bp] : st.zero_points) {
    d.zeros.push_back(bp);
    d.analyticity_reports.push_back(analyticity_report(model, bp, &st.V));
    if (bp.omega_prime.is_finite()) d.tangency.push_back(tangency_check(model, bp.alpha));
  }
  for (const auto& a : d.atoms)
    if (a.mass > 0.0) d.tangency.push_back(tangency_check(model, a.alpha));
  d.expectations = expectations_of(model, d);
  return d;
}

}  // namespace freeconv
