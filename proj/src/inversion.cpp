#include "freeconv/inversion.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "freeconv/errors.hpp"

namespace freeconv {

namespace {

// G*(x) below this magnitude is treated as the zero limit (type C).
constexpr double kZeroLimit = 1e-12;
constexpr double kBracketCap = 1e12;
constexpr int kOmegaCap = 10000;

double q_ratio(const ConvolutionModel& m, double x, double y) {
  return H_eval(m, cplx(x, y)).imag() / y;
}

template <typename F>
double monotone_root(F f, double lo, double hi, double flo, double fhi, double tol) {
  std::uintmax_t iters = 300;
  auto done = [tol](double a, double b) {
    return b - a <= std::max(tol, 4.0 * std::numeric_limits<double>::epsilon() * std::abs(a));
  };
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, done, iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace

ConvolutionModel::ConvolutionModel(PhiDescriptor phi, MeasureRep nu, Tolerances tol)
    : phi_(std::move(phi)), nu_(std::move(nu)), tol_(tol) {
  if (phi_.degenerate()) throw ValidationError("mu must be nondegenerate (sigma = 0)");
  if (!is_probability(nu_)) throw ValidationError("nu must be a probability measure");
  if (!(tol_.y_floor_coef > 0.0) || !(tol_.root_tol > 0.0) || !(tol_.quad_tol > 0.0))
    throw ValidationError("tolerances must be positive");
  for (double x : {-10.0, -1.0, 0.0, 1.0, 10.0}) {
    for (double y : {1e-3, 1.0, 1e3}) {
      const double im = H_eval(*this, cplx(x, y)).imag();
      if (!(im <= b() * y * (1.0 + 1e-9) + 1e-12))
        throw NumericalError("H violates Im H <= b y at " + std::to_string(x) + " + " +
                             std::to_string(y) + "i");
    }
  }
}

cplx H_eval(const ConvolutionModel& model, cplx z) {
  if (!(z.imag() > 0.0)) throw ValidationError("H needs Im z > 0");
  return z + phi_eval(model.phi(), 1.0 / cauchy_transform(model.nu(), z));
}

double f_boundary(const ConvolutionModel& model, double x) {
  const double y0 = model.y_floor(x);
  double qlo = q_ratio(model, x, y0);
  if (qlo >= 0.0) return 0.0;
  double lo = y0, hi = 2.0 * y0;
  double qhi = q_ratio(model, x, hi);
  while (qhi <= 0.0) {
    lo = hi;
    qlo = qhi;
    hi *= 2.0;
    if (hi > kBracketCap * (1.0 + std::abs(x)))
      throw NumericalError("f bracket failed at x = " + std::to_string(x));
    qhi = q_ratio(model, x, hi);
  }
  return monotone_root([&](double y) { return q_ratio(model, x, y); }, lo, hi, qlo, qhi,
                       model.tol().root_tol);
}

bool structurally_in_V(const ConvolutionModel& model, double x) {
  if (atom_mass(model.nu(), x) > 0.0) return false;
  return inverse_square_integral(model.nu(), x).is_pos_inf();
}

bool in_V(const ConvolutionModel& model, double x) {
  return structurally_in_V(model, x) || f_boundary(model, x) > model.zero_threshold(x);
}

FBoundary F_boundary(const ConvolutionModel& model, double x) {
  FBoundary out;
  if (atom_mass(model.nu(), x) > 0.0) {
    out.kind = FBoundary::Kind::zero;
    return out;
  }
  const auto l = real_cauchy_integral(model.nu(), x);
  if (!l.is_finite()) return out;
  out.g_star = l.value();
  if (std::abs(out.g_star) <= kZeroLimit) {
    out.kind = FBoundary::Kind::infinite;
  } else {
    out.kind = FBoundary::Kind::finite;
    out.value = 1.0 / out.g_star;
  }
  return out;
}

GEvaluation g_evaluate(const ConvolutionModel& model, double x, bool cross_check) {
  GEvaluation out;
  auto extrapolate_g = [&] {
    return limit_at_zero(
        [&](double eps) { return cplx(model.b() - q_ratio(model, x, eps), 0.0); }, {}, 1);
  };
  auto from_extrapolation = [&] {
    const auto est = extrapolate_g();
    out.method = "extrapolated";
    if (est.converged()) {
      out.value = est.value.real();
      out.error = est.error;
      out.extrapolated = est.value.real();
      out.extrapolation_error = est.error;
    } else if (est.diverges()) {
      out.value = ExtReal::infinity();
    } else {
      out.value = ExtReal::undecided("g extrapolation did not converge at x = " +
                                     std::to_string(x));
      out.error = est.error;
    }
    return out;
  };

  if (structurally_in_V(model, x)) {
    out.value = ExtReal::infinity();
    out.method = "structural";
    return out;
  }
  if (!model.phi().is_levy()) return from_extrapolation();

  const auto& triple = model.phi().levy();
  const double nu_atom = atom_mass(model.nu(), x);
  ExtReal exact = ExtReal::undecided();
  if (nu_atom > 0.0) {
    exact = weighted_quadratic_integral(triple.sigma, 0.0) * ExtReal(1.0 / nu_atom);
    out.method = "atom";
  } else {
    const auto fb = F_boundary(model, x);
    const auto i1 = inverse_square_integral(model.nu(), x);
    if (fb.kind == FBoundary::Kind::infinite) {
      exact = i1 * variance_of_mu(triple);
    } else if (fb.kind == FBoundary::Kind::finite) {
      exact = i1 * weighted_quadratic_integral(triple.sigma, fb.value) *
              ExtReal(1.0 / (fb.g_star * fb.g_star));
    }
    out.method = "factored";
  }
  if (exact.is_undecided()) return from_extrapolation();
  out.value = exact;
  if (cross_check && exact.is_finite()) {
    const auto est = extrapolate_g();
    if (est.converged()) {
      out.extrapolated = est.value.real();
      out.extrapolation_error = est.error;
    }
  }
  return out;
}

ExtReal g_eval(const ConvolutionModel& model, double x) {
  return g_evaluate(model, x, false).value;
}

double h_map_given_f(const ConvolutionModel& model, double x, double fx) {
  if (fx > 0.0) {
    const cplx h = H_eval(model, cplx(x, fx));
    if (std::abs(h.imag()) > 10.0 * model.tol().root_tol * std::max(1.0, std::abs(h)))
      throw NumericalError("Im H(x + i f(x)) = " + std::to_string(h.imag()) +
                           " does not vanish at x = " + std::to_string(x));
    return h.real();
  }
  if (model.phi().is_levy()) {
    const auto& triple = model.phi().levy();
    const auto fb = F_boundary(model, x);
    std::optional<double> phi_star;
    switch (fb.kind) {
      case FBoundary::Kind::zero: phi_star = phi_real_boundary(triple, 0.0); break;
      case FBoundary::Kind::finite: phi_star = phi_real_boundary(triple, fb.value); break;
      case FBoundary::Kind::infinite: {
        const auto m = mean_of_mu(triple);
        if (m.is_finite()) phi_star = m.value();
        break;
      }
      default: break;
    }
    if (phi_star) return x + *phi_star;
  }
  const auto est = limit_at_zero([&](double eps) { return H_eval(model, cplx(x, eps)); });
  if (est.converged()) return est.value.real();
  // f(x) <= y_floor here, so H just above the axis is within the floor of the limit.
  return H_eval(model, cplx(x, model.y_floor(x))).real();
}

double h_map(const ConvolutionModel& model, double x) {
  return h_map_given_f(model, x, f_boundary(model, x));
}

double h_inverse(const ConvolutionModel& model, double s) {
  auto d = [&](double x) { return h_map(model, x) - s; };
  double width = 1.0;
  double lo = s - width, hi = s + width;
  double dlo = d(lo), dhi = d(hi);
  while (dlo > 0.0) {
    hi = lo;
    dhi = dlo;
    width *= 2.0;
    lo -= width;
    if (std::abs(lo) > kBracketCap) throw NumericalError("h_inverse bracket exceeded 1e12");
    dlo = d(lo);
  }
  while (dhi < 0.0) {
    lo = hi;
    dlo = dhi;
    width *= 2.0;
    hi += width;
    if (std::abs(hi) > kBracketCap) throw NumericalError("h_inverse bracket exceeded 1e12");
    dhi = d(hi);
  }
  if (dlo == 0.0) return lo;
  if (dhi == 0.0) return hi;
  return monotone_root(d, lo, hi, dlo, dhi, model.tol().root_tol);
}

cplx omega(const ConvolutionModel& model, cplx w) {
  if (!(w.imag() > 0.0)) throw ValidationError("omega needs Im w > 0");
  const double target = model.tol().root_tol * std::max(1.0, std::abs(w));
  // Quadrature-backed transforms are only smooth to about quad_tol.
  const double accept = std::max(target, model.tol().quad_tol * std::max(1.0, std::abs(w)));
  auto residual = [&](cplx z) { return H_eval(model, z) - w; };

  auto newton = [&](cplx& z) {
    cplx r = residual(z);
    for (int k = 0; k < 60 && std::abs(r) > target; ++k) {
      const double step = 1e-7 * std::max(1.0, std::abs(z));
      const double hstep = std::min(step, 0.5 * z.imag());
      const cplx dh = (H_eval(model, z + hstep) - H_eval(model, z - hstep)) / (2.0 * hstep);
      cplx delta = r / dh;
      bool improved = false;
      for (int halve = 0; halve < 40; ++halve) {
        const cplx zn = z - delta;
        if (zn.imag() > 0.0) {
          const cplx rn = residual(zn);
          if (std::abs(rn) < std::abs(r)) {
            z = zn;
            r = rn;
            improved = true;
            break;
          }
        }
        delta *= 0.5;
      }
      if (!improved) break;
    }
    return std::abs(r);
  };

  cplx z = w;
  bool damped = false;
  double last_step = std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= kOmegaCap; ++it) {
    cplx zn = w - phi_eval(model.phi(), 1.0 / cauchy_transform(model.nu(), z));
    if (damped) zn = 0.5 * (zn + z);
    const double step = std::abs(zn - z);
    if (step > last_step && !damped) damped = true;
    last_step = step;
    z = zn;
    const bool settled = step <= 1e-14 * std::max(1.0, std::abs(z));
    if (settled || it % 50 == 0 || it == kOmegaCap) {
      cplx zp = z;
      best = newton(zp);
      if (best <= target || (settled && best <= accept)) {
        z = zp;
        break;
      }
      if (settled) {
        z = zp;
        break;
      }
    }
  }
  if (!(best <= accept))
    throw NumericalError("omega did not converge at w = (" + std::to_string(w.real()) + ", " +
                         std::to_string(w.imag()) + "), residual " + std::to_string(best));
  const double fz = f_boundary(model, z.real());
  if (!(z.imag() > fz - model.tol().root_tol))
    throw NumericalError("omega landed outside Omega at w = (" + std::to_string(w.real()) +
                         ", " + std::to_string(w.imag()) + ")");
  return z;
}

cplx omega_real(const ConvolutionModel& model, double s) {
  const double x = h_inverse(model, s);
  return {x, f_boundary(model, x)};
}

OmegaPrime omega_prime_at(const ConvolutionModel& model, double alpha) {
  if (f_boundary(model, alpha) > model.zero_threshold(alpha))
    throw ValidationError("omega' at h(alpha) needs f(alpha) = 0");
  OmegaPrime out;
  const auto g = g_evaluate(model, alpha);
  if (g.value.is_undecided()) {
    out.value = g.value;
    return out;
  }
  if (g.value.is_pos_inf()) {
    out.value = ExtReal::undecided("g(alpha) = +inf although f(alpha) = 0");
    out.margin = std::numeric_limits<double>::infinity();
    return out;
  }
  out.margin = g.value.value() - model.b();
  if (std::abs(out.margin) <= std::max(kTieBand, g.error)) {
    out.tie = true;
    out.value = ExtReal::infinity();
  } else if (out.margin > 0.0) {
    out.value = ExtReal::undecided("g(alpha) exceeds b although f(alpha) = 0");
  } else {
    out.value = 1.0 / (model.b() - g.value.value());
  }
  return out;
}

bool IntervalSet::contains(double x) const {
  return std::any_of(parts.begin(), parts.end(), [x](const auto& p) { return p.contains(x); });
}

IntervalSet positivity_set(const ConvolutionModel& model, double lo, double hi, int n_seed) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw ValidationError("positivity_set needs a finite window lo < hi");
  if (n_seed < 16) throw ValidationError("positivity_set needs n_seed >= 16");

  std::vector<double> candidates;
  auto add_candidate = [&](double c) {
    if (std::isfinite(c) && c >= lo && c <= hi) candidates.push_back(c);
  };
  for (const auto& a : model.nu().atoms()) add_candidate(a.location);
  for (const auto& p : model.nu().pieces()) {
    add_candidate(p.lo());
    add_candidate(p.hi());
    const double a = std::max(p.lo(), lo), b = std::min(p.hi(), hi);
    if (a < b) add_candidate(0.5 * (a + b));
    if (const auto* mono = std::get_if<MonomialFamily>(&p.family())) add_candidate(mono->center);
    if (const auto* tab = std::get_if<TableFamily>(&p.family())) {
      for (std::size_t i = 0; i < tab->s.size(); ++i)
        if (tab->values[i] == 0.0) add_candidate(tab->s[i]);
    }
  }

  std::vector<double> xs = candidates;
  auto add_seed = [&](double x) {
    if (x >= lo && x <= hi) xs.push_back(x);
  };
  for (int i = 0; i < n_seed; ++i) add_seed(lo + (hi - lo) * i / (n_seed - 1));
  // V changes only near supp nu: dense seeds over its hull, inside its bounded
  // gaps, and on geometric rings outside it.
  const auto comps = support_components(model.nu());
  const double a0 = std::max(comps.front().lo, lo - 1.0), b0 = std::min(comps.back().hi, hi + 1.0);
  if (std::isfinite(a0) && std::isfinite(b0)) {
    const double margin = std::max(1.0, 0.25 * (b0 - a0));
    const double ha = std::max(lo, a0 - margin), hb = std::min(hi, b0 + margin);
    for (int i = 0; ha < hb && i < n_seed; ++i) add_seed(ha + (hb - ha) * i / (n_seed - 1));
    for (double d = 1e-3 * margin; d < (hi - lo); d *= 1.25) {
      add_seed(a0 - d);
      add_seed(b0 + d);
    }
  }
  for (std::size_t k = 1; k < comps.size(); ++k) {
    const double a = comps[k - 1].hi, b = comps[k].lo;
    constexpr int kGapSeeds = 64;
    for (int i = 1; i < kGapSeeds; ++i)
      add_seed(a + 0.5 * (b - a) * (1 - std::cos(kPi * i / kGapSeeds)));
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<char> pv(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) pv[i] = in_V(model, xs[i]);

  auto snap = [&](double e) {
    for (double c : candidates)
      if (std::abs(e - c) <= 1e-9 * (1.0 + std::abs(c))) return c;
    return e;
  };
  auto locate = [&](double a, double b, bool pa) {
    const double tol = model.tol().root_tol;
    while (b - a > std::max(tol, 4.0 * std::numeric_limits<double>::epsilon() * std::abs(a))) {
      const double m = 0.5 * (a + b);
      if (m <= a || m >= b) break;
      if (static_cast<bool>(in_V(model, m)) == pa)
        a = m;
      else
        b = m;
    }
    // The endpoint of V is the bracket end outside V.
    const double out_end = pa ? b : a;
    const double c = snap(out_end);
    return c != out_end ? c : snap(0.5 * (a + b)) != 0.5 * (a + b) ? snap(0.5 * (a + b)) : out_end;
  };

  IntervalSet out;
  std::size_t i = 0;
  while (i < xs.size()) {
    if (!pv[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < xs.size() && pv[j + 1]) ++j;
    OpenInterval iv;
    if (i == 0) {
      iv.lo = lo;
      iv.lo_cut = true;
    } else {
      iv.lo = locate(xs[i - 1], xs[i], false);
    }
    if (j + 1 == xs.size()) {
      iv.hi = hi;
      iv.hi_cut = true;
    } else {
      iv.hi = locate(xs[j], xs[j + 1], true);
    }
    if (iv.lo < iv.hi) out.parts.push_back(iv);
    i = j + 1;
  }
  if (!out.parts.empty() && out.parts.front().lo_cut)
    out.warnings.push_back("window boundary " + std::to_string(lo) + " cuts a component of V");
  if (!out.parts.empty() && out.parts.back().hi_cut)
    out.warnings.push_back("window boundary " + std::to_string(hi) + " cuts a component of V");
  return out;
}

}  // namespace freeconv
