#include "freeconv/transform.hpp"

#include <cmath>
#include <cstdio>

#include "freeconv/errors.hpp"

namespace freeconv {

namespace {

constexpr double kUnit = 1.0;
// s_mu exists when g0 <= 1; values within this band of 1 count as equality.
constexpr double kTie = 1e-12;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

cplx stable_closed_form(double a, double theta, cplx z) {
  const cplx i(0.0, kUnit);
  if (a == 2.0) return 1.0 / z;
  if (a == 1.0) return 2.0 * theta * std::log(z) - i * kPi * (1.0 + theta);
  const cplx i_pow = std::polar(1.0, kPi * (a - 1.0) / 2.0);
  const cplx z_pow = std::exp((1.0 - a) * std::log(z));
  return -(i + theta * std::tan(a * kPi / 2.0)) * i_pow * z_pow;
}

}  // namespace

PhiDescriptor PhiDescriptor::levy_hincin(double gamma, MeasureRep sigma, bool allow_degenerate) {
  if (!std::isfinite(gamma)) throw ValidationError("gamma must be finite");
  if (sigma.is_zero() && !allow_degenerate)
    throw ValidationError("Levy measure is zero: mu is degenerate");
  PhiDescriptor d;
  d.kind_ = Kind::levy_hincin;
  d.triple_ = LevyTriple{gamma, std::move(sigma)};
  if (!nevanlinna_probe_ok(d)) throw NumericalError("phi fails the Nevanlinna probe check");
  return d;
}

PhiDescriptor PhiDescriptor::stable(double a, double theta) {
  if (!(a > 0.0 && a <= 2.0)) throw ValidationError("stable index a must lie in (0, 2]");
  if (a != 2.0 && !(theta >= -1.0 && theta <= 1.0))
    throw ValidationError("stable asymmetry theta must lie in [-1, 1]");
  PhiDescriptor d;
  d.kind_ = Kind::stable;
  d.a_ = a;
  d.theta_ = a == 2.0 ? 0.0 : theta;
  if (!nevanlinna_probe_ok(d)) throw NumericalError("phi fails the Nevanlinna probe check");
  return d;
}

PhiDescriptor PhiDescriptor::cauchy(double location, double scale) {
  if (!std::isfinite(location)) throw ValidationError("Cauchy location must be finite");
  if (!(scale > 0.0 && std::isfinite(scale))) throw ValidationError("Cauchy scale must be positive");
  PhiDescriptor d;
  d.kind_ = Kind::cauchy;
  d.location_ = location;
  d.scale_ = scale;
  return d;
}

const LevyTriple& PhiDescriptor::levy() const {
  if (!is_levy()) throw ValidationError("operation needs Levy-Hincin data");
  return triple_;
}

std::string PhiDescriptor::describe() const {
  switch (kind_) {
    case Kind::levy_hincin: {
      std::string s = "levy_hincin(gamma=" + fmt(triple_.gamma) + ", sigma=";
      bool first = true;
      for (const auto& a : triple_.sigma.atoms()) {
        s += (first ? "" : " + ") + fmt(a.mass) + "*delta(" + fmt(a.location) + ")";
        first = false;
      }
      for (const auto& p : triple_.sigma.pieces()) {
        s += (first ? "" : " + ") + p.describe();
        first = false;
      }
      return s + (first ? "0)" : ")");
    }
    case Kind::stable:
      return "stable(a=" + fmt(a_) + ", theta=" + fmt(theta_) + ", t=" + fmt(factor_) + ")";
    default:
      return "cauchy(location=" + fmt(location_) + ", scale=" + fmt(scale_) + ")";
  }
}

cplx F_transform(const MeasureRep& nu, cplx z) {
  if (!is_probability(nu)) throw ValidationError("F-transform needs a probability measure");
  return 1.0 / cauchy_transform(nu, z);
}

cplx phi_eval(const PhiDescriptor& phi, cplx w) {
  if (!(w.imag() > 0.0)) throw ValidationError("phi needs Im w > 0");
  switch (phi.kind()) {
    case PhiDescriptor::Kind::levy_hincin: {
      const auto& tr = phi.levy();
      if (tr.sigma.is_zero()) return tr.gamma;
      return tr.gamma + nevanlinna_kernel_integral(tr.sigma, w);
    }
    case PhiDescriptor::Kind::stable:
      return phi.factor() * stable_closed_form(phi.a(), phi.theta(), w);
    default:
      return cplx(phi.location(), -phi.scale());
  }
}

PhiDescriptor scale_semigroup(const PhiDescriptor& phi, double t) {
  if (!(t > 0.0 && std::isfinite(t))) throw ValidationError("semigroup time t must be positive");
  PhiDescriptor d = phi;
  switch (phi.kind()) {
    case PhiDescriptor::Kind::levy_hincin:
      d.triple_.gamma = t * phi.triple_.gamma;
      if (!phi.triple_.sigma.is_zero()) d.triple_.sigma = phi.triple_.sigma.scaled(t);
      break;
    case PhiDescriptor::Kind::stable:
      d.factor_ = t * phi.factor_;
      break;
    default:
      d.location_ = t * phi.location_;
      d.scale_ = t * phi.scale_;
  }
  return d;
}

bool nevanlinna_probe_ok(const PhiDescriptor& phi) {
  for (double x : {-10.0, -1.0, -0.1, 0.0, 0.1, 1.0, 10.0}) {
    for (double y : {1e-3, 1.0, 1e3}) {
      const cplx v = phi_eval(phi, cplx(x, y));
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
      if (v.imag() > 1e-9 * (1.0 + std::abs(v))) return false;
    }
  }
  return true;
}

SMu s_mu(const LevyTriple& triple) {
  if (triple.sigma.is_zero()) throw ValidationError("s_mu needs a nondegenerate Levy measure");
  SMu out;
  out.g0 = weighted_quadratic_integral(triple.sigma, 0.0);
  if (out.g0.is_undecided()) {
    out.undecided = true;
    out.reason = out.g0.reason();
    return out;
  }
  if (out.g0.is_pos_inf() || out.g0.value() > 1.0 + kTie) return out;
  out.exists = true;
  out.location = triple.gamma + real_cauchy_integral(triple.sigma, 0.0).value();
  const double g0 = out.g0.value();
  out.atom_mass = g0 < 1.0 - kTie ? 1.0 - g0 : 0.0;
  return out;
}

ExtReal variance_of_mu(const LevyTriple& triple) {
  return ExtReal(total_mass(triple.sigma)) + moment(triple.sigma, 2);
}

ExtReal mean_of_mu(const LevyTriple& triple) {
  return ExtReal(triple.gamma) + moment(triple.sigma, 1);
}

std::optional<double> phi_real_boundary(const LevyTriple& triple, double w) {
  if (triple.sigma.is_zero()) return triple.gamma;
  const auto k1 = real_cauchy_integral(triple.sigma, w);
  if (!k1.is_finite()) return std::nullopt;
  return triple.gamma - w * total_mass(triple.sigma) + (1.0 + w * w) * k1.value();
}

}  // namespace freeconv
