// One pass/fail line per acceptance criterion. Exit status is nonzero when any fails.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "freeconv/reference.hpp"
#include "freeconv/regularity.hpp"

using namespace freeconv;
using namespace freeconv::test;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

void require(Outcome& o, bool ok, const std::string& what) {
  if (!ok) {
    o.pass = false;
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
  }
}

void note(Outcome& o, const std::string& what) { o.detail += (o.detail.empty() ? "" : "; ") + what; }

double sup_error(const ConvolutionModel& m, double lo, double hi, int n,
                 const std::function<double(double)>& oracle) {
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = lo + (hi - lo) * i / (n - 1);
    worst = std::max(worst, std::abs(density_at(m, s) - oracle(s)));
  }
  return worst;
}

Outcome semicircle_self_check() {
  Outcome o;
  const auto m = semicircle_model(1.0);
  const double err = sup_error(m, -1.9, 1.9, 512, [](double s) { return semicircle_density(1.0, s); });
  note(o, "sup error " + fmt("%.2e", err));
  require(o, err < 1e-6, "sup error < 1e-6");
  const auto st = support_structure(m, -3.0, 3.0);
  require(o, st.components.size() == 1, "one support component");
  if (st.components.size() == 1) {
    const auto& c = st.components.front();
    note(o, "edges " + fmt("%.12g", c.lo) + ", " + fmt("%.12g", c.hi));
    require(o, std::abs(c.lo + 2.0) < 1e-6 && std::abs(c.hi - 2.0) < 1e-6, "edges at -2, 2 to 1e-6");
  }
  return o;
}

Outcome marchenko_pastur() {
  Outcome o;
  for (double t : {0.5, 1.0, 2.0}) {
    const auto m = mp_model(t);
    const double a = std::pow(1 - std::sqrt(t), 2), b = std::pow(1 + std::sqrt(t), 2);
    const double inset = 0.05 * (b - a);
    const double err = sup_error(m, a + inset, b - inset, 512,
                                 [t](double s) { return marchenko_pastur_density(t, s).density; });
    note(o, "t=" + fmt("%g", t) + " sup error " + fmt("%.2e", err));
    require(o, err < 1e-6, "t=" + fmt("%g", t) + " sup error < 1e-6");
  }
  const auto atoms = atoms_of_convolution(mp_model(0.5));
  double mass = 0.0;
  int found = 0;
  for (const auto& a : atoms.atoms)
    if (a.mass > 0.0) {
      ++found;
      mass = a.mass;
      require(o, a.location == 0.0, "atom located at 0");
    }
  note(o, "t=0.5 atom mass " + fmt("%.12g", mass));
  require(o, found == 1 && std::abs(mass - 0.5) < 1e-8, "t=0.5 atom mass 0.5 to 1e-8");
  return o;
}

Outcome cauchy_reduction() {
  Outcome o;
  const auto phi = PhiDescriptor::cauchy(0.0, 1.0);
  const std::vector<std::pair<std::string, MeasureRep>> nus = {{"Bernoulli", bernoulli()},
                                                               {"uniform[0,1]", uniform01()}};
  for (const auto& [name, nu] : nus) {
    const ConvolutionModel m(phi, nu);
    const double err =
        sup_error(m, -5.0, 5.0, 512, [&nu = nu](double s) { return cauchy_poisson_density(1.0, nu, s); });
    note(o, name + " sup error " + fmt("%.2e", err));
    require(o, err < 1e-6, name + " sup error < 1e-6");
  }
  return o;
}

Outcome example_atom_on_uniform() {
  Outcome o;
  const auto m = mp_model(0.2, atom_on_uniform(0.2));
  const auto atoms = atoms_of_convolution(m);
  int found = 0;
  for (const auto& a : atoms.atoms)
    if (a.mass > 0.0) {
      ++found;
      note(o, "atom " + fmt("%.12g", a.location) + " mass " + fmt("%.12g", a.mass));
      require(o, std::abs(a.location - 0.5) < 1e-8 && std::abs(a.mass - 0.2) < 1e-8,
              "atom at 0.5 with mass 0.2");
    }
  require(o, found == 1, "exactly one atom");
  const double h = h_map(m, 0.5);
  note(o, "h(alpha) " + fmt("%.12g", h));
  require(o, std::abs(h - 0.5) < 1e-8, "h(alpha) = alpha to 1e-8");
  const auto op = omega_prime_at(m, 0.5);
  note(o, "omega' " + op.value.to_string());
  require(o, op.value.is_finite() && std::abs(op.value.value() - 2.0) < 1e-6, "omega' = 2 to 1e-6");
  const auto c = classify_boundary_point(m, 0.5);
  require(o, c.status == Classification::Status::boundary && c.point.has_value(), "classified");
  if (c.point) {
    const auto r = analyticity_report(m, *c.point);
    note(o, "analytic " + std::string(r.analytic ? (*r.analytic ? "true" : "false") : "unknown"));
    require(o, r.analytic.value_or(false), "analytic");
  }
  return o;
}

Outcome example_quadratic() {
  Outcome o;
  const auto m = mp_model(1.0, quadratic_on_m1_2());
  const auto c = classify_boundary_point(m, 0.0);
  require(o, c.status == Classification::Status::boundary && c.point.has_value(), "alpha=0 classified");
  if (!c.point) return o;
  const auto& p = *c.point;
  require(o, p.kind == BoundaryKind::B, "type B");
  const double i1 = p.cert.I1.value(), i4 = p.cert.I4.value();
  note(o, "type " + to_string(p.kind) + " I1 " + fmt("%.12g", i1) + " I4 " + fmt("%.12g", i4));
  require(o, std::abs(i1 - 1.0) < 1e-8, "I1 = 1 to 1e-8");
  require(o, std::abs(i4 - 4.0 / 9) < 1e-8, "I4 = 4/9 to 1e-8");
  const double s0 = p.image;
  note(o, "s0 " + fmt("%.12g", s0));
  require(o, std::abs(s0 - 2.0 / 3) < 1e-6, "s0 = 2/3 to 1e-6");
  const double p0 = density_at(m, s0), pl = density_at(m, s0 - 0.2), pr = density_at(m, s0 + 0.2);
  note(o, "p(s0) " + fmt("%.2e", p0) + " p(s0-0.2) " + fmt("%.3g", pl) + " p(s0+0.2) " + fmt("%.3g", pr));
  require(o, p0 < 1e-6, "p(s0) < 1e-6");
  require(o, pl > 1e-3 && pr > 1e-3, "p(s0 +- 0.2) > 1e-3");
  return o;
}

Outcome example_tails() {
  Outcome o;
  const auto m = mp_model(0.5, quadratic_with_tails());
  const auto c = classify_boundary_point(m, 0.0);
  require(o, c.status == Classification::Status::boundary && c.point && c.point->kind == BoundaryKind::C,
          "alpha=0 type C");
  const double lo = -8.0, hi = 8.0;
  const auto st = support_structure(m, lo, hi);
  require(o, st.zero_points.size() == 1, "unique zero");
  if (st.zero_points.size() == 1) {
    const double s0 = st.zero_points.front().second.image;
    note(o, "zero at " + fmt("%.12g", s0));
    require(o, std::abs(s0 - 0.5) < 1e-6, "zero at 0.5 to 1e-6");
  }
  const bool whole = st.components.size() == 1 && st.components.front().lo_cut &&
                     st.components.front().hi_cut && st.components.front().lo == lo &&
                     st.components.front().hi == hi;
  note(o, std::to_string(st.components.size()) + " component(s)");
  require(o, whole, "support is the whole window");
  const auto op = omega_prime_at(m, 0.0);
  note(o, "omega' " + op.value.to_string());
  require(o, op.value.is_finite() && std::abs(op.value.value() - 2.0) < 1e-4, "omega' = 2 to 1e-4");
  return o;
}

PhiDescriptor attracted_sigma_phi() {
  return PhiDescriptor::levy_hincin(
      0.0, MeasureRep({}, {DensityPiece::power_tail(-kInf, -1.0, 1.0, 3.0),
                           DensityPiece::uniform(-1.0, 1.0, 1.0),
                           DensityPiece::power_tail(1.0, kInf, 1.0, 3.0)}));
}

Outcome property_h_verdicts() {
  Outcome o;
  const auto attracted = property_H(attracted_sigma_phi());
  const auto stable = property_H(PhiDescriptor::stable(0.5, 0.0));
  note(o, "attracted " + to_string(attracted) + ", stable(0.5) " + to_string(stable));
  require(o, attracted.kind == PropertyHVerdict::Kind::holds, "attracted sigma holds");
  require(o, stable.kind == PropertyHVerdict::Kind::holds, "stable a=0.5 holds");
  for (double t : {0.25, 0.5, 1.0, 2.0, 5.0}) {
    const auto v = property_H(mp_phi(t));
    require(o, v.kind == PropertyHVerdict::Kind::fails && v.detail == "finite-variance",
            "MP t=" + fmt("%g", t) + " fails(finite-variance), got " + to_string(v));
  }
  note(o, "MP t in {0.25, 0.5, 1, 2, 5} fail(finite-variance)");
  return o;
}

Outcome inversion_suite() {
  Outcome o;
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_round = 0.0, worst_expand = 0.0, worst_lip = 0.0, worst_oracle = 0.0;
  int probes = 0, h_violations = 0, oracle_probes = 0;
  for (int k = 0; k < 5; ++k) {
    const auto nm = random_model(rng, k);
    const auto& m = nm.model;
    for (int i = 0; i < 200; ++i, ++probes) {
      const cplx w(8 * u(rng) - 4, 1e-3 + 3 * u(rng));
      const cplx z = omega(m, w);
      worst_round = std::max(worst_round, std::abs(H_eval(m, z) - w));
      const cplx w2(8 * u(rng) - 4, 1e-3 + 3 * u(rng));
      worst_expand = std::max(worst_expand, std::abs(w - w2) / 2 - std::abs(z - omega(m, w2)));
      const cplx z1 = point_in_closure(m, 8 * u(rng) - 4, 1e-3 + u(rng));
      const cplx z2 = point_in_closure(m, 8 * u(rng) - 4, 1e-3 + u(rng));
      worst_lip = std::max(worst_lip, std::abs(H_eval(m, z1) - H_eval(m, z2)) - 2 * std::abs(z1 - z2));
    }
    double prev = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 200; ++i) {
      const double x = -5 + 10.0 * i / 199;
      const double hx = h_map(m, x);
      if (!(hx > prev)) ++h_violations;
      prev = hx;
    }
    for (int i = 0; i < 4; ++i, ++oracle_probes) {
      const cplx w(6 * u(rng) - 3, 0.05 + 2 * u(rng));
      worst_oracle = std::max(worst_oracle, std::abs(omega(m, w) - omega_dense_oracle(m, w)));
    }
  }
  note(o, std::to_string(probes) + " probes: |H(omega(w))-w| " + fmt("%.1e", worst_round) +
              ", expansion slack " + fmt("%.1e", worst_expand) + ", Lipschitz slack " +
              fmt("%.1e", worst_lip) + ", h violations " + std::to_string(h_violations) + ", oracle " +
              fmt("%.1e", worst_oracle) + " on " + std::to_string(oracle_probes));
  require(o, worst_round < 1e-9, "round trip < 1e-9");
  require(o, worst_expand <= 1e-9, "omega expansion");
  require(o, worst_lip <= 1e-9, "H Lipschitz 2");
  require(o, h_violations == 0, "h strictly increasing");
  require(o, worst_oracle < 1e-8, "omega vs dense oracle < 1e-8");
  return o;
}

struct Fixture {
  std::string name;
  ConvolutionModel model;
  double lo, hi;
};

std::vector<Fixture> fixtures() {
  return {
      {"semicircle", semicircle_model(1.0), -3, 3},
      {"MP 0.5", mp_model(0.5), -2, 4},
      {"MP 1", mp_model(1.0), -2, 4},
      {"MP 2", mp_model(2.0), -2, 4},
      {"Cauchy + Bernoulli", ConvolutionModel(PhiDescriptor::cauchy(0, 1), bernoulli()), -5, 5},
      {"atom on uniform", mp_model(0.2, atom_on_uniform(0.2)), -2, 3},
      {"quadratic", mp_model(1.0, quadratic_on_m1_2()), -3, 5},
      {"quadratic-cubic", mp_model(1.0, quadratic_cubic()), -3, 4},
      {"quadratic with tails", mp_model(0.5, quadratic_with_tails()), -5, 5},
      {"attracted + Bernoulli", ConvolutionModel(attracted_sigma_phi(), bernoulli()), -5, 5},
  };
}

Outcome dichotomy_scan() {
  Outcome o;
  int uncovered = 0, points = 0;
  std::string first;
  for (const auto& fx : fixtures()) {
    const auto& m = fx.model;
    for (int i = 0; i < 400; ++i, ++points) {
      const double x = fx.lo + (fx.hi - fx.lo) * i / 399;
      const double f = f_boundary(m, x);
      const auto g = g_eval(m, x);
      bool covered;
      if (f > m.zero_threshold(x)) {
        covered = g.is_pos_inf() || (g.is_finite() && g.value() > 1.0);
      } else {
        const auto c = classify_boundary_point(m, x);
        covered = c.status == Classification::Status::boundary ||
                  (g.is_finite() && g.value() <= 1.0 + 1e-6);
      }
      if (!covered) {
        ++uncovered;
        if (first.empty()) first = fx.name + " x=" + fmt("%.6g", x);
      }
    }
  }
  note(o, std::to_string(points) + " points over " + std::to_string(fixtures().size()) +
              " fixtures, uncovered " + std::to_string(uncovered) + (first.empty() ? "" : " (first " + first + ")"));
  require(o, uncovered == 0, "no uncovered points");
  return o;
}

/// Runs of V on a fine grid; a gap of one cell cannot resolve an isolated zero, so it merges.
int brute_count(const ConvolutionModel& m, const SupportStructure& st, double xlo, double xhi) {
  const int n = 6000;
  std::vector<std::pair<double, double>> runs;
  bool in = false;
  int gap = 0;
  for (int i = 0; i < n; ++i) {
    const double x = xlo + (xhi - xlo) * i / (n - 1);
    if (in_V(m, x)) {
      if (!in && !runs.empty() && gap <= 1)
        runs.back().second = x;
      else if (!in)
        runs.push_back({x, x});
      runs.back().second = x;
      in = true;
      gap = 0;
    } else {
      in = false;
      ++gap;
    }
  }
  int count = static_cast<int>(runs.size());
  const double step = (xhi - xlo) / (n - 1);
  for (const auto& a : st.atoms.atoms) {
    if (!(a.mass > 0.0)) continue;
    bool inside = false;
    for (const auto& r : runs) inside |= a.alpha >= r.first - step && a.alpha <= r.second + step;
    if (!inside) ++count;
  }
  return count;
}

Outcome component_bound_check() {
  Outcome o;
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int bound_failures = 0, count_mismatch = 0, cut = 0;
  std::string counts;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<DensityPiece> sp;
    std::vector<Atom> sa;
    double left = -2.0;
    const int ns = 1 + trial % 2;
    for (int j = 0; j < ns; ++j) {
      const double a = left + 0.3 * u(rng), b = a + 0.3 + 0.7 * u(rng);
      sp.push_back(DensityPiece::uniform(a, b, (0.1 + 0.4 * u(rng)) / (b - a)));
      left = b + 0.5;
    }
    if (trial % 3 == 0) sa.push_back({left + 0.5, 0.1 + 0.3 * u(rng)});
    const MeasureRep sigma(sa, sp);
    std::vector<Atom> na;
    std::vector<DensityPiece> np;
    double pos = -3.0;
    const int nn = 1 + trial % 3;
    for (int j = 0; j < nn; ++j) {
      if ((trial + j) % 2 == 0) {
        na.push_back({pos, 0.2 + u(rng)});
        pos += 1.0 + 1.5 * u(rng);
      } else {
        const double b = pos + 0.3 + u(rng);
        np.push_back(DensityPiece::uniform(pos, b, (0.2 + u(rng)) / (b - pos)));
        pos = b + 1.0 + 1.5 * u(rng);
      }
    }
    const auto nu = normalized(MeasureRep(na, np));
    const ConvolutionModel m(PhiDescriptor::levy_hincin(u(rng) - 0.5, sigma), nu);
    const double lo = -40.0, hi = 40.0;
    const auto rep = support_report(m, lo, hi);
    const auto st = support_structure(m, lo, hi);
    for (const auto& c : rep.components) cut += c.lo_cut || c.hi_cut;
    if (!(rep.count <= rep.bound)) ++bound_failures;
    const double xlo = h_inverse(m, lo), xhi = h_inverse(m, hi);
    const int brute = brute_count(m, st, xlo, xhi);
    if (brute != rep.count) ++count_mismatch;
    counts += (counts.empty() ? "" : " ") + std::to_string(rep.count) + "/" + std::to_string(rep.bound) +
              (brute != rep.count ? "(brute " + std::to_string(brute) + ")" : "");
  }
  note(o, "count/bound " + counts);
  require(o, bound_failures == 0, "bound holds");
  require(o, count_mismatch == 0, "brute recount matches");
  require(o, cut == 0, "supports inside the window");
  return o;
}

Outcome moment_checks() {
  Outcome o;
  const auto m = mp_model(1.0);
  const auto st = support_structure(m, -1.0, 6.0);
  require(o, st.components.size() == 1, "one component");
  if (st.components.size() != 1) return o;
  const double a = st.components.front().lo, b = st.components.front().hi;
  // s = a + (b - a)(1 - cos th)/2 absorbs inverse square-root edges.
  const auto law_moment = [&](int k) {
    const auto f = [&](double th) {
      const double s = a + 0.5 * (b - a) * (1 - std::cos(th));
      return std::pow(s, k) * density_at(m, s) * 0.5 * (b - a) * std::sin(th);
    };
    double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, kPi, 12, 1e-12);
    for (const auto& at : st.atoms.atoms) v += std::pow(at.location, k) * at.mass;
    return v;
  };
  const double m0 = law_moment(0), m1 = law_moment(1), m2 = law_moment(2);
  const double mean = m1 / m0, var = m2 / m0 - mean * mean;
  const auto& triple = m.phi().levy();
  const double mean_expect = triple.gamma + freeconv::moment(triple.sigma, 1).value();
  const double var_expect = total_mass(triple.sigma) + freeconv::moment(triple.sigma, 2).value();
  note(o, "mass " + fmt("%.8f", m0) + " mean " + fmt("%.8f", mean) + " (expect " + fmt("%g", mean_expect) +
              ") variance " + fmt("%.8f", var) + " (expect " + fmt("%g", var_expect) + ")");
  require(o, std::abs(mean - 1.0) < 1e-4 && std::abs(mean - mean_expect) < 1e-4, "mean 1 to 1e-4");
  require(o, std::abs(var - 1.0) < 1e-3 && std::abs(var - var_expect) < 1e-3, "variance 1 to 1e-3");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"semicircle self-check", semicircle_self_check},
      {"Marchenko-Pastur oracle", marchenko_pastur},
      {"Cauchy reduction", cauchy_reduction},
      {"atom on uniform regression", example_atom_on_uniform},
      {"quadratic nu regression", example_quadratic},
      {"quadratic nu with tails regression", example_tails},
      {"property (H) verdicts", property_h_verdicts},
      {"global inversion suite", inversion_suite},
      {"boundary dichotomy scan", dichotomy_scan},
      {"component-count bound", component_bound_check},
      {"moment checks", moment_checks},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
