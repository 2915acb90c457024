#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "freeconv/errors.hpp"
#include "freeconv/reference.hpp"
#include "freeconv/regularity.hpp"

using namespace freeconv;
using namespace freeconv::test;

namespace {

PhiDescriptor attracted_sigma_phi() {
  return PhiDescriptor::levy_hincin(
      0.0, MeasureRep({}, {DensityPiece::power_tail(-kInf, -1.0, 1.0, 3.0),
                           DensityPiece::uniform(-1.0, 1.0, 1.0),
                           DensityPiece::power_tail(1.0, kInf, 1.0, 3.0)}));
}

double trapezoid_mass(const DensityProfile& p) {
  double m = 0.0;
  for (std::size_t i = 1; i < p.samples.size(); ++i)
    m += 0.5 * (p.samples[i].second + p.samples[i - 1].second) *
         (p.samples[i].first - p.samples[i - 1].first);
  return m;
}

}  // namespace

TEST_CASE("density examples") {
  CHECK(density_at(semicircle_model(1.0), 0.0) == doctest::Approx(1 / kPi).epsilon(1e-10));
  CHECK(density_at(mp_model(1.0), 2.0) == doctest::Approx(1 / (2 * kPi)).epsilon(1e-10));
  CHECK(density_at(mp_model(1.0, quadratic_on_m1_2()), 2.0 / 3) < 1e-9);
  CHECK(density_at(semicircle_model(1.0), 3.0) == 0.0);
}

TEST_CASE("density profile examples") {
  SUBCASE("semicircle") {
    const auto p = density_profile(semicircle_model(1.0), -3, 3, 256);
    REQUIRE(p.components.size() == 1);
    CHECK(p.components[0].lo == doctest::Approx(-2).epsilon(1e-9));
    CHECK(p.components[0].hi == doctest::Approx(2).epsilon(1e-9));
    double worst = 0.0;
    for (const auto& [s, d] : p.samples)
      if (std::abs(s) <= 1.9) worst = std::max(worst, std::abs(d - semicircle_density(1, s)));
    CHECK(worst < 1e-6);
    CHECK(p.atoms.empty());
    REQUIRE(p.zero_points.size() == 2);
    CHECK(p.zero_points[0].second.omega_prime.is_pos_inf());
  }
  SUBCASE("Marchenko-Pastur t = 0.5") {
    const double t = 0.5;
    const auto p = density_profile(mp_model(t), -1, 4, 128);
    REQUIRE(p.components.size() == 2);
    CHECK(p.components[0].degenerate());
    CHECK(p.components[0].lo == doctest::Approx(0.0));
    CHECK(p.components[1].lo == doctest::Approx(std::pow(1 - std::sqrt(t), 2)).epsilon(1e-9));
    CHECK(p.components[1].hi == doctest::Approx(std::pow(1 + std::sqrt(t), 2)).epsilon(1e-9));
    REQUIRE(p.atoms.size() == 1);
    CHECK(p.atoms[0].mass == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("quadratic with tails: one component and a single zero at s = t") {
    const double t = 0.5;
    const auto p = density_profile(mp_model(t, quadratic_with_tails()), -4, 4, 64);
    REQUIRE(p.components.size() == 1);
    CHECK(p.components[0].lo_cut);
    CHECK(p.components[0].hi_cut);
    REQUIRE(p.zero_points.size() == 1);
    CHECK(p.zero_points[0].first == doctest::Approx(t).epsilon(1e-9));
    CHECK(p.zero_points[0].second.kind == BoundaryKind::C);
  }
  CHECK_THROWS_AS(density_profile(semicircle_model(1.0), -3, 3, 16), ValidationError);
}

TEST_CASE("classification examples") {
  SUBCASE("type A") {
    const double t = 0.2;
    const auto c = classify_boundary_point(mp_model(t, atom_on_uniform(t)), 0.5);
    REQUIRE(c.status == Classification::Status::boundary);
    CHECK(c.point->kind == BoundaryKind::A);
    CHECK(c.point->omega_prime.value() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(c.point->image == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(c.point->cert.I2.value() == doctest::Approx(2.5));
    CHECK(c.point->cert.I3.value() == doctest::Approx(t));
  }
  SUBCASE("type B") {
    const auto c = classify_boundary_point(mp_model(1.0, quadratic_on_m1_2()), 0.0);
    REQUIRE(c.status == Classification::Status::boundary);
    CHECK(c.point->kind == BoundaryKind::B);
    CHECK(std::abs(c.point->cert.I1.value() - 1.0) < 1e-12);
    CHECK(std::abs(c.point->cert.I4.value() - 4.0 / 9) < 1e-12);
    CHECK(std::abs(*c.point->cert.g_star + 0.5) < 1e-12);
    CHECK(c.point->omega_prime.value() == doctest::Approx(1.8).epsilon(1e-12));
    CHECK(c.point->image == doctest::Approx(2.0 / 3).epsilon(1e-12));
  }
  SUBCASE("type C") {
    const auto c = classify_boundary_point(mp_model(0.5, quadratic_with_tails()), 0.0);
    REQUIRE(c.status == Classification::Status::boundary);
    CHECK(c.point->kind == BoundaryKind::C);
    CHECK(std::abs(c.point->cert.I1.value() - 1.0) < 1e-12);
    CHECK(std::abs(c.point->cert.product.value() - 0.5) < 1e-12);
    CHECK(c.point->omega_prime.value() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(c.point->image == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("interior and edge") {
    CHECK(classify_boundary_point(semicircle_model(1.0), 0.2).status ==
          Classification::Status::interior_of_V);
    const auto e = classify_boundary_point(semicircle_model(1.0), 1.0);
    REQUIRE(e.status == Classification::Status::boundary);
    CHECK(e.point->kind == BoundaryKind::B);
    CHECK(e.point->tie);
  }
}

TEST_CASE("atoms of the convolution") {
  const double t = 0.2;
  const auto a1 = atoms_of_convolution(mp_model(t, atom_on_uniform(t)));
  REQUIRE(a1.atoms.size() == 1);
  CHECK(a1.atoms[0].location == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(a1.atoms[0].mass == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(std::abs(a1.atoms[0].mass_via_omega_prime.value() - a1.atoms[0].mass) < 1e-8);

  const auto a2 = atoms_of_convolution(mp_model(0.5));
  REQUIRE(a2.atoms.size() == 1);
  CHECK(a2.atoms[0].location == 0.0);
  CHECK(a2.atoms[0].mass == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(a2.atoms[0].mass_via_omega_prime.value() - 0.5) < 1e-8);

  const auto a3 = atoms_of_convolution(semicircle_model(1.0, bernoulli()));
  CHECK(a3.atoms.empty());
  CHECK(a3.no_atoms);

  SUBCASE("equality case") {
    // nu({0}) + mu({0}) = 0.5 + 0.5 = 1
    const MeasureRep nu({{0.0, 0.5}}, {DensityPiece::uniform(1.0, 2.0, 0.5)});
    const auto a = atoms_of_convolution(mp_model(0.5, nu));
    REQUIRE(a.atoms.size() == 1);
    CHECK(a.atoms[0].boundary_equality);
    CHECK(a.atoms[0].mass == 0.0);
  }
}

TEST_CASE("property (H) examples") {
  const auto h1 = property_H(attracted_sigma_phi());
  CHECK(h1.kind == PropertyHVerdict::Kind::holds);
  for (double t : {0.3, 1.0, 4.0}) {
    const auto h = property_H(mp_phi(t));
    CHECK(h.kind == PropertyHVerdict::Kind::fails);
    CHECK(h.detail == "finite-variance");
  }
  CHECK(property_H(PhiDescriptor::stable(0.5, 0.0)).kind == PropertyHVerdict::Kind::holds);
  CHECK(property_H(PhiDescriptor::stable(1.5, 0.3)).kind == PropertyHVerdict::Kind::holds);
  CHECK(property_H(PhiDescriptor::cauchy(0.0, 1.0)).kind == PropertyHVerdict::Kind::holds);
  const auto sc = property_H(semicircle_phi(1.0));
  CHECK(sc.kind == PropertyHVerdict::Kind::fails);
  CHECK(sc.detail == "finite-variance");

  SUBCASE("asymmetric stable law fails with a witness") {
    const auto h = property_H(PhiDescriptor::stable(0.5, 1.0));
    REQUIRE(h.kind == PropertyHVerdict::Kind::fails);
    REQUIRE(h.witness);
    CHECK(*h.witness >= 0.5 - 1e-9);
  }
  SUBCASE("heavy tails with a gap fail at a gap point") {
    // Infinite second moment, but a wide gap where W(x) < 1.
    const auto phi = PhiDescriptor::levy_hincin(
        0.0, MeasureRep({}, {DensityPiece::power_tail(-kInf, -5.0, 0.1, 3.0),
                             DensityPiece::power_tail(5.0, kInf, 0.1, 3.0)}));
    const auto h = property_H(phi);
    REQUIRE(h.kind == PropertyHVerdict::Kind::fails);
    REQUIRE(h.witness);
    CHECK(std::abs(*h.witness) < 5.0);
    CHECK(weighted_quadratic_integral(phi.levy().sigma, *h.witness).value() <= 1.0);
  }
  SUBCASE("bounded support with infinite variance is impossible; compact sigma fails") {
    const auto phi = PhiDescriptor::levy_hincin(0.0, MeasureRep({}, {DensityPiece::uniform(-1, 1, 5)}));
    CHECK(property_H(phi).detail == "finite-variance");
  }
  SUBCASE("table sigma is undecided") {
    const auto phi = PhiDescriptor::levy_hincin(
        0.0, MeasureRep({}, {DensityPiece::power_tail(-kInf, -1.0, 1.0, 3.0),
                             DensityPiece::table({-1, 0, 1}, {1, 0.5, 1}, false),
                             DensityPiece::power_tail(1.0, kInf, 1.0, 3.0)}));
    CHECK(property_H(phi).kind == PropertyHVerdict::Kind::undecided);
  }
}

TEST_CASE("support report examples") {
  const auto r1 = support_report(mp_model(1.0), -1, 5);
  CHECK(r1.count == 1);
  CHECK(r1.components[0].lo == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(r1.components[0].hi == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(r1.bound_satisfied);
  const auto r2 = support_report(mp_model(0.5), -1, 5);
  CHECK(r2.count == 2);
  CHECK(r2.bound_satisfied);
  const auto r4 = support_report(mp_model(0.5, quadratic_with_tails()), -4, 4);
  CHECK(r4.count == 1);
  CHECK(r4.bound_satisfied);
  // n(nu) = 1, n(R \ supp nu) = 2, n(sigma) = 1, mu({s_mu}) = 0.5.
  CHECK(component_bound(mp_model(0.5)) == 2 + 1 + 4 * 2 + 2);
  CHECK(complement_count(quadratic_with_tails()) == 0);
}

TEST_CASE("analyticity reports") {
  SUBCASE("type A, meromorphic nu") {
    const double t = 0.2;
    const auto m = mp_model(t, atom_on_uniform(t));
    const auto c = classify_boundary_point(m, 0.5);
    const auto r = analyticity_report(m, *c.point);
    CHECK(r.isolated);
    REQUIRE(r.analytic.has_value());
    CHECK(*r.analytic);
  }
  SUBCASE("type B, nu analytic") {
    const auto m = mp_model(1.0, quadratic_on_m1_2());
    const auto r = analyticity_report(m, *classify_boundary_point(m, 0.0).point);
    REQUIRE(r.analytic.has_value());
    CHECK(*r.analytic);
    REQUIRE(r.identity_residual);
    CHECK(*r.identity_residual < 1e-8);
  }
  SUBCASE("type B, nu not analytic") {
    const auto m = mp_model(0.1, quadratic_cubic());
    const auto c = classify_boundary_point(m, 0.0);
    REQUIRE(c.status == Classification::Status::boundary);
    CHECK(c.point->kind == BoundaryKind::B);
    const auto r = analyticity_report(m, *c.point);
    REQUIRE(r.analytic.has_value());
    CHECK_FALSE(*r.analytic);
  }
  SUBCASE("type C") {
    const auto m = mp_model(0.5, quadratic_with_tails());
    const auto c = classify_boundary_point(m, 0.0);
    const auto r = analyticity_report(m, *c.point);
    REQUIRE(r.analytic.has_value());
    CHECK(*r.analytic);
    REQUIRE(r.identity_residual);
    CHECK(*r.identity_residual < 1e-8);
    CHECK(c.point->image == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("omega' infinite") {
    const auto m = semicircle_model(1.0);
    const auto r = analyticity_report(m, *classify_boundary_point(m, 1.0).point);
    REQUIRE(r.analytic.has_value());
    CHECK_FALSE(*r.analytic);
  }
}

TEST_CASE("diagnosis record") {
  const auto d = diagnose(mp_model(1.0, quadratic_on_m1_2()), -4, 6);
  CHECK(d.property_H.detail == "finite-variance");
  CHECK(d.variance_mu.value() == doctest::Approx(1.0));
  // Both outer edges of V and the interior zero at 0.
  REQUIRE(d.zeros.size() == 3);
  REQUIRE(d.analyticity_reports.size() == 3);
  std::size_t inner = 3;
  for (std::size_t i = 0; i < d.zeros.size(); ++i)
    if (d.zeros[i].alpha == 0.0) inner = i;
  REQUIRE(inner < 3);
  CHECK(d.zeros[inner].kind == BoundaryKind::B);
  CHECK(d.zeros[inner].image == doctest::Approx(2.0 / 3));
  CHECK(d.analyticity_reports[inner].analytic.value_or(false));
  for (std::size_t i = 0; i < d.zeros.size(); ++i)
    if (i != inner) CHECK_FALSE(d.analyticity_reports[i].analytic.value_or(true));
  CHECK(d.bound_satisfied);
  // Only the interior zero has finite omega'; the curve is tangent there.
  REQUIRE(d.tangency.size() == 1);
  CHECK(d.tangency[0].alpha == 0.0);
  REQUIRE(d.tangency[0].ratios.size() == 3);
  CHECK(d.tangency[0].ratios[2].second < 0.2 * d.tangency[0].ratios[0].second);
  REQUIRE(d.expectations.size() == 1);
  CHECK(d.expectations[0] == "density uniformly bounded (nu compactly supported)");

  const auto dh = diagnose(ConvolutionModel(attracted_sigma_phi(), bernoulli()), -6, 6);
  CHECK(dh.property_H.kind == PropertyHVerdict::Kind::holds);
  CHECK(dh.component_count == 1);
  CHECK(std::find(dh.expectations.begin(), dh.expectations.end(),
                  "support unbounded (property (H))") != dh.expectations.end());
}

TEST_CASE("diagnosis expectations between atoms") {
  const auto d = diagnose(mp_model(0.25, MeasureRep({{-1.0, 0.5}, {2.0, 0.5}}, {})), -4, 6);
  REQUIRE(d.atoms.size() == 2);
  CHECK(d.atoms[0].mass == doctest::Approx(0.25));
  REQUIRE(!d.expectations.empty());
  CHECK(d.expectations[0] == "density not identically zero between atoms -1 and 2 (observed: yes)");
  CHECK(d.tangency.size() >= 2);
}

TEST_CASE("tie band reports both one-sided verdicts") {
  // nu({0}) + mu_t({0}) = 1 exactly.
  const auto c = classify_boundary_point(
      mp_model(0.5, MeasureRep({{0.0, 0.5}}, {DensityPiece::uniform(1.0, 3.0, 0.25)})), 0.0);
  REQUIRE(c.point);
  CHECK(c.point->tie);
  CHECK(c.point->omega_prime.is_pos_inf());
  CHECK((c.point->omega_prime_below.is_pos_inf() ||
         c.point->omega_prime_below.value() > 1e6));
}

TEST_CASE("property: normalization and mean") {
  struct Case {
    ConvolutionModel m;
    double mean;
  };
  const double t = 0.7;
  std::vector<Case> cases = {
      {mp_model(t, uniform01()), t + 0.5},
      {semicircle_model(t, bernoulli()), 0.0},
      {mp_model(0.3, atom_on_uniform(0.3)), 0.3 + 0.5},
      {mp_model(1.0, quadratic_on_m1_2()), 1.0 + 1.25},
  };
  for (const auto& c : cases) {
    const auto p = density_profile(c.m, -6, 10, 1500);
    double mass = trapezoid_mass(p), mean = 0.0;
    for (const auto& a : p.atoms) mass += a.mass;
    CHECK(std::abs(mass - 1.0) < 1e-3);
    for (std::size_t i = 1; i < p.samples.size(); ++i) {
      const auto& [s0, p0] = p.samples[i - 1];
      const auto& [s1, p1] = p.samples[i];
      mean += 0.5 * (s0 * p0 + s1 * p1) * (s1 - s0);
    }
    for (const auto& a : p.atoms) mean += a.mass * a.location;
    CHECK(std::abs(mean - c.mean) < 1e-4);
  }
}

TEST_CASE("property: shift equivariance") {
  const double c = 1.75;
  const auto a = density_profile(mp_model(0.8, uniform01()), -3, 5, 64);
  const auto b = density_profile(mp_model(0.8, uniform01().translated(c)), -3 + c, 5 + c, 64);
  REQUIRE(a.samples.size() == b.samples.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    worst = std::max(worst, std::abs(a.samples[i].first + c - b.samples[i].first));
    worst = std::max(worst, std::abs(a.samples[i].second - b.samples[i].second));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("property: semigroup consistency") {
  // MP(1) with nu = MP(2) as a table must reproduce MP(3).
  const double t = 2.0;
  const auto curve = marchenko_pastur_curve(t);
  std::vector<double> s, v;
  // Linear interpolation at the square-root edges of the table limits accuracy there.
  const int n = 4800;
  for (int i = 0; i <= n; ++i) {
    const double x = curve.lo + (curve.hi - curve.lo) * (0.5 - 0.5 * std::cos(kPi * i / n));
    s.push_back(x);
    v.push_back(curve.density(x));
  }
  const MeasureRep raw({}, {DensityPiece::table(s, v, true)});
  const auto nu = normalized(raw);
  const auto p = density_profile(mp_model(1.0, nu), -1, 12, 200);
  double worst = 0.0;
  for (const auto& [x, d] : p.samples) worst = std::max(worst, std::abs(d - marchenko_pastur_density(3.0, x).density));
  CHECK(worst < 1e-3);
}

TEST_CASE("property: classification coverage and atom rule") {
  std::vector<ConvolutionModel> models = {semicircle_model(1.0), mp_model(0.25),
                                          mp_model(0.2, atom_on_uniform(0.2)),
                                          mp_model(1.0, quadratic_on_m1_2()),
                                          mp_model(0.6, bernoulli())};
  for (const auto& m : models) {
    for (int i = 0; i <= 80; ++i) {
      const double x = -3 + 6.0 * i / 80;
      if (f_boundary(m, x) != 0.0 || structurally_in_V(m, x)) continue;
      const auto c = classify_boundary_point(m, x);
      CAPTURE(x);
      CHECK(c.status == Classification::Status::boundary);
    }
    for (const auto& a : atoms_of_convolution(m).atoms)
      if (a.mass_via_omega_prime.is_finite())
        CHECK(std::abs(a.mass_via_omega_prime.value() - a.mass) < 1e-8);
  }
}
