#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "freeconv/errors.hpp"
#include "freeconv/regularity.hpp"

namespace freeconv::cli {

namespace {

using json = nlohmann::json;

constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Checker {
  std::vector<std::string> errors;
  void fail(const std::string& path, const std::string& msg) { errors.push_back(path + ": " + msg); }
};

void reject_unknown(const json& j, const std::string& path, std::initializer_list<const char*> keys,
                    Checker& ck) {
  const std::set<std::string> known(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) ck.fail(path + "." + k, "unknown field");
}

std::optional<double> number(const json& j, const std::string& key, const std::string& path,
                             Checker& ck, std::optional<double> fallback = std::nullopt) {
  if (!j.contains(key)) {
    if (!fallback) ck.fail(path + "." + key, "missing");
    return fallback;
  }
  const auto& v = j.at(key);
  if (!v.is_number()) {
    ck.fail(path + "." + key, "expected a number");
    return std::nullopt;
  }
  const double x = v.get<double>();
  if (!std::isfinite(x)) {
    ck.fail(path + "." + key, "must be finite");
    return std::nullopt;
  }
  return x;
}

std::optional<double> endpoint(const json& v, const std::string& path, Checker& ck) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "-inf") return -kInfinity;
    if (s == "inf" || s == "+inf") return kInfinity;
  }
  ck.fail(path, "expected a number, \"-inf\" or \"inf\"");
  return std::nullopt;
}

std::optional<std::vector<double>> number_list(const json& j, const std::string& key,
                                               const std::string& path, Checker& ck) {
  if (!j.contains(key)) {
    ck.fail(path + "." + key, "missing");
    return std::nullopt;
  }
  const auto& v = j.at(key);
  if (!v.is_array()) {
    ck.fail(path + "." + key, "expected a list of numbers");
    return std::nullopt;
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      ck.fail(path + "." + key + "[" + std::to_string(i) + "]", "expected a number");
      return std::nullopt;
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

std::optional<DensityPiece> piece_from(const json& j, const std::string& path, Checker& ck) {
  if (!j.is_object()) {
    ck.fail(path, "expected an object");
    return std::nullopt;
  }
  if (!j.contains("family") || !j.at("family").is_string()) {
    ck.fail(path + ".family", "missing or not a string");
    return std::nullopt;
  }
  const auto family = j.at("family").get<std::string>();
  std::optional<double> lo, hi;
  if (!j.contains("interval") || !j.at("interval").is_array() || j.at("interval").size() != 2) {
    ck.fail(path + ".interval", "expected [lo, hi]");
  } else {
    lo = endpoint(j.at("interval")[0], path + ".interval[0]", ck);
    hi = endpoint(j.at("interval")[1], path + ".interval[1]", ck);
    if (lo && hi && !(*lo < *hi)) ck.fail(path + ".interval", "needs lo < hi");
  }
  const std::size_t before = ck.errors.size();
  std::optional<DensityPiece> piece;
  try {
    if (family == "uniform") {
      reject_unknown(j, path, {"family", "interval", "c"}, ck);
      const auto c = number(j, "c", path, ck);
      if (ck.errors.size() == before && lo && hi) piece = DensityPiece::uniform(*lo, *hi, *c);
    } else if (family == "monomial") {
      reject_unknown(j, path, {"family", "interval", "c", "k", "center"}, ck);
      const auto c = number(j, "c", path, ck);
      const auto k = number(j, "k", path, ck);
      const auto center = number(j, "center", path, ck, 0.0);
      if (k && *k != std::floor(*k)) ck.fail(path + ".k", "must be an integer");
      if (ck.errors.size() == before && lo && hi)
        piece = DensityPiece::monomial(*lo, *hi, *c, static_cast<int>(*k), *center);
    } else if (family == "power_tail") {
      reject_unknown(j, path, {"family", "interval", "c", "p", "origin"}, ck);
      const auto c = number(j, "c", path, ck);
      const auto p = number(j, "p", path, ck);
      const auto origin = number(j, "origin", path, ck, 0.0);
      if (p && *p <= 1.0) ck.fail(path + ".p", "piece mass infinite");
      if (ck.errors.size() == before && lo && hi)
        piece = DensityPiece::power_tail(*lo, *hi, *c, *p, *origin);
    } else if (family == "table") {
      reject_unknown(j, path, {"family", "interval", "s", "values", "analytic"}, ck);
      auto s = number_list(j, "s", path, ck);
      auto v = number_list(j, "values", path, ck);
      bool analytic = false;
      if (j.contains("analytic")) {
        if (j.at("analytic").is_boolean())
          analytic = j.at("analytic").get<bool>();
        else
          ck.fail(path + ".analytic", "expected true or false");
      }
      if (s && v && s->size() != v->size()) ck.fail(path + ".values", "length differs from s");
      if (s && !s->empty() && lo && hi && (s->front() != *lo || s->back() != *hi))
        ck.fail(path + ".interval", "must equal [s[0], s[last]] for a table");
      if (ck.errors.size() == before && lo && hi)
        piece = DensityPiece::table(std::move(*s), std::move(*v), analytic);
    } else {
      ck.fail(path + ".family", "unknown family \"" + family + "\"");
    }
  } catch (const ValidationError& e) {
    ck.fail(path, e.what());
  }
  return piece;
}

std::optional<MeasureRep> measure_from(const json& j, const std::string& path, Checker& ck) {
  if (!j.is_object()) {
    ck.fail(path, "expected an object with atoms and pieces");
    return std::nullopt;
  }
  reject_unknown(j, path, {"atoms", "pieces"}, ck);
  const std::size_t before = ck.errors.size();
  std::vector<Atom> atoms;
  if (j.contains("atoms")) {
    const auto& a = j.at("atoms");
    if (!a.is_array()) ck.fail(path + ".atoms", "expected a list");
    for (std::size_t i = 0; a.is_array() && i < a.size(); ++i) {
      const auto p = path + ".atoms[" + std::to_string(i) + "]";
      if (!a[i].is_object()) {
        ck.fail(p, "expected {\"at\": number, \"mass\": number}");
        continue;
      }
      reject_unknown(a[i], p, {"at", "mass"}, ck);
      const auto at = number(a[i], "at", p, ck);
      const auto mass = number(a[i], "mass", p, ck);
      if (mass && !(*mass > 0.0)) ck.fail(p + ".mass", "must be positive");
      if (at && mass) atoms.push_back({*at, *mass});
    }
  }
  std::vector<DensityPiece> pieces;
  if (j.contains("pieces")) {
    const auto& ps = j.at("pieces");
    if (!ps.is_array()) ck.fail(path + ".pieces", "expected a list");
    for (std::size_t i = 0; ps.is_array() && i < ps.size(); ++i)
      if (auto p = piece_from(ps[i], path + ".pieces[" + std::to_string(i) + "]", ck))
        pieces.push_back(std::move(*p));
  }
  if (ck.errors.size() != before) return std::nullopt;
  try {
    return MeasureRep(std::move(atoms), std::move(pieces));
  } catch (const ValidationError& e) {
    ck.fail(path, e.what());
  }
  return std::nullopt;
}

std::optional<PhiDescriptor> phi_from(const json& j, const std::string& path, Checker& ck) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    ck.fail(path + ".kind", "missing or not a string");
    return std::nullopt;
  }
  const auto kind = j.at("kind").get<std::string>();
  const std::size_t before = ck.errors.size();
  try {
    if (kind == "levy_hincin") {
      reject_unknown(j, path, {"kind", "gamma", "sigma"}, ck);
      const auto gamma = number(j, "gamma", path, ck, 0.0);
      if (!j.contains("sigma")) {
        ck.fail(path + ".sigma", "missing");
        return std::nullopt;
      }
      auto sigma = measure_from(j.at("sigma"), path + ".sigma", ck);
      if (ck.errors.size() == before && sigma) return PhiDescriptor::levy_hincin(*gamma, *sigma);
    } else if (kind == "stable") {
      reject_unknown(j, path, {"kind", "a", "theta"}, ck);
      const auto a = number(j, "a", path, ck);
      const auto theta = number(j, "theta", path, ck, 0.0);
      if (ck.errors.size() == before) return PhiDescriptor::stable(*a, *theta);
    } else if (kind == "cauchy") {
      reject_unknown(j, path, {"kind", "location", "scale"}, ck);
      const auto loc = number(j, "location", path, ck, 0.0);
      const auto scale = number(j, "scale", path, ck);
      if (ck.errors.size() == before) return PhiDescriptor::cauchy(*loc, *scale);
    } else {
      ck.fail(path + ".kind", "unknown kind \"" + kind + "\"");
    }
  } catch (const ValidationError& e) {
    ck.fail(path, e.what());
  }
  return std::nullopt;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
}

void raise(const Checker& ck) {
  if (ck.errors.empty()) return;
  std::string msg;
  for (const auto& e : ck.errors) msg += (msg.empty() ? "" : "\n") + e;
  throw ValidationError(msg);
}

std::string fmt_ext(const ExtReal& v) {
  if (v.is_finite()) return format_number(v.value());
  if (v.is_pos_inf()) return "inf";
  if (v.is_neg_inf()) return "-inf";
  return v.reason().empty() ? "undecided" : "undecided (" + v.reason() + ")";
}

std::string fmt_bool(bool b) { return b ? "true" : "false"; }

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), ',', ';');
  return s;
}

ConvolutionModel model_for(const RunConfig& cfg, double t) {
  return ConvolutionModel(scale_semigroup(cfg.mu, t), cfg.nu, cfg.tol);
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
  if (!f) throw std::filesystem::filesystem_error("cannot write", p, std::error_code());
}

/// Grid evaluation split across threads; values land by index so output is order independent.
std::vector<double> evaluate_grid(const ConvolutionModel& model, const std::vector<double>& s) {
  std::vector<double> p(s.size(), 0.0);
  const unsigned workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<std::exception_ptr> failure(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < s.size(); i += workers) p[i] = density_at(model, s[i]);
      } catch (...) {
        failure[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& f : failure)
    if (f) std::rethrow_exception(f);
  return p;
}

void write_boundary(std::ostringstream& os, const std::string& key, const BoundaryPoint& b) {
  os << key << ": s=" << format_number(b.image) << " alpha=" << format_number(b.alpha)
     << " type=" << to_string(b.kind) << " omega_prime=" << fmt_ext(b.omega_prime)
     << " I1=" << fmt_ext(b.cert.I1) << " I2=" << fmt_ext(b.cert.I2) << " I3=" << fmt_ext(b.cert.I3)
     << " I4=" << fmt_ext(b.cert.I4) << " product=" << fmt_ext(b.cert.product)
     << " margin=" << format_number(b.margin) << " tie=" << fmt_bool(b.tie);
  if (b.tie)
    os << " verdict=equality_within_tolerance omega_prime_below=" << fmt_ext(b.omega_prime_below)
       << " omega_prime_at_equality=inf";
  os << "\n";
}

void write_component(std::ostringstream& os, const std::string& key, const SupportComponent& c) {
  os << key << ": [" << format_number(c.lo) << ", " << format_number(c.hi) << "]";
  if (c.lo_cut) os << " lo_cut";
  if (c.hi_cut) os << " hi_cut";
  os << "\n";
}

void write_atom(std::ostringstream& os, const std::string& key, const ConvolutionAtom& a) {
  os << key << ": location=" << format_number(a.location) << " mass=" << format_number(a.mass)
     << " alpha=" << format_number(a.alpha)
     << " mass_via_omega_prime=" << fmt_ext(a.mass_via_omega_prime)
     << " boundary_equality=" << fmt_bool(a.boundary_equality) << "\n";
}

void write_header(std::ostringstream& os, const char* command, const RunConfig& cfg, double t) {
  os << "command: " << command << "\n"
     << "t: " << format_number(t) << "\n"
     << "window: " << format_number(cfg.window_lo) << " " << format_number(cfg.window_hi) << "\n"
     << "grid_n: " << cfg.grid_n << "\n"
     << "mu: " << scale_semigroup(cfg.mu, t).describe() << "\n"
     << "root_tol: " << format_number(cfg.tol.root_tol) << "\n";
}

std::string atoms_csv(const std::vector<ConvolutionAtom>& atoms) {
  // Zero-mass entries come from the boundary-equality case and are not atoms.
  std::string out = "location,mass\n";
  for (const auto& a : atoms)
    if (a.mass > 0.0) out += format_number(a.location) + "," + format_number(a.mass) + "\n";
  return out;
}

std::vector<ConvolutionAtom> atoms_in_window(const AtomsResult& r, const RunConfig& cfg) {
  std::vector<ConvolutionAtom> out;
  for (const auto& a : r.atoms)
    if (a.location >= cfg.window_lo && a.location <= cfg.window_hi) out.push_back(a);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.location < b.location; });
  return out;
}

DensityResult density_for(const RunConfig& cfg, double t, const std::filesystem::path& dir) {
  const auto model = model_for(cfg, t);
  const auto st = support_structure(model, cfg.window_lo, cfg.window_hi);
  DensityResult r;
  for (int i = 0; i < cfg.grid_n; ++i)
    r.s.push_back(i == cfg.grid_n - 1
                      ? cfg.window_hi
                      : cfg.window_lo + (cfg.window_hi - cfg.window_lo) * i / (cfg.grid_n - 1));
  r.warnings = st.warnings;
  if (st.V.parts.empty()) {
    r.p.assign(r.s.size(), 0.0);
    r.warnings.push_back("V is empty in the window; the density is zero there");
  } else {
    r.p = evaluate_grid(model, r.s);
  }

  std::string csv = "s,p\n";
  for (std::size_t i = 0; i < r.s.size(); ++i)
    csv += format_number(r.s[i]) + "," + format_number(r.p[i]) + "\n";
  const auto atoms = atoms_in_window(st.atoms, cfg);

  std::ostringstream os;
  write_header(os, "density", cfg, t);
  for (std::size_t i = 0; i < st.V.parts.size(); ++i) {
    const auto& v = st.V.parts[i];
    os << "V[" << i << "]: (" << format_number(v.lo) << ", " << format_number(v.hi) << ")"
       << (v.lo_cut ? " lo_cut" : "") << (v.hi_cut ? " hi_cut" : "") << "\n";
  }
  for (std::size_t i = 0; i < st.components.size(); ++i)
    write_component(os, "component[" + std::to_string(i) + "]", st.components[i]);
  for (std::size_t i = 0; i < atoms.size(); ++i)
    write_atom(os, "atom[" + std::to_string(i) + "]", atoms[i]);
  if (st.atoms.no_atoms) os << "atoms: none (" << st.atoms.reason << ")\n";
  for (std::size_t i = 0; i < st.zero_points.size(); ++i)
    write_boundary(os, "zero[" + std::to_string(i) + "]", st.zero_points[i].second);
  for (const auto& w : r.warnings) os << "warning: " << w << "\n";

  std::filesystem::create_directories(dir);
  write_file(dir / "density.csv", csv);
  write_file(dir / "atoms.csv", atoms_csv(atoms));
  write_file(dir / "report.txt", os.str());
  return r;
}

Diagnosis diagnose_for(const RunConfig& cfg, double t, const std::filesystem::path& file) {
  const auto model = model_for(cfg, t);
  const auto d = diagnose(model, cfg.window_lo, cfg.window_hi);
  std::ostringstream os;
  write_header(os, "diagnose", cfg, t);
  os << "property_H: " << to_string(d.property_H) << "\n";
  if (d.property_H.witness) os << "property_H.witness: " << format_number(*d.property_H.witness) << "\n";
  os << "variance_mu: " << fmt_ext(d.variance_mu) << "\n";
  if (d.s_mu)
    os << "s_mu: location=" << format_number(d.s_mu->location)
       << " atom_mass=" << format_number(d.s_mu->mass) << "\n";
  else
    os << "s_mu: none\n";
  os << "component_count: " << d.component_count << "\n"
     << "component_bound: " << d.component_bound << "\n"
     << "bound_satisfied: " << fmt_bool(d.bound_satisfied) << "\n";
  for (std::size_t i = 0; i < d.components.size(); ++i)
    write_component(os, "component[" + std::to_string(i) + "]", d.components[i]);
  for (std::size_t i = 0; i < d.atoms.size(); ++i)
    write_atom(os, "atom[" + std::to_string(i) + "]", d.atoms[i]);
  for (std::size_t i = 0; i < d.zeros.size(); ++i)
    write_boundary(os, "zero[" + std::to_string(i) + "]", d.zeros[i]);
  for (std::size_t i = 0; i < d.analyticity_reports.size(); ++i) {
    const auto& r = d.analyticity_reports[i];
    os << "analyticity[" << i << "]: s=" << format_number(r.zero)
       << " alpha=" << format_number(r.alpha) << " analytic="
       << (r.analytic ? fmt_bool(*r.analytic) : std::string("unknown"))
       << " isolated=" << fmt_bool(r.isolated);
    if (r.identity_residual) os << " identity_residual=" << format_number(*r.identity_residual);
    os << " reason=" << r.reason << "\n";
  }
  for (std::size_t i = 0; i < d.tangency.size(); ++i) {
    os << "tangency[" << i << "]: alpha=" << format_number(d.tangency[i].alpha);
    for (const auto& [step, ratio] : d.tangency[i].ratios)
      os << " " << format_number(step) << ":" << format_number(ratio);
    os << "\n";
  }
  for (const auto& e : d.expectations) os << "expectation: " << e << "\n";
  for (const auto& w : d.warnings) os << "warning: " << w << "\n";
  std::filesystem::create_directories(file.parent_path().empty() ? "." : file.parent_path());
  write_file(file, os.str());
  return d;
}

double single_t(const RunConfig& cfg) {
  if (cfg.t.size() != 1) throw ValidationError("t: a list of values needs the sweep command");
  return cfg.t.front();
}

void check_run(const RunConfig& cfg, Checker& ck) {
  if (cfg.t.empty()) ck.fail("t", "needs at least one value");
  for (std::size_t i = 0; i < cfg.t.size(); ++i)
    if (!(cfg.t[i] > 0.0 && std::isfinite(cfg.t[i])))
      ck.fail("t[" + std::to_string(i) + "]", "must be positive");
  if (!(cfg.window_lo < cfg.window_hi) || !std::isfinite(cfg.window_lo) ||
      !std::isfinite(cfg.window_hi))
    ck.fail("window", "needs finite lo < hi");
  if (cfg.grid_n < 32) ck.fail("grid_n", "must be at least 32");
  if (!(cfg.tol.root_tol > 0.0)) ck.fail("tolerances.root_tol", "must be positive");
  if (!(cfg.tol.quad_tol > 0.0)) ck.fail("tolerances.quad_tol", "must be positive");
  if (!(cfg.tol.y_floor_coef > 0.0)) ck.fail("tolerances.y_floor", "must be positive");
}

void validate_run(const RunConfig& cfg) {
  Checker ck;
  check_run(cfg, ck);
  raise(ck);
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) return "0";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

MeasureRep parse_measure(const std::string& text, const std::string& path) {
  Checker ck;
  auto m = measure_from(parse_json(text), path, ck);
  raise(ck);
  return *m;
}

RunConfig parse_config(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  Checker ck;
  RunConfig cfg;
  reject_unknown(j, "config", {"mu", "nu", "t", "window", "grid_n", "tolerances", "output"}, ck);

  std::optional<PhiDescriptor> mu;
  if (!j.contains("mu"))
    ck.fail("mu", "missing");
  else
    mu = phi_from(j.at("mu"), "mu", ck);
  std::optional<MeasureRep> nu;
  if (!j.contains("nu")) {
    ck.fail("nu", "missing");
  } else {
    nu = measure_from(j.at("nu"), "nu", ck);
    if (nu && !is_probability(*nu))
      ck.fail("nu", "total mass " + format_number(total_mass(*nu)) + ", expected 1");
  }

  if (j.contains("t")) {
    const auto& t = j.at("t");
    cfg.t.clear();
    if (t.is_number()) {
      cfg.t.push_back(t.get<double>());
    } else if (t.is_array() && !t.empty()) {
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i].is_number())
          cfg.t.push_back(t[i].get<double>());
        else
          ck.fail("t[" + std::to_string(i) + "]", "expected a number");
      }
    } else {
      ck.fail("t", "expected a number or a non-empty list");
    }
  }
  if (j.contains("window")) {
    const auto& w = j.at("window");
    if (w.is_array() && w.size() == 2 && w[0].is_number() && w[1].is_number()) {
      cfg.window_lo = w[0].get<double>();
      cfg.window_hi = w[1].get<double>();
    } else {
      ck.fail("window", "expected [lo, hi]");
    }
  }
  if (j.contains("grid_n")) {
    if (j.at("grid_n").is_number_integer())
      cfg.grid_n = j.at("grid_n").get<int>();
    else
      ck.fail("grid_n", "expected an integer");
  }
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    if (!t.is_object()) {
      ck.fail("tolerances", "expected an object");
    } else {
      reject_unknown(t, "tolerances", {"y_floor", "root_tol", "quad_tol"}, ck);
      if (auto v = number(t, "y_floor", "tolerances", ck, cfg.tol.y_floor_coef)) cfg.tol.y_floor_coef = *v;
      if (auto v = number(t, "root_tol", "tolerances", ck, cfg.tol.root_tol)) cfg.tol.root_tol = *v;
      if (auto v = number(t, "quad_tol", "tolerances", ck, cfg.tol.quad_tol)) cfg.tol.quad_tol = *v;
    }
  }
  if (j.contains("output")) {
    if (j.at("output").is_string())
      cfg.out = j.at("output").get<std::string>();
    else
      ck.fail("output", "expected a directory path");
  }
  check_run(cfg, ck);
  raise(ck);
  cfg.mu = *mu;
  cfg.nu = *nu;
  return cfg;
}

DensityResult cmd_density(const RunConfig& cfg, const std::filesystem::path& dir) {
  return density_for(cfg, single_t(cfg), dir);
}

void cmd_diagnose(const RunConfig& cfg, const std::filesystem::path& dir) {
  diagnose_for(cfg, single_t(cfg), dir / "report.txt");
}

void cmd_sweep(const RunConfig& cfg, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::string index = "t,status,dir,component_count,atom_mass,atoms,property_H,message\n";
  for (std::size_t i = 0; i < cfg.t.size(); ++i) {
    const double t = cfg.t[i];
    char name[32];
    std::snprintf(name, sizeof name, "t_%03zu", i);
    const auto sub = dir / name;
    try {
      density_for(cfg, t, sub);
      const auto d = diagnose_for(cfg, t, sub / "diagnosis.txt");
      double mass = 0.0;
      std::string list;
      for (const auto& a : d.atoms) {
        if (!(a.mass > 0.0)) continue;
        mass += a.mass;
        list += (list.empty() ? "" : ";") + format_number(a.location) + ":" + format_number(a.mass);
      }
      index += format_number(t) + ",ok," + name + "," + std::to_string(d.component_count) + "," +
               format_number(mass) + "," + list + "," + one_line(to_string(d.property_H)) + ",\n";
    } catch (const std::exception& e) {
      index += format_number(t) + ",error," + name + ",,,,," + one_line(e.what()) + "\n";
      std::cerr << "t = " << format_number(t) << ": " << e.what() << "\n";
    }
  }
  write_file(dir / "index.csv", index);
}

int run(int argc, char** argv) {
  CLI::App app{"Free additive convolution: density, atoms and regularity of mu boxplus nu"};
  app.require_subcommand(1);
  std::string config_path, out_dir, t_list;
  std::vector<double> window;
  int grid = 0;
  double tol = 0.0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON model config")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Output directory (overrides config.output)");
    sub->add_option("--window", window, "s-window LO HI")->expected(2);
    sub->add_option("--grid", grid, "Number of density grid points");
    sub->add_option("--t", t_list, "Comma-separated semigroup times");
    sub->add_option("--tol", tol, "Root tolerance");
  };
  auto* density = app.add_subcommand("density", "density.csv, atoms.csv and report.txt");
  auto* diag = app.add_subcommand("diagnose", "structured regularity report");
  auto* sweep = app.add_subcommand("sweep", "per-t outputs and index.csv");
  for (auto* sub : {density, diag, sweep}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
      std::cerr << "cannot read " << config_path << "\n";
      return kExitIo;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    RunConfig cfg = parse_config(buf.str());
    if (!out_dir.empty()) cfg.out = out_dir;
    if (!window.empty()) {
      cfg.window_lo = window[0];
      cfg.window_hi = window[1];
    }
    if (grid != 0) cfg.grid_n = grid;
    if (tol != 0.0) cfg.tol.root_tol = tol;
    if (!t_list.empty()) {
      cfg.t.clear();
      std::stringstream ss(t_list);
      std::string item;
      while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
          v = std::stod(item, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used == 0 || used != item.size()) throw ParseError("--t: cannot read \"" + item + "\"");
        cfg.t.push_back(v);
      }
    }
    validate_run(cfg);

    if (density->parsed()) {
      const auto r = cmd_density(cfg, cfg.out);
      for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
    } else if (diag->parsed()) {
      cmd_diagnose(cfg, cfg.out);
    } else {
      cmd_sweep(cfg, cfg.out);
    }
    return kExitOk;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ValidationError& e) {
    std::cerr << "validation error:\n" << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "computation failed: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace freeconv::cli
