#include "freeconv/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "freeconv/errors.hpp"

namespace freeconv {

namespace {

constexpr unsigned kMaxDepth = 15;
constexpr double kRelTol = 1e-13;

std::string fmt_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

template <typename T>
T integrate_impl(const std::function<T(double)>& f, double a, double b, double abs_tol) {
  if (a == b) return T{};
  double err = 0.0, l1 = 0.0;
  const T r = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, kMaxDepth,
                                                                           kRelTol, &err, &l1);
  // Boost's criterion is relative to the L1 norm; the contract here is absolute.
  if (!(err <= std::max(100.0 * abs_tol, 1e-12 * l1))) {
    throw NumericalError("quadrature on [" + std::to_string(a) + ", " + std::to_string(b) +
                         "] did not reach tolerance (error estimate " + fmt_sci(err) + ")");
  }
  return r;
}

std::vector<cplx> richardson_diagonal(const std::vector<cplx>& v, int depth, int column) {
  // T[j][m] eliminates the h^m term, step ratio 2.
  std::vector<std::vector<cplx>> t(v.size());
  std::vector<cplx> out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    t[j].push_back(v[j]);
    for (int m = 1; m <= depth && m <= static_cast<int>(j); ++m) {
      const double p = std::ldexp(1.0, m);
      t[j].push_back((p * t[j][m - 1] - t[j - 1][m - 1]) / (p - 1.0));
    }
    const int c = std::min<int>(column, static_cast<int>(t[j].size()) - 1);
    out[j] = t[j][c];
  }
  return out;
}

LimitEstimate extrapolate(std::vector<cplx> samples, double tol, int depth, int growth) {
  LimitEstimate est;
  est.samples = samples;
  // Try the deepest column first, then fall back to lower orders.
  for (int column = depth; column >= 0; --column) {
    const auto e = richardson_diagonal(samples, depth, column);
    for (std::size_t j = 2; j < e.size(); ++j) {
      const double scale = std::max(1.0, std::abs(e[j]));
      const double d1 = std::abs(e[j] - e[j - 1]);
      const double d2 = std::abs(e[j - 1] - e[j - 2]);
      if (d1 <= tol * scale && d2 <= tol * scale) {
        est.status = LimitEstimate::Status::converged;
        est.value = e[j];
        est.error = std::max(d1, d2);
        return est;
      }
    }
  }
  if (growth != 0) {
    std::vector<double> proj;
    for (const auto& s : samples) proj.push_back(growth == 1 ? s.real() : s.imag());
    if (shows_unbounded_growth(proj)) {
      est.status = LimitEstimate::Status::diverges;
      est.value = samples.back();
      est.error = std::numeric_limits<double>::infinity();
      return est;
    }
  }
  const auto e = richardson_diagonal(samples, depth, depth);
  est.status = LimitEstimate::Status::undecided;
  est.value = e.back();
  est.error = std::abs(e.back() - e[e.size() - 2]);
  return est;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol) {
  return integrate_impl<double>(f, a, b, abs_tol);
}

cplx integrate(const std::function<cplx(double)>& f, double a, double b, double abs_tol) {
  return integrate_impl<cplx>(f, a, b, abs_tol);
}

cplx log1p(cplx u) {
  const cplx w = 1.0 + u;
  if (w == 1.0) return u;
  return std::log(w) * u / (w - 1.0);
}

bool shows_unbounded_growth(const std::vector<double>& v, int tail) {
  const int n = static_cast<int>(v.size());
  if (n < tail + 1) return false;
  for (int j = n - tail; j < n; ++j) {
    if (!std::isfinite(v[j])) return true;
    const double d = v[j] - v[j - 1];
    if (!(d > 0.0)) return false;
    if (j > n - tail) {
      const double prev = v[j - 1] - v[j - 2];
      if (d < 0.9 * prev) return false;
    }
  }
  return true;
}

LimitEstimate limit_at_zero(const std::function<cplx(double)>& f, const LimitOptions& opt,
                            int growth) {
  std::vector<cplx> samples;
  samples.reserve(opt.steps);
  for (int j = 0; j < opt.steps; ++j) samples.push_back(f(std::ldexp(opt.start, -j)));
  return extrapolate(std::move(samples), opt.tol, opt.richardson_depth, growth);
}

LimitEstimate limit_at_infinity(const std::function<cplx(double)>& f, double start, int steps,
                                double tol, int growth) {
  std::vector<cplx> samples;
  samples.reserve(steps);
  for (int j = 0; j < steps; ++j) samples.push_back(f(std::ldexp(start, j)));
  return extrapolate(std::move(samples), tol, 3, growth);
}

}  // namespace freeconv
