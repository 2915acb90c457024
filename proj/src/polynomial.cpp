#include "polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace freeconv::poly {

namespace {

// Far from the segment the kernels are expanded in inverse powers of w.
constexpr double kSeriesRatio = 2.0;
constexpr int kMaxTerms = 400;

// M_n = \int_a^b P(u) u^n du
double raw_moment(const Coef& c, double a, double b, int n) {
  double s = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const int e = static_cast<int>(j) + n + 1;
    s += c[j] * (std::pow(b, e) - std::pow(a, e)) / e;
  }
  return s;
}

// Q(u) = (P(u) - P(w)) / (u - w) by synthetic division.
template <typename T>
std::vector<T> quotient(const Coef& c, T w) {
  const std::size_t n = c.size();
  if (n <= 1) return {};
  std::vector<T> q(n - 1);
  q[n - 2] = c[n - 1];
  for (std::size_t j = n - 2; j >= 1; --j) q[j - 1] = c[j] + w * q[j];
  return q;
}

template <typename T>
T integral_t(const std::vector<T>& c, double a, double b) {
  T s{};
  double ap = a, bp = b;
  for (std::size_t j = 0; j < c.size(); ++j) {
    s += c[j] * ((bp - ap) / static_cast<double>(j + 1));
    ap *= a;
    bp *= b;
  }
  return s;
}

template <typename T>
T eval_t(const Coef& c, T u) {
  T s{};
  for (std::size_t j = c.size(); j-- > 0;) s = s * u + c[j];
  return s;
}

template <typename T>
T series(const Coef& c, double a, double b, T w, int power) {
  T sum{};
  T wp = (power == 1) ? 1.0 / w : 1.0 / (w * w);
  for (int n = 0; n < kMaxTerms; ++n) {
    const T term = (power == 1 ? 1.0 : static_cast<double>(n + 1)) * raw_moment(c, a, b, n) * wp;
    sum += term;
    if (n > static_cast<int>(c.size()) && std::abs(term) <= 1e-17 * std::abs(sum)) break;
    wp /= w;
  }
  return sum;
}

bool far(double a, double b, double w_abs) {
  return w_abs > kSeriesRatio * std::max(std::abs(a), std::abs(b));
}

}  // namespace

double eval(const Coef& c, double u) { return eval_t(c, u); }

double integral(const Coef& c, double a, double b) { return integral_t(c, a, b); }

Coef multiply(const Coef& p, const Coef& q) {
  if (p.empty() || q.empty()) return {};
  Coef r(p.size() + q.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  return r;
}

Coef taylor_shift(const Coef& c, double u0) {
  Coef d = c;
  const std::size_t n = d.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j-- > i;) d[j] += u0 * d[j + 1];
  return d;
}

cplx cauchy(const Coef& c, double a, double b, cplx w) {
  if (c.empty()) return 0.0;
  if (far(a, b, std::abs(w))) return series(c, a, b, w, 1);
  const cplx log_ratio = freeconv::log1p((b - a) / (w - b));
  return eval_t(c, w) * log_ratio - integral_t(quotient(c, w), a, b);
}

double real_kernel(const Coef& c, double a, double b, double w, int power) {
  if (c.empty()) return 0.0;
  if (a <= w && w <= b) {
    // P(w + v) = v^power R(v) and (w - u)^power = (-v)^power.
    const Coef d = taylor_shift(c, w);
    if (d.size() <= static_cast<std::size_t>(power)) return 0.0;
    const Coef r(d.begin() + power, d.end());
    const double sign = power == 1 ? -1.0 : 1.0;
    return sign * integral(r, a - w, b - w);
  }
  if (far(a, b, std::abs(w))) return series(c, a, b, w, power);
  const double pw = eval(c, w);
  const auto q = quotient(c, w);
  Coef qr(q.begin(), q.end());
  if (power == 1) return pw * std::log1p((b - a) / (w - b)) - integral(qr, a, b);
  return pw * (1.0 / (w - b) - 1.0 / (w - a)) - real_kernel(qr, a, b, w, 1);
}

}  // namespace freeconv::poly
