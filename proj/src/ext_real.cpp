#include "freeconv/ext_real.hpp"

#include <cmath>
#include <cstdio>

namespace freeconv {

namespace {

int order_rank(ExtReal::Kind k) {
  switch (k) {
    case ExtReal::Kind::neg_inf: return -1;
    case ExtReal::Kind::pos_inf: return 1;
    default: return 0;
  }
}

}  // namespace

std::optional<bool> ExtReal::less_than(const ExtReal& o) const {
  if (is_undecided() || o.is_undecided()) return std::nullopt;
  const int ra = order_rank(kind_), rb = order_rank(o.kind_);
  if (ra != rb) return ra < rb;
  if (ra != 0) return false;  // same infinity
  return value_ < o.value_;
}

std::optional<bool> ExtReal::less_equal(const ExtReal& o) const {
  if (is_undecided() || o.is_undecided()) return std::nullopt;
  auto lt = o.less_than(*this);
  return !*lt;
}

ExtReal operator+(const ExtReal& a, const ExtReal& b) {
  if (a.is_undecided()) return a;
  if (b.is_undecided()) return b;
  if (a.is_finite() && b.is_finite()) return ExtReal(a.value_ + b.value_);
  if (a.is_finite()) return b;
  if (b.is_finite()) return a;
  if (a.kind_ == b.kind_) return a;
  return ExtReal::undecided("inf - inf");
}

ExtReal operator*(const ExtReal& a, const ExtReal& b) {
  if (a.is_undecided()) return a;
  if (b.is_undecided()) return b;
  if (a.is_finite() && b.is_finite()) return ExtReal(a.value_ * b.value_);
  const auto sign_of = [](const ExtReal& x) -> int {
    if (x.is_pos_inf()) return 1;
    if (x.is_neg_inf()) return -1;
    return (x.value_ > 0.0) - (x.value_ < 0.0);
  };
  const int s = sign_of(a) * sign_of(b);
  if (s == 0) return ExtReal::undecided("0 * inf");
  return s > 0 ? ExtReal::infinity() : ExtReal::neg_infinity();
}

ExtReal operator-(const ExtReal& a) {
  switch (a.kind_) {
    case ExtReal::Kind::finite: return ExtReal(-a.value_);
    case ExtReal::Kind::pos_inf: return ExtReal::neg_infinity();
    case ExtReal::Kind::neg_inf: return ExtReal::infinity();
    default: return a;
  }
}

bool operator==(const ExtReal& a, const ExtReal& b) {
  if (a.kind_ != b.kind_) return false;
  return !a.is_finite() || a.value_ == b.value_;
}

std::string ExtReal::to_string() const {
  switch (kind_) {
    case Kind::pos_inf: return "inf";
    case Kind::neg_inf: return "-inf";
    case Kind::undecided: return reason_.empty() ? "undecided" : "undecided(" + reason_ + ")";
    default: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g", value_);
      return buf;
    }
  }
}

std::ostream& operator<<(std::ostream& os, const ExtReal& x) { return os << x.to_string(); }

}  // namespace freeconv
