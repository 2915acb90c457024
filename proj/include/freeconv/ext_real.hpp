#pragma once

#include <limits>
#include <optional>
#include <ostream>
#include <string>

namespace freeconv {

/// Extended real number used for singular integrals that may diverge.
///
/// Besides finite values it carries +inf, -inf and an explicit "undecided"
/// state. Arithmetic never silently resolves indeterminate forms: 0 * inf and
/// inf - inf both produce undecided.
class ExtReal {
 public:
  enum class Kind { finite, pos_inf, neg_inf, undecided };

  ExtReal() = default;
  ExtReal(double v) : kind_(Kind::finite), value_(v) {}  // NOLINT

  static ExtReal infinity() { return ExtReal(Kind::pos_inf); }
  static ExtReal neg_infinity() { return ExtReal(Kind::neg_inf); }
  static ExtReal undecided(std::string reason = {}) {
    ExtReal r(Kind::undecided);
    r.reason_ = std::move(reason);
    return r;
  }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_finite() const { return kind_ == Kind::finite; }
  constexpr bool is_pos_inf() const { return kind_ == Kind::pos_inf; }
  constexpr bool is_neg_inf() const { return kind_ == Kind::neg_inf; }
  constexpr bool is_infinite() const { return is_pos_inf() || is_neg_inf(); }
  constexpr bool is_undecided() const { return kind_ == Kind::undecided; }

  /// Finite value; +-inf map to the IEEE infinities, undecided to NaN.
  double value() const {
    switch (kind_) {
      case Kind::finite: return value_;
      case Kind::pos_inf: return std::numeric_limits<double>::infinity();
      case Kind::neg_inf: return -std::numeric_limits<double>::infinity();
      default: return std::numeric_limits<double>::quiet_NaN();
    }
  }
  const std::string& reason() const { return reason_; }

  /// Three-valued comparison: nullopt when either side is undecided.
  std::optional<bool> less_than(const ExtReal& o) const;
  std::optional<bool> less_equal(const ExtReal& o) const;

  friend ExtReal operator+(const ExtReal& a, const ExtReal& b);
  friend ExtReal operator*(const ExtReal& a, const ExtReal& b);
  friend ExtReal operator-(const ExtReal& a);
  friend bool operator==(const ExtReal& a, const ExtReal& b);

  std::string to_string() const;

 private:
  explicit ExtReal(Kind k) : kind_(k) {}

  Kind kind_ = Kind::finite;
  double value_ = 0.0;
  std::string reason_;
};

inline ExtReal& operator+=(ExtReal& a, const ExtReal& b) { return a = a + b; }
inline ExtReal operator-(const ExtReal& a, const ExtReal& b) { return a + (-b); }

std::ostream& operator<<(std::ostream& os, const ExtReal& x);

}  // namespace freeconv
