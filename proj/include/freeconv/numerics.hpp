#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace freeconv {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Adaptive quadrature (Gauss-Kronrod 15 with bisection refinement).
// ---------------------------------------------------------------------------

/// Absolute error target used for every piece integral that is not closed form.
inline constexpr double kQuadTol = 1e-10;

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = kQuadTol);
cplx integrate(const std::function<cplx(double)>& f, double a, double b,
               double abs_tol = kQuadTol);

/// log(1 + u) accurate for small |u|.
cplx log1p(cplx u);

// ---------------------------------------------------------------------------
// Limit extrapolation along geometric sequences.
// ---------------------------------------------------------------------------

struct LimitEstimate {
  enum class Status { converged, diverges, undecided };
  Status status = Status::undecided;
  cplx value{};
  double error = 0.0;
  /// Raw samples, kept for audit and for divergence diagnostics.
  std::vector<cplx> samples;

  bool converged() const { return status == Status::converged; }
  bool diverges() const { return status == Status::diverges; }
};

struct LimitOptions {
  double start = 1e-2;  // first step
  int steps = 21;       // j = 0 .. steps-1, step_j = start * 2^-j
  double tol = 1e-9;    // agreement required between successive estimates
  int richardson_depth = 3;
};

/// Limit of f(eps) as eps -> 0+, sampled at eps_j = start * 2^-j.
/// Richardson extrapolation in integer powers of eps; the estimate is
/// accepted once three successive extrapolated values agree within tol.
/// `growth` selects which real projection is tested for divergence to +inf
/// (0: none, 1: real part, 2: imaginary part).
LimitEstimate limit_at_zero(const std::function<cplx(double)>& f, const LimitOptions& opt = {},
                            int growth = 0);

/// Limit of f(y) as y -> +inf, sampled at y_j = start * 2^j.
/// Richardson extrapolation in integer powers of 1/y.
LimitEstimate limit_at_infinity(const std::function<cplx(double)>& f, double start = 1e2,
                                int steps = 21, double tol = 1e-9, int growth = 0);

/// True when a real sequence is increasing with non-decaying increments over
/// its tail, i.e. behaves like log or power growth rather than convergence.
bool shows_unbounded_growth(const std::vector<double>& v, int tail = 8);

}  // namespace freeconv
