#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "wsnlife/errors.hpp"

namespace wsnlife {

struct Tolerance {
  double rel = 1e-10;
  double abs = 0.0;
  int max_iters = 200;

  void validate() const {
    if (!(rel > 0.0) || !(abs >= 0.0) || max_iters < 1) {
      throw InvalidInput("tolerance: require rel > 0, abs >= 0, max_iters >= 1");
    }
  }
};

/// Neumaier-compensated running sum.
class KahanSum {
public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  KahanSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  double value() const noexcept { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// ---------------------------------------------------------------------------
// Terminating Gauss hypergeometric series 2F1(a, -L; c; z).
// ---------------------------------------------------------------------------

struct Hyp2F1Args {
  double a = 0.0;
  int L = 0;  // the second upper parameter is -L
  double c = 1.0;
  double z = 0.0;
};

struct Hyp2F1Result {
  double value = 1.0;
  /// sum |term| / |value|; 1 for a sign-definite series.
  double condition = 1.0;
  bool cancellation_warning = false;
};

inline constexpr double kCancellationThreshold = 1e8;

/// Exact degree-L polynomial sum_{n=0}^{L} (a)_n (-L)_n / (c)_n z^n / n!.
/// Throws InvalidInput when (c)_n vanishes for some n <= L.
inline Hyp2F1Result hyp2f1_terminating(const Hyp2F1Args& args) {
  if (args.L < 0) throw InvalidInput("hyp2f1: L must be nonnegative");
  if (!std::isfinite(args.a) || !std::isfinite(args.c) || !std::isfinite(args.z)) {
    throw InvalidInput("hyp2f1: non-finite argument");
  }
  KahanSum sum;
  KahanSum abs_sum;
  double term = 1.0;
  sum += term;
  abs_sum += 1.0;
  for (int n = 0; n < args.L; ++n) {
    const double cn = args.c + n;
    if (cn == 0.0) throw InvalidInput("hyp2f1: invalid c, Pochhammer (c)_n vanishes");
    term *= (args.a + n) * (static_cast<double>(n) - args.L) / (cn * (n + 1.0)) * args.z;
    sum += term;
    abs_sum += std::abs(term);
    if (term == 0.0) break;
  }
  Hyp2F1Result out;
  out.value = sum.value();
  const double mag = std::abs(out.value);
  out.condition = mag > 0.0 ? abs_sum.value() / mag : std::numeric_limits<double>::infinity();
  out.cancellation_warning = out.condition > kCancellationThreshold;
  return out;
}

// ---------------------------------------------------------------------------
// Adaptive 1D quadrature: globally adaptive Gauss-Kronrod (7/15).
// ---------------------------------------------------------------------------

namespace detail {

struct GkSegment {
  double lo;
  double hi;
  double value;
  double error;
};

template <class F>
GkSegment gauss_kronrod_15(F& f, double lo, double hi) {
  static constexpr std::array<double, 8> xk = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr std::array<double, 8> wk = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr std::array<double, 4> wg = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * wk[7];
  double gauss = fc * wg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * xk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += wk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += wg[j / 2] * (f1 + f2);
  }
  const double value = kronrod * half;
  const double error = std::abs((kronrod - gauss) * half);
  return {lo, hi, value, error};
}

}  // namespace detail

/// Adaptive estimate of the integral of f over [lo, hi] with
/// |error| <= max(tol.abs, tol.rel * |result|). max_iters caps subdivisions.
template <class F>
double integrate_1d(F&& f, double lo, double hi, const Tolerance& tol = {}) {
  tol.validate();
  if (!(lo <= hi)) throw InvalidInput("integrate_1d: require lo <= hi");
  if (lo == hi) return 0.0;

  std::vector<detail::GkSegment> segs{detail::gauss_kronrod_15(f, lo, hi)};
  for (int iter = 0;; ++iter) {
    KahanSum total;
    KahanSum err;
    for (const auto& s : segs) {
      total += s.value;
      err += s.error;
    }
    const double result = total.value();
    if (!std::isfinite(result)) throw InvalidInput("integrate_1d: integrand not finite");
    if (err.value() <= std::max(tol.abs, tol.rel * std::abs(result))) return result;
    if (iter >= tol.max_iters) {
      throw NonConvergence("integrate_1d: no convergence after " +
                           std::to_string(tol.max_iters) + " subdivisions");
    }
    const auto worst_it = std::max_element(
        segs.begin(), segs.end(),
        [](const auto& x, const auto& y) { return x.error < y.error; });
    const auto worst = *worst_it;
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(worst.lo < mid && mid < worst.hi)) {
      throw NonConvergence("integrate_1d: interval too small to subdivide");
    }
    *worst_it = detail::gauss_kronrod_15(f, worst.lo, mid);
    segs.push_back(detail::gauss_kronrod_15(f, mid, worst.hi));
  }
}

// ---------------------------------------------------------------------------
// Bracketed bisection.
// ---------------------------------------------------------------------------

/// Root of f in [lo, hi]; requires f(lo) * f(hi) <= 0. Terminates when the
/// bracket width drops to tol.abs + tol.rel * |x| or f vanishes exactly.
template <class F>
double bisect_root(F&& f, double lo, double hi, const Tolerance& tol = {}) {
  tol.validate();
  if (lo > hi) std::swap(lo, hi);
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi)) {
    throw NoSignChange("bisect_root: f(lo) and f(hi) have the same sign");
  }
  for (int iter = 0; iter < tol.max_iters; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (hi - lo <= tol.abs + tol.rel * std::abs(mid)) return mid;
    if (mid == lo || mid == hi) return mid;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  throw NonConvergence("bisect_root: bracket did not shrink below tolerance");
}

}  // namespace wsnlife
