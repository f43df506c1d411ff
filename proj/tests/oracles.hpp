// Independent numerical oracles for the test suite.  Everything here is
// computed from first principles -- adaptive quadrature, dense sampling,
// long-double series -- and deliberately avoids the closed forms under test.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

#include "cheegerlab/geometry.hpp"

namespace oracle {

// --- adaptive Simpson quadrature -----------------------------------------

namespace detail {
inline double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adapt(F&& f, double a, double fa, double b, double fb, double m,
             double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

template <typename F>
double adaptive_simpson(F&& f, double a, double b, double tol = 1e-12) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(m);
  return detail::adapt(f, a, fa, b, fb, m, fm,
                       detail::simpson(a, fa, b, fb, fm), tol, 48);
}

// --- bump profile quadrature ----------------------------------------------
// Profile of the mound sitting over a slit gap of half-width delta:
// f(x) = 1 - sqrt(1 - (|x| - delta)^2) on (-delta, delta).  The identity
// 1 - sqrt(1 - t^2) = t^2 / (1 + sqrt(1 - t^2)) avoids cancellation.

inline double bump_profile_ref(double delta, double x) {
  const double t = std::abs(x) - delta;
  if (t >= 0.0) return 0.0;
  const double s = std::sqrt((1.0 - t) * (1.0 + t));
  return t * t / (1.0 + s);
}

// Arclength of the full mound boundary: both lobes, both sides of the slit.
// Integrates sqrt(1 + f'^2) on (0, delta) and multiplies by 4 (x-symmetry
// within one side, two sides).  The kink at x = 0 is an integration
// endpoint, so each panel is smooth.
inline double bump_perimeter_quadrature(double delta) {
  const auto integrand = [delta](double x) {
    const double t = x - delta;  // in (-delta, 0) for x in (0, delta)
    const double s2 = 1.0 - t * t;
    return std::sqrt(1.0 + t * t / s2);
  };
  return 4.0 * adaptive_simpson(integrand, 0.0, delta, 1e-13);
}

// Area of the full mound (both sides of the slit): 2 * integral of f.
inline double bump_area_quadrature(double delta) {
  const auto integrand = [delta](double x) {
    return bump_profile_ref(delta, x);
  };
  return 4.0 * adaptive_simpson(integrand, 0.0, delta, 1e-14);
}

// --- dense arc minimum -----------------------------------------------------
// Distance from the origin to the arc by dense scan plus golden-section
// refinement of the best bracket.

inline double brute_force_arc_min(const cheegerlab::CircularArc& arc,
                                  int samples = 200000) {
  const auto d = [&arc](double t) { return arc.point_at(t).norm(); };
  double best_t = 0.0;
  double best = d(0.0);
  for (int i = 1; i <= samples; ++i) {
    const double t = static_cast<double>(i) / samples;
    const double v = d(t);
    if (v < best) {
      best = v;
      best_t = t;
    }
  }
  double lo = std::max(0.0, best_t - 1.0 / samples);
  double hi = std::min(1.0, best_t + 1.0 / samples);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - gr * (hi - lo);
  double e = lo + gr * (hi - lo);
  double fc = d(c);
  double fe = d(e);
  for (int it = 0; it < 200; ++it) {
    if (fc < fe) {
      hi = e;
      e = c;
      fe = fc;
      c = hi - gr * (hi - lo);
      fc = d(c);
    } else {
      lo = c;
      c = e;
      fc = fe;
      e = lo + gr * (hi - lo);
      fe = d(e);
    }
  }
  return std::min({best, fc, fe});
}

// --- residual length product ----------------------------------------------

inline long double residual_product(int terms) {
  long double p = 1.0L;
  for (int k = 1; k <= terms; ++k) {
    p *= (1.0L - std::ldexp(1.0L, -k));
  }
  return p;
}

// --- slit construction tail truth ------------------------------------------
// Levels i = N+1 .. deep of the slit construction: 2^{i-1} mounds per level
// over gaps of half-width delta_i = 2^{-2i} * H_{i-1}, where H_i is the
// residual length after i steps.  Perimeter per mound 4*asin(delta); area by
// the cancellation-free cubic-order integrand (quadrature is hopeless at
// delta ~ 1e-30, but the exact antiderivative of t^2/(1+sqrt(1-t^2)) is not
// needed -- direct power-series summation of the integral converges in a
// couple of terms and is independent of the library's closed form).

struct SlitTailTruth {
  long double perimeter = 0.0L;
  long double area = 0.0L;
};

inline long double mound_area_series(long double delta) {
  // 2 * integral_{-d}^{d} f = 4 * integral_0^d t^2/(1+sqrt(1-t^2)) dt
  // (substituting t = delta - x).  Expand 1/(1+sqrt(1-t^2)) =
  // sum_{m>=0} c_m t^{2m} with c_0 = 1/2, c_1 = 1/8, c_2 = 1/16, ...
  // via the generating identity; integrate termwise.  Use enough terms for
  // delta <= 1/2.
  // 1/(1+sqrt(1-u)) with u = t^2 has series (1/2)(1 + u/4 + u^2/8 +
  // 5 u^3/64 + 7 u^4/128 + ...).
  static const long double c[8] = {
      0.5L,           0.125L,          0.0625L,          5.0L / 128.0L,
      7.0L / 256.0L,  21.0L / 1024.0L, 33.0L / 2048.0L,  429.0L / 32768.0L};
  long double sum = 0.0L;
  long double d2 = delta * delta;
  long double pow = delta * delta * delta;  // t^{2m+3} at t = delta, m = 0
  for (int m = 0; m < 8; ++m) {
    sum += c[m] * pow / (2.0L * m + 3.0L);
    pow *= d2;
  }
  return 4.0L * sum;
}

inline SlitTailTruth slit_tail_truth(double eps, int N, int deep) {
  SlitTailTruth out;
  long double H = 2.0L * static_cast<long double>(eps);  // H_0 = 2 eps
  for (int i = 1; i <= deep; ++i) {
    const long double delta = std::ldexp(H, -2 * i);
    if (i > N) {
      const long double count = std::ldexp(1.0L, i - 1);
      out.perimeter += count * 4.0L * std::asin(delta);
      out.area += count * mound_area_series(delta);
    }
    H *= (1.0L - std::ldexp(1.0L, -i));
  }
  return out;
}

// --- porous radii tails -----------------------------------------------------
// The default generator steps eps by *0.3 at every successor index and sets
// r = safety * eps^3 / 2^18.  Recompute the tail sums directly in long
// double.

inline long double porous_radii_tail(double eps1, double safety, int N,
                                     int deep) {
  long double eps = eps1;
  long double sum = 0.0L;
  for (int j1 = 1; j1 <= deep; ++j1) {
    for (int j2 = 1; j2 <= j1; ++j2) {
      if (j1 > N) {
        sum += static_cast<long double>(safety) * eps * eps * eps /
               262144.0L;
      }
      eps *= 0.3L;
    }
  }
  return sum;
}

inline long double porous_radii_sq_tail(double eps1, double safety, int N,
                                        int deep) {
  long double eps = eps1;
  long double sum = 0.0L;
  for (int j1 = 1; j1 <= deep; ++j1) {
    for (int j2 = 1; j2 <= j1; ++j2) {
      if (j1 > N) {
        const long double r =
            static_cast<long double>(safety) * eps * eps * eps / 262144.0L;
        sum += r * r;
      }
      eps *= 0.3L;
    }
  }
  return sum;
}

// --- closed-form Cheeger constants ------------------------------------------

inline double disk_cheeger(double radius) { return 2.0 / radius; }

// Unit square: the optimal rounded-corner radius solves
// (pi - 4) r^2 + 4 r - 1 = 0; h = 1/r = 2 + sqrt(pi).
inline double square_cheeger() {
  const double a = cheegerlab::kPi - 4.0;
  const double r = (-4.0 + std::sqrt(16.0 + 4.0 * a)) / (2.0 * a);
  return 1.0 / r;
}

}  // namespace oracle
