#include "mpxsynth/complex_erf.hpp"

#include <cmath>
#include <stdexcept>

namespace mpx {

namespace {

constexpr double kInvSqrtPi = 0.5641895835477562869;  // 1/sqrt(pi)

using cplx = std::complex<double>;
using lcplx = std::complex<long double>;

// Maclaurin form: w(z) = exp(-z^2) + (2iz/sqrt(pi)) * sum_k (-2z^2)^k/(2k+1)!!
// The even part is exact; only the odd part is summed. Long double keeps the
// alternating sum healthy up to |z| ~ 3.5.
cplx w_series(cplx zd) {
  lcplx z(zd.real(), zd.imag());
  lcplx z2 = z * z;
  lcplx t(1.0L, 0.0L);
  lcplx sum = t;
  for (int k = 1; k < 200; ++k) {
    t *= -2.0L * z2 / static_cast<long double>(2 * k + 1);
    sum += t;
    if (std::abs(t) < 1e-20L * std::abs(sum)) break;
  }
  lcplx even = std::exp(-z2);
  lcplx odd = lcplx(0.0L, 2.0L * 0.56418958354775628695L) * z * sum;
  lcplx w = even + odd;
  return cplx(static_cast<double>(w.real()), static_cast<double>(w.imag()));
}

// Laplace continued fraction, evaluated bottom-up with doubling depth until
// two evaluations agree.
cplx w_contfrac(cplx z) {
  cplx prev(0.0, 0.0);
  for (int depth = 12; depth <= 768; depth *= 2) {
    cplx f(0.0, 0.0);
    for (int k = depth; k >= 1; --k) {
      f = (0.5 * k) / (z - f);
    }
    cplx w = cplx(0.0, kInvSqrtPi) / (z - f);
    if (depth > 12 && std::abs(w - prev) <= 1e-16 * std::abs(w)) return w;
    prev = w;
  }
  return prev;
}

// Near the real axis at moderate |x| both the series and the continued
// fraction degrade; anchor on the real line, where
//   w(x) = exp(-x^2) + 2i/sqrt(pi) D(x),
// then continue upward with the ODE w' = -2 z w + 2i/sqrt(pi).
cplx w_taylor_band(cplx z) {
  long double x = z.real();
  long double y = z.imag();
  lcplx w0(std::exp(-static_cast<double>(x) * static_cast<double>(x)),
           2.0L * 0.56418958354775628695L * dawson(static_cast<double>(x)));
  lcplx two_i_pi(0.0L, 2.0L * 0.56418958354775628695L);
  lcplx dprev;             // w^{(n-1)}
  lcplx dcur = w0;         // w^{(n)}
  lcplx term = w0;
  lcplx sum = w0;
  lcplx h(0.0L, y);
  long double hfac = 1.0L;
  for (int n = 1; n < 80; ++n) {
    lcplx dnext = -2.0L * x * dcur - 2.0L * static_cast<long double>(n - 1) * dprev;
    if (n == 1) dnext += two_i_pi;
    dprev = dcur;
    dcur = dnext;
    hfac *= static_cast<long double>(n);
    term = dcur;
    for (int j = 0; j < n; ++j) term *= h;
    term /= hfac;
    sum += term;
    if (std::abs(term) < 1e-20L * std::abs(sum) && n > 4) break;
  }
  return cplx(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
}

}  // namespace

double dawson(double x) {
  // Rybicki's sampling expansion; h = 0.2 puts the discretization error far
  // below double precision. Only |x| up to ~10 is exercised by the band.
  double ax = std::fabs(x);
  if (ax < 0.2) {
    // series D(x) = x - 2x^3/3 + 4x^5/15 - ...
    double x2 = x * x;
    double term = x;
    double sum = x;
    for (int k = 1; k < 30; ++k) {
      term *= -2.0 * x2 / (2.0 * k + 1.0);
      sum += term;
      if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    }
    return sum;
  }
  const double h = 0.2;
  int n0 = static_cast<int>(std::lround(ax / h));
  if (n0 % 2 == 0) ++n0;  // nearest odd multiple
  double sum = 0.0;
  for (int k = -40; k <= 40; k += 2) {
    int n = n0 + k;
    double d = ax - n * h;
    sum += std::exp(-d * d) / n;
  }
  double val = kInvSqrtPi * sum;
  return x < 0 ? -val : val;
}

std::complex<double> faddeeva_w(std::complex<double> z) {
  if (z.imag() < 0.0) throw std::domain_error("faddeeva_w requires Im(z) >= 0");
  double x = std::fabs(z.real());
  double y = z.imag();
  double r2 = x * x + y * y;
  cplx zz(x, y);  // w(-conj(z)) = conj(w(z)); fold to Re >= 0
  cplx w;
  if (r2 <= 12.25) {
    w = w_series(zz);
  } else if (y < 1.0 && x < 8.2) {
    w = w_taylor_band(zz);
  } else {
    w = w_contfrac(zz);
  }
  if (z.real() < 0.0) w = std::conj(w);  // w(-conj(z)) = conj(w(z))
  return w;
}

std::complex<double> dyad_erf_band(std::complex<double> log_overlap,
                                   std::complex<double> u_lo,
                                   std::complex<double> u_hi) {
  // (1/2) exp(log_overlap) [erf(u_hi) - erf(u_lo)], each erf folded through
  // erfc(u) = exp(-u^2) w(iu) so the huge/small factors combine analytically.
  auto half_term = [&](cplx u) -> cplx {
    // returns (1/2) exp(log_overlap) erfc(u), stably
    if (u.real() >= 0.0) {
      cplx e = log_overlap - u * u;
      return 0.5 * std::exp(e) * faddeeva_w(cplx(-u.imag(), u.real()));
    }
    cplx e = log_overlap - u * u;
    return std::exp(log_overlap) - 0.5 * std::exp(e) * faddeeva_w(cplx(u.imag(), -u.real()));
  };
  // erf(hi) - erf(lo) = erfc(lo) - erfc(hi)
  return half_term(u_lo) - half_term(u_hi);
}

}  // namespace mpx
