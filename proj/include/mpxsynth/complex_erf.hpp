#pragma once

#include <complex>

namespace mpx {

// Faddeeva function w(z) = exp(-z^2) erfc(-iz) for Im(z) >= 0.
// Hybrid of Maclaurin series, Dawson-anchored Taylor continuation near the
// real axis and a Laplace continued fraction elsewhere; relative accuracy
// ~1e-13 over the range exercised here (|z| <= 40 and beyond).
std::complex<double> faddeeva_w(std::complex<double> z);

// Dawson integral D(x) = exp(-x^2) int_0^x exp(t^2) dt.
double dawson(double x);

// Gaussian window mass between u_lo and u_hi for a coherent dyad
// |alpha><beta|, folded with the dyad's own overlap so the result is
// always bounded by 1 in magnitude:
//   <beta|alpha> * (1/2) [erf(u_hi) - erf(u_lo)]
// with complex shift already absorbed into u_lo/u_hi by the caller.
std::complex<double> dyad_erf_band(std::complex<double> log_overlap,
                                   std::complex<double> u_lo,
                                   std::complex<double> u_hi);

}  // namespace mpx
