#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "mpxsynth/fock.hpp"

namespace mpx {

// <beta|alpha> = exp(-|alpha|^2/2 - |beta|^2/2 + conj(beta) alpha)
cplx coherent_overlap(cplx alpha, cplx beta);

// Windowed quadrature matrix element int_window <x_theta|alpha><beta|x_theta> dx.
// Exact closed form through the complex error function; the infinite window
// returns coherent_overlap(alpha, beta) exactly. |result| <= 1.
cplx window_moment(cplx alpha, cplx beta, const HomodyneWindow& w);

// State as a finite sum of coherent dyads sum_ij c_ij |a_i><a_j| over one or
// two modes. The ket list is shared between bra and ket sides, so Hermiticity
// of the represented operator is just Hermiticity of the coefficient matrix.
class CoherentRank {
 public:
  using Ket = std::array<cplx, 2>;  // per-mode amplitudes; [1] unused for 1 mode

  CoherentRank(int modes, std::vector<Ket> kets, Eigen::MatrixXcd coeff);

  static CoherentRank coherent(cplx alpha);
  static CoherentRank cat(double alpha, Parity parity);

  int modes() const { return modes_; }
  int ket_count() const { return static_cast<int>(kets_.size()); }
  const std::vector<Ket>& kets() const { return kets_; }
  const Eigen::MatrixXcd& coeff() const { return coeff_; }

  cplx ket_overlap(int i, int j) const;  // <a_j|a_i>, product over modes
  cplx trace() const;
  void normalize();
  double mean_photon() const;  // single mode

 private:
  int modes_;
  std::vector<Ket> kets_;
  Eigen::MatrixXcd coeff_;
};

CoherentRank tensor(const CoherentRank& a, const CoherentRank& b);

// Ket map (a, b) -> (tau a + r b, -r a + tau b); coefficients untouched.
CoherentRank beamsplitter_cr(const CoherentRank& two_mode, double tau);

struct CrConditioned {
  CoherentRank state;  // normalized, 1 mode
  double p_success;
};

CrConditioned condition_and_trace_cr(const CoherentRank& two_mode,
                                     const HomodyneWindow& w, int measured_mode);

CoherentRank partial_trace_cr(const CoherentRank& two_mode, int keep);

// Merge kets closer than tol (Euclidean over the mode tuple) and drop dyads
// with |c_ij| < tol.
CoherentRank compress_terms(const CoherentRank& s, double tol);

// Exact Wigner function, normalized to int W dx dp = 1.
double wigner_cr(const CoherentRank& one_mode, double x, double p);

// Fock-basis bridge for cross-engine checks.
FockDensity to_fock(const CoherentRank& one_mode, int dim);

double mean_photon_cr(const CoherentRank& one_mode);

}  // namespace mpx
