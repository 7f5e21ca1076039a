#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace mpx {

using cplx = std::complex<double>;

// Shot-noise standard deviation: vacuum variance of x = (a + a^dag)/sqrt(2)
// is 1/2, so sigma0 = 1/sqrt(2). All window widths in the public interface
// are expressed in sigma0 units.
inline constexpr double kSigma0 = 0.70710678118654752440;

struct EngineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TruncationError : EngineError {
  using EngineError::EngineError;
};
struct HeraldUnderflowError : EngineError {
  using EngineError::EngineError;
};

// Heralding window along the rotated quadrature x_theta. x0 and dx are in
// sigma0 units; dx is the full width. The infinite window is a sentinel that
// short-circuits to exact identity conditioning.
struct HomodyneWindow {
  double theta = 0.0;
  double x0 = 0.0;
  double dx = 0.0;
  bool is_infinite = true;

  static HomodyneWindow infinite(double theta = 0.0);
  static HomodyneWindow band(double theta, double x0, double dx);

  // window edges in natural quadrature units
  double lo() const { return (x0 - 0.5 * dx) * kSigma0; }
  double hi() const { return (x0 + 0.5 * dx) * kSigma0; }
};

enum class Parity { Even, Odd };

// Normalized pure state in a truncated Fock basis.
class FockVector {
 public:
  FockVector(Eigen::VectorXcd amps, double truncated_mass = 0.0);

  int dim() const { return static_cast<int>(amps_.size()); }
  const Eigen::VectorXcd& amps() const { return amps_; }
  double truncated_mass() const { return truncated_mass_; }

 private:
  Eigen::VectorXcd amps_;
  double truncated_mass_;
};

// Smallest dim whose coherent-state tail mass stays within budget.
int coherent_dim_for(double abs_alpha, double mass_budget = 1e-6);

FockVector coherent_fock(cplx alpha, int dim);
FockVector cat_fock(double alpha, Parity parity, int dim);
FockVector fock_basis_state(int n, int dim);

// Density operator over 1 or 2 modes with a common per-mode truncation.
// Two-mode indices are row-major: (m, n) -> m*dim + n; mode 0 is port a of
// the beamsplitter convention, mode 1 is port b.
class FockDensity {
 public:
  FockDensity(int modes, int dim, Eigen::MatrixXcd mat);

  static FockDensity pure(const FockVector& v);

  int modes() const { return modes_; }
  int dim() const { return dim_; }
  const Eigen::MatrixXcd& matrix() const { return mat_; }
  Eigen::MatrixXcd& matrix() { return mat_; }

  double trace_real() const;
  double purity() const;
  void scale(double f) { mat_ *= f; }

 private:
  int modes_;
  int dim_;
  Eigen::MatrixXcd mat_;
};

FockDensity tensor(const FockDensity& a, const FockDensity& b);

// Fock-basis matrix of the two-mode beamsplitter
//   a -> tau a + r b,  b -> -r a + tau b,  r = sqrt(1 - tau^2),
// built from the photon-number-conserving creation-operator recurrence.
// Entries are exact for every retained (p, q); blocks with total photon
// number >= dim leak outside the truncation.
Eigen::SparseMatrix<cplx> beamsplitter_matrix(int dim, double tau);

// rho -> U rho U^dag; throws TruncationError if the leaked trace exceeds 1e-8.
FockDensity beamsplitter_fock(const FockDensity& two_mode, double tau);

// <x|n> with x = (a + a^dag)/sqrt(2); stable through n = 200.
double quad_wavefunction(int n, double x);

// Window POVM Pi = int_window |x_theta><x_theta| dx via adaptive
// Gauss-Legendre; the infinite window returns the identity exactly.
Eigen::MatrixXcd homodyne_window_povm(const HomodyneWindow& w, int dim);

struct FockConditioned {
  FockDensity state;   // normalized, 1 mode
  double p_success;
};

FockConditioned condition_and_trace(const FockDensity& two_mode,
                                    const HomodyneWindow& w, int measured_mode);

FockDensity partial_trace(const FockDensity& two_mode, int keep);

// Phase-space rotation exp(-i theta n) applied to one mode.
FockDensity rotate_mode(const FockDensity& rho, int mode, double theta);

// Exact matrix elements <m|D(c)|n> of the displacement operator.
Eigen::MatrixXcd displacement_matrix(cplx c, int dim);

// Wigner function with int W dx dp = 1 (vacuum peaks at 1/pi), evaluated via
// the displaced-parity form W = (1/pi) Tr[rho D(2c) Pi], c = (x + ip)/sqrt(2).
double wigner_fock(const FockDensity& one_mode, double x, double p);

double mean_photon(const FockDensity& one_mode);

}  // namespace mpx
