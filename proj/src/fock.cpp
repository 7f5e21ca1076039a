#include "mpxsynth/fock.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "mpxsynth/quadrature.hpp"

namespace mpx {

namespace {

constexpr double kPi = std::numbers::pi;

double norm_check(const Eigen::VectorXcd& v) { return v.norm(); }

}  // namespace

HomodyneWindow HomodyneWindow::infinite(double theta) {
  HomodyneWindow w;
  w.theta = theta;
  w.is_infinite = true;
  return w;
}

HomodyneWindow HomodyneWindow::band(double theta, double x0, double dx) {
  if (!(dx > 0.0)) throw EngineError("HomodyneWindow: dx must be > 0");
  HomodyneWindow w;
  w.theta = std::fmod(theta, 2.0 * kPi);
  if (w.theta < 0.0) w.theta += 2.0 * kPi;
  w.x0 = x0;
  w.dx = dx;
  w.is_infinite = false;
  return w;
}

FockVector::FockVector(Eigen::VectorXcd amps, double truncated_mass)
    : amps_(std::move(amps)), truncated_mass_(truncated_mass) {
  if (amps_.size() < 1) throw EngineError("FockVector: dim must be >= 1");
  double n = norm_check(amps_);
  if (n <= 0.0) throw EngineError("FockVector: null state");
  amps_ /= n;
}

int coherent_dim_for(double abs_alpha, double mass_budget) {
  double lambda = abs_alpha * abs_alpha;
  if (lambda == 0.0) return 1;
  double term = std::exp(-lambda);
  double cum = term;
  int n = 0;
  while (1.0 - cum > mass_budget && n < 100000) {
    ++n;
    term *= lambda / n;
    cum += term;
  }
  return n + 1;
}

FockVector coherent_fock(cplx alpha, int dim) {
  if (dim < 1) throw EngineError("coherent_fock: dim must be >= 1");
  Eigen::VectorXcd amps(dim);
  double a2 = std::norm(alpha);
  cplx c = std::exp(cplx(-0.5 * a2, 0.0));
  amps(0) = c;
  for (int n = 1; n < dim; ++n) {
    c *= alpha / std::sqrt(static_cast<double>(n));
    amps(n) = c;
  }
  double kept = amps.squaredNorm();
  double mass = std::max(0.0, 1.0 - kept);
  if (mass > 1e-6) {
    int need = coherent_dim_for(std::sqrt(a2));
    throw TruncationError("coherent_fock: truncated mass " + std::to_string(mass) +
                          " exceeds 1e-6; need dim >= " + std::to_string(need));
  }
  return FockVector(std::move(amps), mass);
}

FockVector cat_fock(double alpha, Parity parity, int dim) {
  if (alpha < 0.0) throw EngineError("cat_fock: alpha must be >= 0");
  if (parity == Parity::Odd && alpha == 0.0)
    throw EngineError("cat_fock: odd cat with alpha = 0 is the null state");
  if (dim < 1) throw EngineError("cat_fock: dim must be >= 1");
  // exact amplitudes of (|alpha> +/- |-alpha>)/N on the kept indices
  const double sign = (parity == Parity::Even) ? 1.0 : -1.0;
  const double nrm2 = 2.0 * (1.0 + sign * std::exp(-2.0 * alpha * alpha));
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(dim);
  double log_pref = -0.5 * alpha * alpha;
  double kept = 0.0;
  double c = std::exp(log_pref);  // alpha^n/sqrt(n!) * e^{-a^2/2}, built up
  for (int n = 0; n < dim; ++n) {
    if (n > 0) c *= alpha / std::sqrt(static_cast<double>(n));
    bool keep = (parity == Parity::Even) ? (n % 2 == 0) : (n % 2 == 1);
    if (keep) {
      double b = 2.0 * c / std::sqrt(nrm2);
      amps(n) = b;
      kept += b * b;
    }
  }
  double mass = std::max(0.0, 1.0 - kept);
  if (mass > 1e-6) {
    int need = coherent_dim_for(alpha);
    throw TruncationError("cat_fock: truncated mass " + std::to_string(mass) +
                          " exceeds 1e-6; need dim >= " + std::to_string(need));
  }
  return FockVector(std::move(amps), mass);
}

FockVector fock_basis_state(int n, int dim) {
  if (n < 0 || n >= dim) throw EngineError("fock_basis_state: index out of range");
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(dim);
  amps(n) = 1.0;
  return FockVector(std::move(amps), 0.0);
}

FockDensity::FockDensity(int modes, int dim, Eigen::MatrixXcd mat)
    : modes_(modes), dim_(dim), mat_(std::move(mat)) {
  if (modes_ != 1 && modes_ != 2) throw EngineError("FockDensity: modes must be 1 or 2");
  if (dim_ < 1) throw EngineError("FockDensity: dim must be >= 1");
  Eigen::Index side = 1;
  for (int m = 0; m < modes_; ++m) side *= dim_;
  if (mat_.rows() != side || mat_.cols() != side)
    throw EngineError("FockDensity: matrix side does not match dim^modes");
  double asym = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-7) throw EngineError("FockDensity: matrix is not Hermitian");
  if (asym > 0.0) mat_ = 0.5 * (mat_ + mat_.adjoint()).eval();
}

FockDensity FockDensity::pure(const FockVector& v) {
  return FockDensity(1, v.dim(), v.amps() * v.amps().adjoint());
}

double FockDensity::trace_real() const { return mat_.trace().real(); }

double FockDensity::purity() const {
  return (mat_ * mat_).trace().real();
}

FockDensity tensor(const FockDensity& a, const FockDensity& b) {
  if (a.modes() != 1 || b.modes() != 1)
    throw EngineError("tensor: both factors must be single-mode");
  if (a.dim() != b.dim())
    throw EngineError("tensor: per-mode truncations must match");
  const int d = a.dim();
  Eigen::MatrixXcd out(d * d, d * d);
  for (int m = 0; m < d; ++m)
    for (int mp = 0; mp < d; ++mp)
      out.block(m * d, mp * d, d, d) = a.matrix()(m, mp) * b.matrix();
  return FockDensity(2, d, std::move(out));
}

Eigen::SparseMatrix<cplx> beamsplitter_matrix(int dim, double tau) {
  if (!(tau > 0.0 && tau < 1.0))
    throw EngineError("beamsplitter_matrix: tau must lie in (0,1)");
  const double r = std::sqrt(1.0 - tau * tau);
  const int d = dim;
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(static_cast<size_t>(d) * d * 2);

  // F[m][p] = <p, m+n-p | U | m, n> for fixed n, filled by the a^dag
  // recurrence; every intermediate is a bona fide unitary matrix element.
  std::vector<double> prev, cur;
  for (int n = 0; n < d; ++n) {
    prev.assign(static_cast<size_t>(std::min(n, d - 1)) + 1, 0.0);
    for (int p = 0; p <= std::min(n, d - 1); ++p) {
      double lg = 0.5 * (std::lgamma(n + 1.0) - std::lgamma(p + 1.0) -
                         std::lgamma(n - p + 1.0));
      prev[p] = std::exp(lg + p * std::log(r) + (n - p) * std::log(tau));
    }
    for (int p = 0; p <= std::min(n, d - 1); ++p) {
      int q = n - p;
      if (q < d) trip.emplace_back(p * d + q, 0 * d + n, prev[p]);
    }
    for (int m = 1; m < d; ++m) {
      int pmax = std::min(m + n, d - 1);
      cur.assign(static_cast<size_t>(pmax) + 1, 0.0);
      double inv_sm = 1.0 / std::sqrt(static_cast<double>(m));
      for (int p = 0; p <= pmax; ++p) {
        double acc = 0.0;
        if (p >= 1 && p - 1 < static_cast<int>(prev.size()))
          acc += tau * std::sqrt(static_cast<double>(p)) * prev[p - 1];
        if (p < static_cast<int>(prev.size()))
          acc -= r * std::sqrt(static_cast<double>(m + n - p)) * prev[p];
        cur[p] = acc * inv_sm;
      }
      for (int p = 0; p <= pmax; ++p) {
        int q = m + n - p;
        if (q < d) trip.emplace_back(p * d + q, m * d + n, cur[p]);
      }
      prev.swap(cur);
    }
  }
  Eigen::SparseMatrix<cplx> U(d * d, d * d);
  U.setFromTriplets(trip.begin(), trip.end());
  return U;
}

FockDensity beamsplitter_fock(const FockDensity& two_mode, double tau) {
  if (two_mode.modes() != 2)
    throw EngineError("beamsplitter_fock: needs a two-mode state");
  if (tau == 1.0) return two_mode;  // identity map
  Eigen::SparseMatrix<cplx> U = beamsplitter_matrix(two_mode.dim(), tau);
  Eigen::MatrixXcd tmp = U * two_mode.matrix();
  Eigen::MatrixXcd out = tmp * U.adjoint();
  double before = two_mode.trace_real();
  double after = out.trace().real();
  if (before - after > 1e-8)
    throw TruncationError(
        "beamsplitter_fock: truncation leakage (trace drop " +
        std::to_string(before - after) + "); increase dim");
  return FockDensity(2, two_mode.dim(), std::move(out));
}

double quad_wavefunction(int n, double x) {
  if (n < 0) throw EngineError("quad_wavefunction: n must be >= 0");
  const double psi0 = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
  if (n == 0) return psi0;
  double pm1 = psi0;
  double p = std::sqrt(2.0) * x * psi0;
  for (int k = 2; k <= n; ++k) {
    double next = std::sqrt(2.0 / k) * x * p - std::sqrt((k - 1.0) / k) * pm1;
    pm1 = p;
    p = next;
  }
  return p;
}

Eigen::MatrixXcd homodyne_window_povm(const HomodyneWindow& w, int dim) {
  if (w.is_infinite) return Eigen::MatrixXcd::Identity(dim, dim);
  const double a = w.lo();
  const double b = w.hi();
  Eigen::MatrixXd overlap = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd prev;
  for (int nodes = 32; nodes <= 8192; nodes *= 2) {
    QuadratureRule q = gauss_legendre_on(nodes, a, b);
    Eigen::MatrixXd B(nodes, dim);
    for (int i = 0; i < nodes; ++i) {
      const double sw = std::sqrt(q.weights[i]);
      const double x = q.nodes[i];
      const double psi0 = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
      B(i, 0) = sw * psi0;
      if (dim > 1) B(i, 1) = sw * std::sqrt(2.0) * x * psi0;
      for (int k = 2; k < dim; ++k)
        B(i, k) = std::sqrt(2.0 / k) * x * B(i, k - 1) -
                  std::sqrt((k - 1.0) / k) * B(i, k - 2);
    }
    overlap = B.transpose() * B;
    if (prev.size() > 0 && (overlap - prev).cwiseAbs().maxCoeff() < 1e-10) break;
    prev = overlap;
  }
  Eigen::MatrixXcd povm(dim, dim);
  for (int m = 0; m < dim; ++m)
    for (int n = 0; n < dim; ++n)
      povm(m, n) = overlap(m, n) * std::exp(cplx(0.0, w.theta * (m - n)));
  return povm;
}

FockConditioned condition_and_trace(const FockDensity& two_mode,
                                    const HomodyneWindow& w, int measured_mode) {
  if (two_mode.modes() != 2)
    throw EngineError("condition_and_trace: needs a two-mode state");
  if (measured_mode != 0 && measured_mode != 1)
    throw EngineError("condition_and_trace: measured_mode must be 0 or 1");
  const int d = two_mode.dim();
  const Eigen::MatrixXcd& rho = two_mode.matrix();
  Eigen::MatrixXcd sigma = Eigen::MatrixXcd::Zero(d, d);
  if (w.is_infinite) {
    sigma = partial_trace(two_mode, 1 - measured_mode).matrix();
  } else {
    Eigen::MatrixXcd povm = homodyne_window_povm(w, d);
    if (measured_mode == 0) {
      for (int m = 0; m < d; ++m)
        for (int mp = 0; mp < d; ++mp) {
          cplx c = povm(m, mp);
          if (std::abs(c) > 0.0) sigma += c * rho.block(mp * d, m * d, d, d);
        }
    } else {
      for (int m = 0; m < d; ++m)
        for (int mp = 0; mp < d; ++mp) {
          cplx acc = 0.0;
          const auto blk = rho.block(m * d, mp * d, d, d);
          for (int n = 0; n < d; ++n)
            for (int np = 0; np < d; ++np) acc += blk(np, n) * povm(n, np);
          sigma(m, mp) = acc;
        }
    }
  }
  cplx tr = sigma.trace();
  double p = tr.real();
  if (p < 1e-12)
    throw HeraldUnderflowError("condition_and_trace: herald probability underflow");
  if (std::fabs(tr.imag()) > 1e-9 * p)
    throw EngineError("condition_and_trace: non-real herald probability");
  sigma /= p;
  sigma = 0.5 * (sigma + sigma.adjoint()).eval();
  return {FockDensity(1, d, std::move(sigma)), p};
}

FockDensity partial_trace(const FockDensity& two_mode, int keep) {
  if (two_mode.modes() != 2)
    throw EngineError("partial_trace: needs a two-mode state");
  const int d = two_mode.dim();
  const Eigen::MatrixXcd& rho = two_mode.matrix();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  if (keep == 0) {
    for (int m = 0; m < d; ++m)
      for (int mp = 0; mp < d; ++mp) {
        cplx acc = 0.0;
        for (int n = 0; n < d; ++n) acc += rho(m * d + n, mp * d + n);
        out(m, mp) = acc;
      }
  } else if (keep == 1) {
    for (int m = 0; m < d; ++m) out += rho.block(m * d, m * d, d, d);
  } else {
    throw EngineError("partial_trace: keep must be 0 or 1");
  }
  return FockDensity(1, d, std::move(out));
}

FockDensity rotate_mode(const FockDensity& rho, int mode, double theta) {
  const int d = rho.dim();
  Eigen::VectorXcd ph(d);
  for (int n = 0; n < d; ++n) ph(n) = std::exp(cplx(0.0, -theta * n));
  Eigen::MatrixXcd out = rho.matrix();
  const int side = static_cast<int>(out.rows());
  auto phase_of = [&](int idx) -> cplx {
    if (rho.modes() == 1) return ph(idx);
    int m = idx / d, n = idx % d;
    return mode == 0 ? ph(m) : ph(n);
  };
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j)
      out(i, j) *= phase_of(i) * std::conj(phase_of(j));
  return FockDensity(rho.modes(), d, std::move(out));
}

Eigen::MatrixXcd displacement_matrix(cplx c, int dim) {
  Eigen::MatrixXcd D(dim, dim);
  const double a2 = std::norm(c);
  D(0, 0) = std::exp(-0.5 * a2);
  for (int m = 1; m < dim; ++m)
    D(m, 0) = D(m - 1, 0) * c / std::sqrt(static_cast<double>(m));
  for (int n = 1; n < dim; ++n) {
    const double isn = 1.0 / std::sqrt(static_cast<double>(n));
    for (int m = 0; m < dim; ++m) {
      cplx acc = -std::conj(c) * D(m, n - 1);
      if (m >= 1) acc += std::sqrt(static_cast<double>(m)) * D(m - 1, n - 1);
      D(m, n) = acc * isn;
    }
  }
  return D;
}

double wigner_fock(const FockDensity& one_mode, double x, double p) {
  if (one_mode.modes() != 1)
    throw EngineError("wigner_fock: needs a single-mode state");
  const int d = one_mode.dim();
  const cplx c(x / std::sqrt(2.0), p / std::sqrt(2.0));
  Eigen::MatrixXcd D2 = displacement_matrix(2.0 * c, d);
  const Eigen::MatrixXcd& rho = one_mode.matrix();
  cplx acc = 0.0;
  for (int m = 0; m < d; ++m) {
    double sgn = (m % 2 == 0) ? 1.0 : -1.0;
    for (int n = 0; n < d; ++n) acc += rho(m, n) * sgn * D2(n, m);
  }
  return acc.real() / kPi;
}

double mean_photon(const FockDensity& one_mode) {
  const int d = one_mode.dim();
  double acc = 0.0;
  for (int n = 0; n < d; ++n) acc += n * one_mode.matrix()(n, n).real();
  return acc;
}

}  // namespace mpx
