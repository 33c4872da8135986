#ifndef KERR_LINDBLAD_HPP
#define KERR_LINDBLAD_HPP

#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "kerr/model.hpp"

namespace kerr {

/// System Hamiltonian on the Fock space truncated at `cutoff`.
Eigen::MatrixXcd system_hamiltonian(const ModelParams& params, int cutoff);

/// Generator of d rho/dt acting on column-stacked rho, index m + n (M + 1)
/// for rho_mn. Stored sparse; there are at most a dozen entries per column.
struct Liouvillian {
  Eigen::SparseMatrix<Complex> matrix;
  int cutoff = 0;

  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(matrix); }
};

/// Requires cutoff >= 1.
Liouvillian build_liouvillian(const ModelParams& params, int cutoff);

/// -i[H, rho] + gamma D[a] rho + kappa D[a^2] rho evaluated with matrix
/// products, independently of the superoperator.
Eigen::MatrixXcd lindblad_rhs(const ModelParams& params, const Eigen::MatrixXcd& rho);

struct SteadyStateDiagnostics {
  /// max |rho - rho^dag| before hermitization.
  double hermiticity_error = 0;
  double trace_error = 0;
  double min_eigenvalue = 0;
  double purity = 0;
  /// max |L vec(rho)| after hermitization, and max |L_ij|.
  double residual = 0;
  double liouvillian_max = 0;
};

struct DensityMatrix {
  Eigen::MatrixXcd entries;
  int cutoff = 0;
  SteadyStateDiagnostics diagnostics;
};

enum class LinearSolver { sparse_lu, dense_lu };

/// Null vector of L with unit trace: the <0|.|0> row is replaced by the trace
/// functional and the system solved by LU. Throws SingularSystem when the
/// factorization fails and InvariantViolation when the hermitized result is
/// not a density matrix within the documented slack.
DensityMatrix steady_state(const Liouvillian& liouvillian,
                           LinearSolver solver = LinearSolver::sparse_lu);

/// trace(rho a^dag^l a^k). Throws CutoffTooSmall unless l + k <= M / 2.
Complex correlation_from_rho(const DensityMatrix& rho, int l, int k);

using Observable = std::function<Complex(const DensityMatrix&)>;

/// <a^dag^l a^k> as an Observable.
Observable moment_observable(int l, int k);

struct CutoffCertificate {
  /// Smallest doubled cutoff whose value agrees with the next one.
  int cutoff = 0;
  Complex value;
  int check_cutoff = 0;
  Complex check_value;
  /// (cutoff, value) for every solved cutoff.
  std::vector<std::pair<int, Complex>> history;
};

/// Doubles M from `start` until successive values differ by less than tol
/// relative (or 1e-14 absolute). Throws NonConvergence once M would exceed
/// `cap`.
CutoffCertificate adaptive_cutoff(const ModelParams& params,
                                  const Observable& observable, double tol,
                                  int start = 16, int cap = 256);

}  // namespace kerr

#endif  // KERR_LINDBLAD_HPP
