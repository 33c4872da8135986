#ifndef KERR_KELDYSH_HPP
#define KERR_KELDYSH_HPP

#include <Eigen/Dense>

#include "kerr/model.hpp"
#include "kerr/wavefunction.hpp"

namespace kerr {

/// Truncated annihilation operator, <m-1| a |m> = sqrt(m), m = 0..cutoff.
template <typename Scalar = Complex>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> ladder(int cutoff) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix a = Matrix::Zero(cutoff + 1, cutoff + 1);
  for (int m = 1; m <= cutoff; ++m) {
    using std::sqrt;
    a(m - 1, m) = Scalar(sqrt(typename Eigen::NumTraits<Scalar>::Real(m)));
  }
  return a;
}

/// Pair of field modes on the doubled contour: (classical, quantum) or
/// (forward, backward).
enum class Basis { cl_q, plus_minus };

/// Fock cutoffs of the first and second tensor factor.
struct Cutoffs {
  int first = 0;
  int second = 0;
  friend bool operator==(const Cutoffs&, const Cutoffs&) = default;
};

/// Dense operator on the two-mode space. Index of |i>_first |j>_second is
/// i * (cutoffs.second + 1) + j.
struct OperatorMatrix {
  Eigen::MatrixXcd entries;
  Basis basis = Basis::cl_q;
  Cutoffs cutoffs;

  Eigen::Index dim() const { return entries.rows(); }
  Eigen::Index index(int first, int second) const {
    return Eigen::Index(first) * (cutoffs.second + 1) + second;
  }
};

struct ModeOperators {
  OperatorMatrix first;   // a_cl or a_+
  OperatorMatrix second;  // a_q or a_-
  OperatorMatrix identity;
};

ModeOperators build_mode_operators(Cutoffs cutoffs, Basis basis = Basis::cl_q);

/// Form of the two-photon-loss term in the q-lowering part.
///
/// `consistent` uses (n_cl - n_q - 1) a_cl^dag a_q, which is exactly the image
/// of the (+, -) form under the 50:50 mixing. `literal` uses (n_cl - n_q + 1),
/// which differs by i kappa a_cl^dag a_q. Both annihilate the same q-vacuum
/// states.
enum class LoweringForm { consistent, literal };

/// H = H_up + H_down in the (cl, q) basis. H_up raises the quantum-field
/// occupation by one; H_down lowers it by one or keeps it.
struct SplitHamiltonian {
  OperatorMatrix raising;
  OperatorMatrix lowering;
};

SplitHamiltonian build_generalized_hamiltonian_parts(
    const ModelParams& params, Cutoffs cutoffs,
    LoweringForm form = LoweringForm::consistent);

OperatorMatrix build_generalized_hamiltonian_clq(
    const ModelParams& params, Cutoffs cutoffs,
    LoweringForm form = LoweringForm::consistent);

/// H = H(a_+) - H(a_-) + i gamma a_+ a_-^dag - i gamma/2 (n_+ + n_-)
///     + i kappa a_+^2 a_-^dag^2 - i kappa/2 (a_+^dag^2 a_+^2 + a_-^dag^2 a_-^2)
OperatorMatrix build_generalized_hamiltonian_pm(const ModelParams& params,
                                                Cutoffs cutoffs);

/// Isometry from the (cl, q) space with `clq` cutoffs into the (+, -) space
/// with both cutoffs `pm_cutoff`, column j holding the image of cl/q basis
/// state j. Exact when pm_cutoff >= clq.first + clq.second.
Eigen::MatrixXcd mixing_transform(Cutoffs clq, int pm_cutoff);

/// U^dag H_pm U restricted to the (cl, q) space. The (+, -) cutoff must be
/// at least clq.first + clq.second + 2 so that every matrix element between
/// images is untouched by truncation.
OperatorMatrix transform_to_clq(const OperatorMatrix& h_pm, Cutoffs clq);

/// Largest entry difference over basis states with cl <= interior.first and
/// q <= interior.second.
double interior_difference(const OperatorMatrix& a, const OperatorMatrix& b,
                           Cutoffs interior);

/// |0>_q (x) sum_m beta_m |m>_cl, amplitudes beyond the cutoff dropped.
Eigen::VectorXcd embed_steady_state(const SteadyWavefunction& psi,
                                    Cutoffs cutoffs);

struct ResidualReport {
  /// ||P H |Psi>|| over states with cl index <= interior_cut.
  double residual_norm = 0;
  /// Remainder of ||H |Psi>|| from the truncation boundary.
  double edge_norm = 0;
  double psi_norm = 0;
  int interior_cut = 0;
  Cutoffs cutoffs;
};

/// Requires a (cl, q) operator and interior_cut <= cutoff_cl - 3.
ResidualReport steady_residual(const OperatorMatrix& h, const SteadyWavefunction& psi,
                               int interior_cut);

/// rho_mn proportional to <m_+, n_-|Psi>, trace-normalized. Exploratory only:
/// compared against the Lindblad state as a diagnostic, never asserted.
Eigen::MatrixXcd candidate_density_matrix(const SteadyWavefunction& psi,
                                          Cutoffs clq, int pm_cutoff);

}  // namespace kerr

#endif  // KERR_KELDYSH_HPP
