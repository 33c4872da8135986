#include "kerr/keldysh.hpp"

#include <cmath>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

namespace kerr {
namespace {

using Eigen::MatrixXcd;

void require_cutoffs(Cutoffs cutoffs) {
  if (cutoffs.first < 1 || cutoffs.second < 1) {
    throw InvalidParams("mode cutoffs must be >= 1");
  }
}

OperatorMatrix wrap(MatrixXcd entries, Basis basis, Cutoffs cutoffs) {
  return {std::move(entries), basis, cutoffs};
}

double binomial(int n, int r) {
  double value = 1;
  for (int j = 1; j <= r; ++j) value = value * (n - r + j) / j;
  return value;
}

double sqrt_factorial(int n) {
  double value = 1;
  for (int j = 2; j <= n; ++j) value *= std::sqrt(double(j));
  return value;
}

}  // namespace

ModeOperators build_mode_operators(Cutoffs cutoffs, Basis basis) {
  require_cutoffs(cutoffs);
  const MatrixXcd a1 = ladder(cutoffs.first);
  const MatrixXcd a2 = ladder(cutoffs.second);
  const MatrixXcd i1 = MatrixXcd::Identity(a1.rows(), a1.cols());
  const MatrixXcd i2 = MatrixXcd::Identity(a2.rows(), a2.cols());
  const MatrixXcd first = Eigen::kroneckerProduct(a1, i2);
  const MatrixXcd second = Eigen::kroneckerProduct(i1, a2);
  return {wrap(first, basis, cutoffs), wrap(second, basis, cutoffs),
          wrap(MatrixXcd::Identity(first.rows(), first.cols()), basis, cutoffs)};
}

SplitHamiltonian build_generalized_hamiltonian_parts(const ModelParams& params,
                                                     Cutoffs cutoffs,
                                                     LoweringForm form) {
  params.validate();
  const ModeOperators modes = build_mode_operators(cutoffs, Basis::cl_q);
  const MatrixXcd& cl = modes.first.entries;
  const MatrixXcd& q = modes.second.entries;
  const MatrixXcd& one = modes.identity.entries;
  const MatrixXcd cl_dag = cl.adjoint();
  const MatrixXcd q_dag = q.adjoint();
  const MatrixXcd n_cl = cl_dag * cl;
  const MatrixXcd n_q = q_dag * q;

  const Complex i(0, 1);
  const double dc = params.delta_c;
  const double root2_omega = std::sqrt(2.0) * params.omega;
  const double lowering_shift = form == LoweringForm::consistent ? -1.0 : 1.0;

  // Without two-photon terms the kappa and Lambda pieces vanish and this is
  // the coherently driven form.
  MatrixXcd up = 0.5 * (2 * dc - i * params.gamma) * q_dag * cl +
                 params.chi * (n_cl + n_q - one) * q_dag * cl +
                 i * root2_omega * q_dag -
                 i * (params.kappa / 2) * (n_cl - n_q + one) * q_dag * cl +
                 params.lambda * q_dag * cl_dag;

  MatrixXcd down = 0.5 * (2 * dc + i * params.gamma) * cl_dag * q +
                   params.chi * (n_cl + n_q - one) * cl_dag * q -
                   i * root2_omega * q +
                   i * (params.kappa / 2) * (n_cl - n_q + lowering_shift * one) *
                       cl_dag * q -
                   (i * params.gamma * one + 2.0 * i * params.kappa * n_cl) *
                       q_dag * q +
                   std::conj(params.lambda) * cl * q;

  return {wrap(std::move(up), Basis::cl_q, cutoffs),
          wrap(std::move(down), Basis::cl_q, cutoffs)};
}

OperatorMatrix build_generalized_hamiltonian_clq(const ModelParams& params,
                                                 Cutoffs cutoffs,
                                                 LoweringForm form) {
  SplitHamiltonian parts =
      build_generalized_hamiltonian_parts(params, cutoffs, form);
  parts.raising.entries += parts.lowering.entries;
  return std::move(parts.raising);
}

OperatorMatrix build_generalized_hamiltonian_pm(const ModelParams& params,
                                                Cutoffs cutoffs) {
  params.validate();
  const ModeOperators modes = build_mode_operators(cutoffs, Basis::plus_minus);
  const MatrixXcd& ap = modes.first.entries;
  const MatrixXcd& am = modes.second.entries;
  const Complex i(0, 1);

  auto hamiltonian = [&](const MatrixXcd& a) -> MatrixXcd {
    const MatrixXcd ad = a.adjoint();
    return params.delta_c * ad * a + params.chi * ad * ad * a * a +
           i * params.omega * (ad - a) +
           0.5 * (params.lambda * ad * ad + std::conj(params.lambda) * a * a);
  };
  const MatrixXcd ap_dag = ap.adjoint();
  const MatrixXcd am_dag = am.adjoint();

  MatrixXcd h = hamiltonian(ap) - hamiltonian(am) +
                i * params.gamma * ap * am_dag -
                i * (params.gamma / 2) * (ap_dag * ap + am_dag * am) +
                i * params.kappa * ap * ap * am_dag * am_dag -
                i * (params.kappa / 2) *
                    (ap_dag * ap_dag * ap * ap + am_dag * am_dag * am * am);
  return wrap(std::move(h), Basis::plus_minus, cutoffs);
}

Eigen::MatrixXcd mixing_transform(Cutoffs clq, int pm_cutoff) {
  require_cutoffs(clq);
  const int side = pm_cutoff + 1;
  MatrixXcd u = MatrixXcd::Zero(Eigen::Index(side) * side,
                                Eigen::Index(clq.first + 1) * (clq.second + 1));
  // |m>_cl |n>_q = (a_cl^dag)^m (a_q^dag)^n / sqrt(m! n!) |0,0> with
  // a_cl = (a_+ + a_-)/sqrt2, a_q = (a_+ - a_-)/sqrt2.
  for (int m = 0; m <= clq.first; ++m) {
    for (int n = 0; n <= clq.second; ++n) {
      const Eigen::Index column = Eigen::Index(m) * (clq.second + 1) + n;
      const double norm = std::pow(2.0, -0.5 * (m + n)) /
                          (sqrt_factorial(m) * sqrt_factorial(n));
      for (int i = 0; i <= m; ++i) {
        for (int j = 0; j <= n; ++j) {
          const int plus = i + j;
          const int minus = (m - i) + (n - j);
          if (plus > pm_cutoff || minus > pm_cutoff) continue;
          const double sign = (n - j) % 2 == 0 ? 1.0 : -1.0;
          u(Eigen::Index(plus) * side + minus, column) +=
              sign * binomial(m, i) * binomial(n, j) * norm *
              sqrt_factorial(plus) * sqrt_factorial(minus);
        }
      }
    }
  }
  return u;
}

OperatorMatrix transform_to_clq(const OperatorMatrix& h_pm, Cutoffs clq) {
  if (h_pm.basis != Basis::plus_minus ||
      h_pm.cutoffs.first != h_pm.cutoffs.second) {
    throw BasisMismatch("transform_to_clq expects a (+, -) operator with equal cutoffs");
  }
  if (h_pm.cutoffs.first < clq.first + clq.second + 2) {
    throw BasisMismatch("(+, -) cutoff too small for an exact mixing transform");
  }
  const MatrixXcd u = mixing_transform(clq, h_pm.cutoffs.first);
  return wrap(u.adjoint() * h_pm.entries * u, Basis::cl_q, clq);
}

double interior_difference(const OperatorMatrix& a, const OperatorMatrix& b,
                           Cutoffs interior) {
  if (a.basis != b.basis || !(a.cutoffs == b.cutoffs)) {
    throw BasisMismatch("interior_difference: operators live on different spaces");
  }
  std::vector<Eigen::Index> states;
  for (int m = 0; m <= interior.first; ++m) {
    for (int n = 0; n <= interior.second; ++n) states.push_back(a.index(m, n));
  }
  double worst = 0;
  for (auto r : states) {
    for (auto c : states) {
      worst = std::max(worst, std::abs(a.entries(r, c) - b.entries(r, c)));
    }
  }
  return worst;
}

Eigen::VectorXcd embed_steady_state(const SteadyWavefunction& psi,
                                    Cutoffs cutoffs) {
  Eigen::VectorXcd v =
      Eigen::VectorXcd::Zero(Eigen::Index(cutoffs.first + 1) * (cutoffs.second + 1));
  const int top = std::min(psi.truncation, cutoffs.first);
  for (int m = 0; m <= top; ++m) {
    v(Eigen::Index(m) * (cutoffs.second + 1)) = psi.amplitudes(m);
  }
  return v;
}

ResidualReport steady_residual(const OperatorMatrix& h, const SteadyWavefunction& psi,
                               int interior_cut) {
  if (h.basis != Basis::cl_q) {
    throw BasisMismatch("steady_residual expects a (cl, q) operator");
  }
  if (interior_cut < 0 || interior_cut > h.cutoffs.first - 3) {
    throw InvalidParams("interior_cut must lie in [0, cutoff_cl - 3]");
  }
  const Eigen::VectorXcd state = embed_steady_state(psi, h.cutoffs);
  const Eigen::VectorXcd image = h.entries * state;
  const Eigen::Index interior_size =
      Eigen::Index(interior_cut + 1) * (h.cutoffs.second + 1);

  ResidualReport report;
  report.residual_norm = image.head(interior_size).norm();
  report.edge_norm = image.tail(image.size() - interior_size).norm();
  report.psi_norm = state.norm();
  report.interior_cut = interior_cut;
  report.cutoffs = h.cutoffs;
  return report;
}

Eigen::MatrixXcd candidate_density_matrix(const SteadyWavefunction& psi,
                                          Cutoffs clq, int pm_cutoff) {
  const Eigen::VectorXcd image =
      mixing_transform(clq, pm_cutoff) * embed_steady_state(psi, clq);
  const int side = pm_cutoff + 1;
  MatrixXcd rho(side, side);
  for (int m = 0; m < side; ++m) {
    for (int n = 0; n < side; ++n) rho(m, n) = image(Eigen::Index(m) * side + n);
  }
  const Complex trace = rho.trace();
  if (std::abs(trace) > 0) rho /= trace;
  return rho;
}

}  // namespace kerr
