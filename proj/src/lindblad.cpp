#include "kerr/lindblad.hpp"

#include <cmath>
#include <string>

#include <Eigen/SparseLU>
#include <unsupported/Eigen/KroneckerProduct>

#include "kerr/keldysh.hpp"

namespace kerr {
namespace {

using Sparse = Eigen::SparseMatrix<Complex>;
using Eigen::MatrixXcd;

Sparse sparse_ladder(int cutoff) {
  Sparse a(cutoff + 1, cutoff + 1);
  a.reserve(Eigen::VectorXi::Constant(cutoff + 1, 1));
  for (int m = 1; m <= cutoff; ++m) a.insert(m - 1, m) = std::sqrt(double(m));
  a.makeCompressed();
  return a;
}

Sparse sparse_identity(int size) {
  Sparse one(size, size);
  one.setIdentity();
  return one;
}

// vec(A rho B) = (B^T (x) A) vec(rho) for column-stacked rho.
Sparse left(const Sparse& a, const Sparse& one) {
  return Eigen::kroneckerProduct(one, a).eval();
}
Sparse right(const Sparse& b, const Sparse& one) {
  return Eigen::kroneckerProduct(Sparse(b.transpose()), one).eval();
}

Sparse dissipator(const Sparse& c, const Sparse& one) {
  const Sparse c_dag = c.adjoint();
  const Sparse number = c_dag * c;
  const Sparse sandwich = Eigen::kroneckerProduct(Sparse(c.conjugate()), c).eval();
  return sandwich - 0.5 * left(number, one) - 0.5 * right(number, one);
}

Sparse sparse_hamiltonian(const ModelParams& params, int cutoff) {
  const Sparse a = sparse_ladder(cutoff);
  const Sparse a_dag = a.adjoint();
  const Sparse a2 = a * a;
  const Sparse a_dag2 = a_dag * a_dag;
  Sparse h = params.delta_c * (a_dag * a) + params.chi * (a_dag2 * a2);
  h += Complex(0, params.omega) * (a_dag - a);
  h += 0.5 * params.lambda * a_dag2;
  h += 0.5 * std::conj(params.lambda) * a2;
  return h;
}

void require_cutoff(int cutoff) {
  if (cutoff < 1) throw InvalidParams("Fock cutoff must be >= 1");
}

double factorial_ratio_weight(int j, int l, int k) {
  // sqrt((j + k)! (j + l)!) / j!
  return std::exp(0.5 * (std::lgamma(j + k + 1.0) + std::lgamma(j + l + 1.0)) -
                  std::lgamma(j + 1.0));
}

}  // namespace

Eigen::MatrixXcd system_hamiltonian(const ModelParams& params, int cutoff) {
  require_cutoff(cutoff);
  return MatrixXcd(sparse_hamiltonian(params, cutoff));
}

Liouvillian build_liouvillian(const ModelParams& params, int cutoff) {
  params.validate();
  require_cutoff(cutoff);
  const Sparse one = sparse_identity(cutoff + 1);
  const Sparse h = sparse_hamiltonian(params, cutoff);
  const Sparse a = sparse_ladder(cutoff);

  Sparse l = Complex(0, -1) * (left(h, one) - right(h, one));
  l += params.gamma * dissipator(a, one);
  if (params.kappa != 0) l += params.kappa * dissipator(Sparse(a * a), one);
  l.prune(Complex(0, 0));
  l.makeCompressed();
  return {std::move(l), cutoff};
}

Eigen::MatrixXcd lindblad_rhs(const ModelParams& params, const Eigen::MatrixXcd& rho) {
  if (rho.rows() != rho.cols() || rho.rows() < 2) {
    throw InvalidParams("lindblad_rhs: rho must be square with dimension >= 2");
  }
  const int cutoff = static_cast<int>(rho.rows()) - 1;
  const MatrixXcd a = ladder(cutoff);
  const MatrixXcd h = system_hamiltonian(params, cutoff);
  const Complex i(0, 1);

  auto dissipate = [&](const MatrixXcd& c) -> MatrixXcd {
    const MatrixXcd number = c.adjoint() * c;
    return c * rho * c.adjoint() - 0.5 * (number * rho + rho * number);
  };
  MatrixXcd out = -i * (h * rho - rho * h) + params.gamma * dissipate(a);
  if (params.kappa != 0) out += params.kappa * dissipate(a * a);
  return out;
}

DensityMatrix steady_state(const Liouvillian& liouvillian, LinearSolver solver) {
  const int side = liouvillian.cutoff + 1;
  const Eigen::Index size = Eigen::Index(side) * side;
  const Sparse& l = liouvillian.matrix;
  if (l.rows() != size || l.cols() != size) {
    throw InvalidParams("steady_state: Liouvillian does not match its cutoff");
  }

  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(size);
  rhs(0) = 1;
  Eigen::VectorXcd v;

  if (solver == LinearSolver::dense_lu) {
    MatrixXcd bordered = liouvillian.dense();
    bordered.row(0).setZero();
    for (int m = 0; m < side; ++m) bordered(0, Eigen::Index(m) * (side + 1)) = 1;
    Eigen::PartialPivLU<MatrixXcd> lu(bordered);
    // PartialPivLU keeps going past a zero pivot, so look at U directly.
    const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
    if (!(pivots.minCoeff() > 1e-14 * pivots.maxCoeff()) || !(lu.rcond() > 1e-14)) {
      throw SingularSystem("steady_state: bordered Liouvillian is singular");
    }
    v = lu.solve(rhs);
  } else {
    std::vector<Eigen::Triplet<Complex>> entries;
    entries.reserve(l.nonZeros() + side);
    for (Eigen::Index c = 0; c < l.outerSize(); ++c) {
      for (Sparse::InnerIterator it(l, c); it; ++it) {
        if (it.row() != 0) entries.emplace_back(it.row(), it.col(), it.value());
      }
    }
    for (int m = 0; m < side; ++m) {
      entries.emplace_back(0, Eigen::Index(m) * (side + 1), Complex(1, 0));
    }
    Sparse bordered(size, size);
    bordered.setFromTriplets(entries.begin(), entries.end());
    Eigen::SparseLU<Sparse> lu;
    lu.compute(bordered);
    if (lu.info() != Eigen::Success) {
      throw SingularSystem("steady_state: sparse LU failed: " + lu.lastErrorMessage());
    }
    v = lu.solve(rhs);
  }
  if (!v.allFinite()) throw SingularSystem("steady_state: non-finite solution");

  const MatrixXcd raw = Eigen::Map<const MatrixXcd>(v.data(), side, side);
  DensityMatrix rho;
  rho.cutoff = liouvillian.cutoff;
  rho.entries = 0.5 * (raw + raw.adjoint());

  SteadyStateDiagnostics& d = rho.diagnostics;
  d.hermiticity_error = (raw - raw.adjoint()).cwiseAbs().maxCoeff();
  d.trace_error = std::abs(rho.entries.trace() - Complex(1, 0));
  Eigen::SelfAdjointEigenSolver<MatrixXcd> spectrum(rho.entries,
                                                    Eigen::EigenvaluesOnly);
  d.min_eigenvalue = spectrum.eigenvalues().minCoeff();
  d.purity = (rho.entries * rho.entries).trace().real();
  const Eigen::VectorXcd hermitized =
      Eigen::Map<const Eigen::VectorXcd>(rho.entries.data(), size);
  d.residual = (l * hermitized).cwiseAbs().maxCoeff();
  d.liouvillian_max = 0;
  for (Eigen::Index c = 0; c < l.outerSize(); ++c) {
    for (Sparse::InnerIterator it(l, c); it; ++it) {
      d.liouvillian_max = std::max(d.liouvillian_max, std::abs(it.value()));
    }
  }

  if (!(d.hermiticity_error <= 1e-10) || !(d.trace_error <= 1e-10) ||
      !(d.min_eigenvalue >= -1e-8) || !(d.purity <= 1 + 1e-10) ||
      !(d.residual <= 1e-9 * d.liouvillian_max)) {
    throw InvariantViolation(
        "steady_state: solution is not a density matrix within slack (cutoff " +
        std::to_string(rho.cutoff) + " may be too small)");
  }
  return rho;
}

Complex correlation_from_rho(const DensityMatrix& rho, int l, int k) {
  if (l < 0 || k < 0) throw InvalidParams("moment orders must be >= 0");
  if (2 * (l + k) > rho.cutoff) {
    throw CutoffTooSmall("correlation_from_rho: l + k exceeds cutoff / 2");
  }
  // <a^dag^l a^k> = sum_j rho_{j+k, j+l} sqrt((j+k)! (j+l)!) / j!
  Complex sum(0, 0);
  for (int j = 0; j + std::max(l, k) <= rho.cutoff; ++j) {
    sum += rho.entries(j + k, j + l) * factorial_ratio_weight(j, l, k);
  }
  return sum;
}

Observable moment_observable(int l, int k) {
  return [l, k](const DensityMatrix& rho) { return correlation_from_rho(rho, l, k); };
}

CutoffCertificate adaptive_cutoff(const ModelParams& params,
                                  const Observable& observable, double tol,
                                  int start, int cap) {
  if (!(tol > 0)) throw InvalidParams("adaptive_cutoff: tol must be > 0");
  if (start < 2 || start > cap) {
    throw InvalidParams("adaptive_cutoff: need 2 <= start <= cap");
  }
  CutoffCertificate certificate;
  auto solve = [&](int cutoff) {
    const Complex value = observable(steady_state(build_liouvillian(params, cutoff)));
    certificate.history.emplace_back(cutoff, value);
    return value;
  };
  int cutoff = start;
  Complex value = solve(cutoff);
  while (2 * cutoff <= cap) {
    const Complex next = solve(2 * cutoff);
    const double difference = std::abs(next - value);
    if (difference <= tol * std::abs(next) || difference <= 1e-14) {
      certificate.cutoff = cutoff;
      certificate.value = value;
      certificate.check_cutoff = 2 * cutoff;
      certificate.check_value = next;
      return certificate;
    }
    cutoff *= 2;
    value = next;
  }
  throw NonConvergence("adaptive_cutoff: no agreement to " + std::to_string(tol) +
                       " below cutoff " + std::to_string(cap));
}

}  // namespace kerr
