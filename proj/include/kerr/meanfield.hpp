#ifndef KERR_MEANFIELD_HPP
#define KERR_MEANFIELD_HPP

#include <array>
#include <span>
#include <vector>

#include "kerr/model.hpp"

namespace kerr {

/// One real root n = |a0|^2 of the mean-field steady-state condition
///   n [4 (delta_c + 2 chi n)^2 + gamma^2] = 4 omega^2.
struct MeanFieldBranch {
  double n = 0;
  Complex a0;
  bool stable = false;
  /// A linearization eigenvalue has zero real part (reported unstable).
  bool marginal = false;
  /// Coincides with a neighbouring root to 1e-7 relative.
  bool degenerate = false;
  std::array<Complex, 2> eigenvalues{};
};

/// Coefficients (c3, c2, c1, c0) of
///   16 chi^2 n^3 + 16 chi delta_c n^2 + (4 delta_c^2 + gamma^2) n - 4 omega^2.
std::array<double, 4> meanfield_cubic(const ModelParams& params);

/// All real roots n >= 0, ascending, each classified by classify_stability.
/// Throws UnsupportedModel when two-photon terms are present.
std::vector<MeanFieldBranch> photon_number_branches(const ModelParams& params);

/// Fills `stable`, `marginal` and `eigenvalues` from the 2x2 Jacobian of the
/// classical equation of motion linearized around a0 in (da, da*).
MeanFieldBranch classify_stability(MeanFieldBranch branch,
                                   const ModelParams& params);

struct MeanFieldSweepRow {
  double omega = 0;
  std::vector<MeanFieldBranch> branches;
};

/// One row per drive amplitude, in grid order. `params.omega` is ignored.
std::vector<MeanFieldSweepRow> sweep_drive(const ModelParams& params,
                                           std::span<const double> omega_grid);

}  // namespace kerr

#endif  // KERR_MEANFIELD_HPP
