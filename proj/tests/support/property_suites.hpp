// Randomized invariants of the exact solutions, each run over a fixed-seed
// sample and reported as a failure count.
#ifndef KERR_TESTS_PROPERTY_SUITES_HPP
#define KERR_TESTS_PROPERTY_SUITES_HPP

#include <cmath>
#include <sstream>
#include <string>

#include "kerr/exact_twophoton.hpp"
#include "kerr/specfun.hpp"
#include "random_params.hpp"

namespace suites {

using kerr::Complex;
using kerr::ModelParams;

struct Outcome {
  int cases = 0;
  int failures = 0;
  std::string first_failure;

  void record(bool ok, int trial, const std::string& what) {
    if (ok) return;
    if (failures++ == 0) {
      first_failure = "case " + std::to_string(trial) + ": " + what;
    }
  }
};

namespace detail {

// Alternates between the coherently driven and the two-photon model.
inline ModelParams draw(oracle::Rng& rng, int trial) {
  return trial % 2 ? oracle::random_twophoton(rng) : oracle::random_linear(rng);
}

inline Complex moment(const ModelParams& p, int l, int k) {
  return kerr::correlation_twophoton(p, l, k).value;
}

template <typename Check>
Outcome run(int cases, unsigned long long seed, Check&& check) {
  Outcome outcome;
  oracle::Rng rng(seed);
  for (int trial = 0; trial < cases; ++trial) {
    ++outcome.cases;
    try {
      check(rng, trial, outcome);
    } catch (const std::exception& e) {
      outcome.record(false, trial, std::string("threw: ") + e.what());
    }
  }
  return outcome;
}

}  // namespace detail

/// <a^dag^l a^k> = conj <a^dag^k a^l>.
inline Outcome hermiticity(int cases = 60) {
  return detail::run(cases, 101, [](oracle::Rng& rng, int trial, Outcome& out) {
    const ModelParams p = detail::draw(rng, trial);
    const int l = trial % 3;
    const int k = (trial / 3) % 4;
    const Complex forward = detail::moment(p, l, k);
    const Complex backward = detail::moment(p, k, l);
    out.record(std::abs(forward - std::conj(backward)) <= 1e-10 * std::abs(forward) + 1e-14,
               trial, "moment not hermitian");
  });
}

/// <a^dag^l a^l> real and >= 0 for l = 1, 2, 3.
inline Outcome positivity(int cases = 60) {
  return detail::run(cases, 103, [](oracle::Rng& rng, int trial, Outcome& out) {
    const ModelParams p = detail::draw(rng, trial);
    for (int l = 1; l <= 3; ++l) {
      const Complex value = detail::moment(p, l, l);
      out.record(value.real() >= 0 &&
                     std::abs(value.imag()) <= 1e-12 * std::max(1.0, value.real()),
                 trial, "negative or complex diagonal moment");
    }
  });
}

/// |<a^dag^l a^k>|^2 <= <a^dag^l a^l> <a^dag^k a^k>.
inline Outcome cauchy_schwarz(int cases = 60) {
  return detail::run(cases, 107, [](oracle::Rng& rng, int trial, Outcome& out) {
    const ModelParams p = detail::draw(rng, trial);
    const int l = trial % 3;
    const int k = 1 + (trial / 3) % 3;
    const double lhs = std::norm(detail::moment(p, l, k));
    const double rhs = detail::moment(p, l, l).real() * detail::moment(p, k, k).real();
    out.record(lhs <= rhs * (1 + 1e-10) + 1e-300, trial, "Cauchy-Schwarz violated");
  });
}

/// lambda -> -lambda leaves amplitudes and moments unchanged.
inline Outcome branch_invariance(int cases = 60) {
  return detail::run(cases, 109, [](oracle::Rng& rng, int trial, Outcome& out) {
    const ModelParams p = oracle::random_twophoton(rng);
    const auto a = kerr::wavefunction_twophoton(p, kerr::DisplacementBranch::principal);
    const auto b = kerr::wavefunction_twophoton(p, kerr::DisplacementBranch::negated);
    out.record(a.truncation == b.truncation &&
                   (a.amplitudes - b.amplitudes).norm() <= 1e-10,
               trial, "amplitudes depend on the branch");
    const Complex na = kerr::correlation_twophoton(p, 1, 2).value;
    const Complex nb =
        kerr::correlation_twophoton(p, 1, 2, kerr::DisplacementBranch::negated).value;
    out.record(std::abs(na - nb) <= 1e-10 * std::abs(na) + 1e-14, trial,
               "moment depends on the branch");
  });
}

/// Multiplying every rate by s leaves the dimensionless parameters and the
/// moments unchanged.
inline Outcome scale_covariance(int cases = 60) {
  return detail::run(cases, 113, [](oracle::Rng& rng, int trial, Outcome& out) {
    const ModelParams p = detail::draw(rng, trial);
    const double s = std::exp(oracle::uniform(rng, -4, 4));
    const ModelParams q = p.scaled(s);
    if (p.has_two_photon_terms()) {
      const auto a = kerr::derive_twophoton(p);
      const auto b = kerr::derive_twophoton(q);
      out.record(std::abs(a.lambda_disp - b.lambda_disp) <= 1e-13 * std::abs(a.lambda_disp) &&
                     std::abs(a.y - b.y) <= 1e-12 * std::max(1.0, std::abs(a.y)) &&
                     std::abs(a.z - b.z) <= 1e-13 * std::max(1.0, std::abs(a.z)),
                 trial, "two-photon parameters not scale invariant");
    } else {
      const auto a = kerr::derive_linear(p);
      const auto b = kerr::derive_linear(q);
      out.record(std::abs(a.epsilon - b.epsilon) <= 1e-13 * std::abs(a.epsilon) &&
                     std::abs(a.x - b.x) <= 1e-13 * std::abs(a.x),
                 trial, "linear parameters not scale invariant");
    }
    const Complex before = detail::moment(p, 1, 1);
    out.record(std::abs(detail::moment(q, 1, 1) - before) <= 1e-10 * std::abs(before) + 1e-14,
               trial, "photon number not scale invariant");
  });
}

/// 2F1(-m, y; y; 2) = sum_n C(m, n) (-2)^n = (-1)^m.
inline Outcome binomial_identity(int cases = 60) {
  return detail::run(cases, 127, [](oracle::Rng& rng, int trial, Outcome& out) {
    const int m = trial % 40;
    const Complex y(oracle::uniform(rng, 0.2, 6), oracle::uniform(rng, -6, 6));
    const Complex value = kerr::hyp2f1_terminating(m, y, y);
    out.record(std::abs(value - (m % 2 ? -1.0 : 1.0)) <= 1e-12, trial,
               "binomial identity off at m = " + std::to_string(m));
  });
}

}  // namespace suites

#endif  // KERR_TESTS_PROPERTY_SUITES_HPP
