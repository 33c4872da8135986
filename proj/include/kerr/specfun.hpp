#ifndef KERR_SPECFUN_HPP
#define KERR_SPECFUN_HPP

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "kerr/errors.hpp"

namespace kerr {

using Complex = std::complex<double>;

template <typename T>
struct SeriesResult {
  std::complex<T> value;
  int terms_used = 0;
  bool converged = false;
  /// |last term| / |partial sum| at exit.
  T tail_estimate = 0;
};

struct SeriesOptions {
  double relative_tolerance = 1e-16;
  int consecutive_small_terms = 5;
  int max_terms = 100000;
  double pole_floor = 1e-300;
};

/// True when z lies within `tol` (absolute) of 0, -1, -2, ...
template <typename T>
bool near_nonpositive_integer(const std::complex<T>& z, T tol = T(1e-12)) {
  using std::abs;
  using std::round;
  if (z.real() > tol) return false;
  const T nearest = round(z.real());
  return abs(z - std::complex<T>(nearest, 0)) <= tol && nearest <= 0;
}

namespace detail {

// Godfrey's coefficients for g = 607/128, 15 terms.
inline constexpr double kLanczosG = 607.0 / 128.0;
inline constexpr std::array<double, 15> kLanczosCoefficients = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,
    .15808870322491248884e-3,   -.21026444172410488319e-3,
    .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,
    .36899182659531622704e-5};

// log Gamma(w + 1) for Re w >= -0.5; all logarithms principal.
template <typename T>
std::complex<T> lanczos_log_gamma_shifted(const std::complex<T>& w) {
  using C = std::complex<T>;
  C series(T(kLanczosCoefficients[0]), 0);
  for (std::size_t k = 1; k < kLanczosCoefficients.size(); ++k) {
    series += T(kLanczosCoefficients[k]) / (w + T(k));
  }
  const C t = w + T(kLanczosG) + T(0.5);
  const T half_log_two_pi = T(0.5) * std::log(T(2) * std::numbers::pi_v<T>);
  return half_log_two_pi + (w + T(0.5)) * std::log(t) - t + std::log(series);
}

}  // namespace detail

/// Principal branch of log Gamma(z), the analytic continuation that
/// satisfies log_gamma(z + 1) = log_gamma(z) + log(z) with principal log.
///
/// Right half-plane (Re z >= 0.5) is a direct Lanczos evaluation. Further
/// left the argument is shifted up by the recurrence, which lands on the
/// standard branch without a 2*pi*i correction term.
template <typename T>
std::complex<T> log_gamma(const std::complex<T>& z) {
  using C = std::complex<T>;
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw PoleError("log_gamma: non-finite argument");
  }
  if (near_nonpositive_integer(z)) {
    throw PoleError("log_gamma: argument is a nonpositive integer");
  }
  if (z.real() >= T(0.5)) {
    return detail::lanczos_log_gamma_shifted(C(z - T(1)));
  }
  const int shift = static_cast<int>(std::ceil(T(0.5) - z.real()));
  C log_product(0, 0);
  for (int k = 0; k < shift; ++k) {
    log_product += std::log(z + T(k));
  }
  return detail::lanczos_log_gamma_shifted(C(z + T(shift - 1))) - log_product;
}

/// Rising factorial (x)_m = x (x+1) ... (x+m-1) by direct product.
template <typename T>
std::complex<T> pochhammer(const std::complex<T>& x, int m) {
  std::complex<T> product(1, 0);
  for (int j = 0; j < m; ++j) {
    product *= x + T(j);
  }
  return product;
}

/// 0F2(;b1,b2;z) = sum_m z^m / ((b1)_m (b2)_m m!) by direct summation.
template <typename T>
SeriesResult<T> hyp0f2(const std::complex<T>& b1, const std::complex<T>& b2,
                       const std::complex<T>& z,
                       const SeriesOptions& options = {}) {
  using C = std::complex<T>;
  if (near_nonpositive_integer(b1) || near_nonpositive_integer(b2)) {
    throw DenominatorPole("hyp0f2: lower parameter at a nonpositive integer");
  }
  SeriesResult<T> result;
  result.value = C(1, 0);
  result.terms_used = 1;
  if (z == C(0, 0)) {
    result.converged = true;
    return result;
  }
  C term(1, 0);
  int small_run = 0;
  for (int m = 0; result.terms_used < options.max_terms; ++m) {
    const C f1 = b1 + T(m);
    const C f2 = b2 + T(m);
    if (std::abs(f1) < T(options.pole_floor) ||
        std::abs(f2) < T(options.pole_floor)) {
      throw DenominatorPole("hyp0f2: Pochhammer factor underflow");
    }
    term *= z / (f1 * f2 * T(m + 1));
    result.value += term;
    ++result.terms_used;
    const T ratio = std::abs(term) / std::abs(result.value);
    result.tail_estimate = ratio;
    small_run = ratio < T(options.relative_tolerance) ? small_run + 1 : 0;
    if (small_run >= options.consecutive_small_terms) {
      result.converged = true;
      return result;
    }
  }
  return result;
}

/// 2F1(-m, y; z; 2), an (m+1)-term polynomial in the argument 2.
///
/// The terms alternate and grow like 3^m before cancelling, so terms and the
/// running sum are carried in double-double arithmetic and rounded once.
Complex hyp2f1_terminating(int m, Complex y, Complex z);

}  // namespace kerr

#endif  // KERR_SPECFUN_HPP
