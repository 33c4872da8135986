#include "kerr/specfun.hpp"

#include <cmath>

namespace kerr {
namespace {

// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
struct DoubleDouble {
  double hi = 0;
  double lo = 0;
};

DoubleDouble quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

DoubleDouble operator+(DoubleDouble a, DoubleDouble b) {
  DoubleDouble s = two_sum(a.hi, b.hi);
  const DoubleDouble t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

DoubleDouble operator-(DoubleDouble a) { return {-a.hi, -a.lo}; }
DoubleDouble operator-(DoubleDouble a, DoubleDouble b) { return a + (-b); }

DoubleDouble operator*(DoubleDouble a, DoubleDouble b) {
  const double p = a.hi * b.hi;
  double e = std::fma(a.hi, b.hi, -p);
  e += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p, e);
}

DoubleDouble operator/(DoubleDouble a, DoubleDouble b) {
  const double q1 = a.hi / b.hi;
  DoubleDouble r = a - DoubleDouble{q1, 0} * b;
  const double q2 = r.hi / b.hi;
  r = r - DoubleDouble{q2, 0} * b;
  const double q3 = r.hi / b.hi;
  return DoubleDouble{q1, 0} + DoubleDouble{q2, 0} + DoubleDouble{q3, 0};
}

struct ComplexDD {
  DoubleDouble re;
  DoubleDouble im;
};

ComplexDD make(Complex z) { return {{z.real(), 0}, {z.imag(), 0}}; }

ComplexDD operator+(const ComplexDD& a, const ComplexDD& b) {
  return {a.re + b.re, a.im + b.im};
}

ComplexDD operator*(const ComplexDD& a, const ComplexDD& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexDD operator/(const ComplexDD& a, const ComplexDD& b) {
  const DoubleDouble denom = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / denom,
          (a.im * b.re - a.re * b.im) / denom};
}

}  // namespace

Complex hyp2f1_terminating(int m, Complex y, Complex z) {
  if (m < 0) {
    throw InvalidParams("hyp2f1_terminating: negative degree");
  }
  for (int n = 0; n < m; ++n) {
    if (std::abs(z + double(n)) <= 1e-12) {
      throw DenominatorPole("hyp2f1_terminating: z is a nonpositive integer "
                            "within the summation range");
    }
  }
  const ComplexDD y_dd = make(y);
  const ComplexDD z_dd = make(z);
  ComplexDD term = make(Complex(1, 0));
  ComplexDD sum = term;
  for (int n = 0; n < m; ++n) {
    // t_{n+1} = t_n * 2 (n - m)(y + n) / ((z + n)(n + 1))
    const ComplexDD numerator =
        make(Complex(2.0 * (n - m), 0)) * (y_dd + make(Complex(n, 0)));
    const ComplexDD denominator =
        (z_dd + make(Complex(n, 0))) * make(Complex(n + 1, 0));
    term = term * numerator / denominator;
    sum = sum + term;
  }
  return {sum.re.hi + sum.re.lo, sum.im.hi + sum.im.lo};
}

}  // namespace kerr
