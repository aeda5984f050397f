#include "stats.hpp"

#include <cmath>
#include <stdexcept>

namespace teststats {

namespace {

// Series expansion of P(a, x), converges fast for x < a + 1.
double gser(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-14) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x), converges fast for x >= a + 1.
double gcf(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1e300;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::abs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-14) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gammq(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gammq: bad arguments");
  if (x == 0.0) return 1.0;
  return x < a + 1.0 ? 1.0 - gser(a, x) : gcf(a, x);
}

double chi_square_p(const std::vector<double>& observed, const std::vector<double>& expected) {
  if (observed.size() != expected.size() || observed.size() < 2)
    throw std::invalid_argument("chi_square_p: need matching vectors of 2+ bins");
  double stat = 0.0;
  for (size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0.0) throw std::invalid_argument("chi_square_p: nonpositive expectation");
    const double d = observed[i] - expected[i];
    stat += d * d / expected[i];
  }
  const double dof = static_cast<double>(observed.size() - 1);
  return gammq(dof / 2.0, stat / 2.0);
}

}  // namespace teststats
