#pragma once

#include <vector>

namespace teststats {

// Upper regularized incomplete gamma Q(a, x).
double gammq(double a, double x);

// Pearson chi-square test against expected counts; returns the upper-tail
// p-value with k-1 degrees of freedom.
double chi_square_p(const std::vector<double>& observed, const std::vector<double>& expected);

}  // namespace teststats
