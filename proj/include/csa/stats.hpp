#pragma once

#include <functional>
#include <vector>

namespace csa {

/// Standard normal CDF, accurate in both tails (erfc based).
double normal_cdf(double x);

/// CDF of the chi-squared distribution with k degrees of freedom.
double chi_squared_cdf(double x, int k);

/// Kolmogorov limiting tail function Q(x) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 x^2).
double kolmogorov_q(double x);

/// Two-sample Kolmogorov-Smirnov test. Returns the asymptotic p-value
/// (Stephens' small-sample correction applied to the effective sample size).
/// Inputs are copied and sorted internally.
double ks_two_sample_p(std::vector<double> a, std::vector<double> b);

/// One-sample KS test against a continuous CDF. Returns the asymptotic p-value.
double ks_one_sample_p(std::vector<double> samples, const std::function<double(double)>& cdf);

struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0;
};

/// Sample mean and its standard error (sd/sqrt(n)) for i.i.d. samples.
MeanStderr mean_stderr(const std::vector<double>& xs);

} // namespace csa
