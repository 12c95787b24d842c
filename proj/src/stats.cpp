#include "csa/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include <boost/math/distributions/chi_squared.hpp>

namespace csa {

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double chi_squared_cdf(double x, int k) {
    if (x <= 0.0) return 0.0;
    boost::math::chi_squared_distribution<double> dist(static_cast<double>(k));
    return boost::math::cdf(dist, x);
}

double kolmogorov_q(double x) {
    if (x <= 0.0) return 1.0;
    if (x < 0.18) return 1.0; // Q(0.18) > 1 - 1e-8; avoid slow alternating series
    double sum = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * x * x);
        sum += (j % 2 == 1) ? term : -term;
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

double ks_p_from_stat(double d, double n_eff) {
    const double rn = std::sqrt(n_eff);
    // Stephens' correction improves the asymptotic approximation at finite n.
    return kolmogorov_q((rn + 0.12 + 0.11 / rn) * d);
}

} // namespace

double ks_two_sample_p(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const std::size_t na = a.size(), nb = b.size();
    std::size_t ia = 0, ib = 0;
    double d = 0.0;
    while (ia < na && ib < nb) {
        const double xa = a[ia], xb = b[ib];
        if (xa <= xb) ++ia;
        if (xb <= xa) ++ib;
        const double fa = static_cast<double>(ia) / static_cast<double>(na);
        const double fb = static_cast<double>(ib) / static_cast<double>(nb);
        d = std::max(d, std::abs(fa - fb));
    }
    const double n_eff = static_cast<double>(na) * static_cast<double>(nb) /
                         static_cast<double>(na + nb);
    return ks_p_from_stat(d, n_eff);
}

double ks_one_sample_p(std::vector<double> samples,
                       const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const std::size_t n = samples.size();
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = cdf(samples[i]);
        const double lo = static_cast<double>(i) / static_cast<double>(n);
        const double hi = static_cast<double>(i + 1) / static_cast<double>(n);
        d = std::max(d, std::max(std::abs(f - lo), std::abs(hi - f)));
    }
    return ks_p_from_stat(d, static_cast<double>(n));
}

MeanStderr mean_stderr(const std::vector<double>& xs) {
    MeanStderr out;
    const std::size_t n = xs.size();
    if (n == 0) return out;
    double s = 0.0;
    for (double x : xs) s += x;
    out.mean = s / static_cast<double>(n);
    if (n < 2) return out;
    double ss = 0.0;
    for (double x : xs) {
        const double dx = x - out.mean;
        ss += dx * dx;
    }
    out.stderr_ = std::sqrt(ss / (static_cast<double>(n - 1) * static_cast<double>(n)));
    return out;
}

} // namespace csa
