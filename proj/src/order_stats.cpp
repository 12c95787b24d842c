#include "csa/order_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "csa/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace csa {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Integration window. The order-statistic density is bounded by
// lambda * phi(x), so the truncated tail mass has a closed-form bound
// (see tail_moment_bound below) that is far below any practical tolerance.
constexpr double kCut = 12.0;

double log_normal_pdf(double x) {
    return -0.5 * x * x - 0.91893853320467274178; // ln sqrt(2 pi)
}

double log_normal_cdf(double x) {
    // 0.5 erfc(-x/sqrt(2)) is accurate in the lower tail; for |x| <= kCut the
    // erfc argument stays well inside the non-underflow range.
    return std::log(0.5 * std::erfc(-x / std::sqrt(2.0)));
}

// Upper bound on integral_L^inf x^k phi(x) dx (and by symmetry the lower tail).
double gaussian_tail_moment(int k, double l) {
    const double phi = std::exp(log_normal_pdf(l));
    const double q = 0.5 * std::erfc(l / std::sqrt(2.0));
    switch (k) {
        case 0: return q;
        case 1: return phi;
        case 2: return l * phi + q;
        case 3: return (l * l + 2.0) * phi;
        case 4: return (l * l * l + 3.0 * l) * phi + 3.0 * q;
        default: return kNan;
    }
}

double tail_moment_bound(int k, double l, int lambda) {
    // f_{i:lambda}(x) <= lambda phi(x), both tails.
    return 2.0 * static_cast<double>(lambda) * gaussian_tail_moment(k, l);
}

} // namespace

void OrderStatSpec::validate() const {
    if (lambda < 1) throw ConfigError("order statistic: lambda must be >= 1");
    if (rank < 1 || rank > lambda)
        throw ConfigError("order statistic: rank must be in [1, lambda]");
}

double OrderStatMoments::moment(int k) const {
    switch (k) {
        case 1: return m1;
        case 2: return m2;
        case 3: return m3;
        case 4: return m4;
        default: throw ContractError("moment index must be in [1,4]");
    }
}

void OrderStatMoments::check_invariants() const {
    const double slack = 16.0 * abs_error_bound + 1e-12;
    if (k_max >= 2) {
        if (m2 < -slack) throw ContractError("order-stat moments: m2 < 0");
        if (m2 - m1 * m1 < -slack)
            throw ContractError("order-stat moments: m2 < m1^2 (Jensen)");
    }
    if (k_max >= 4) {
        if (m4 < -slack) throw ContractError("order-stat moments: m4 < 0");
        if (m4 - m2 * m2 < -slack)
            throw ContractError("order-stat moments: m4 < m2^2 (Jensen)");
    }
    if (spec.rank == 1 && m1 > slack + (spec.lambda == 1 ? 0.0 : 0.0))
        throw ContractError("order-stat moments: minimum must have m1 <= 0");
}

double order_stat_log_density(const OrderStatSpec& spec, double x) {
    const double lam = spec.lambda, r = spec.rank;
    const double ln_c = std::lgamma(lam + 1.0) - std::lgamma(r) - std::lgamma(lam - r + 1.0);
    double v = ln_c + log_normal_pdf(x);
    if (spec.rank > 1) v += (r - 1.0) * log_normal_cdf(x);
    if (spec.rank < spec.lambda) v += (lam - r) * log_normal_cdf(-x);
    return v;
}

double order_stat_density(const OrderStatSpec& spec, double x) {
    return std::exp(order_stat_log_density(spec, x));
}

double order_stat_cdf(const OrderStatSpec& spec, double x) {
    // P(N_{r:l} <= x) = I_{Phi(x)}(r, l - r + 1)
    const double p = 0.5 * std::erfc(-x / std::sqrt(2.0));
    return boost::math::ibeta(static_cast<double>(spec.rank),
                              static_cast<double>(spec.lambda - spec.rank + 1), p);
}

OrderStatMoments moments_quadrature(const OrderStatSpec& spec, int k_max, double tol) {
    spec.validate();
    if (k_max < 1 || k_max > 4) throw ConfigError("moments: k_max must be in [1,4]");
    if (!(tol > 0.0)) throw ConfigError("moments: tol must be > 0");

    OrderStatMoments out;
    out.spec = spec;
    out.k_max = k_max;
    out.method = MomentMethod::quadrature;
    out.m1 = out.m2 = out.m3 = out.m4 = kNan;

    double worst = 0.0;
    double vals[4] = {kNan, kNan, kNan, kNan};
    for (int k = 1; k <= k_max; ++k) {
        boost::math::quadrature::tanh_sinh<double> integrator;
        const auto integrand = [&](double x) {
            return std::pow(x, k) * order_stat_density(spec, x);
        };
        double err = 0.0, l1 = 0.0;
        // Termination inside boost is err <= rel_tol * L1; ask for三 orders
        // below the absolute target so L1 norms up to ~1e3 are covered.
        const double rel_tol = std::max(tol * 1e-3, 4.0 * std::numeric_limits<double>::epsilon());
        const double v = integrator.integrate(integrand, -kCut, kCut, rel_tol, &err, &l1);
        const double bound = err + tail_moment_bound(k, kCut, spec.lambda);
        if (!(bound <= tol)) {
            std::ostringstream msg;
            msg << "moment quadrature did not reach tol=" << tol << " for k=" << k
                << " (lambda=" << spec.lambda << ", rank=" << spec.rank
                << "); best achieved bound " << bound;
            throw AccuracyError(msg.str(), bound);
        }
        worst = std::max(worst, bound);
        vals[k - 1] = v;
    }
    out.m1 = vals[0];
    if (k_max >= 2) out.m2 = vals[1];
    if (k_max >= 3) out.m3 = vals[2];
    if (k_max >= 4) out.m4 = vals[3];
    out.abs_error_bound = worst;
    return out;
}

double sample_order_stat(const OrderStatSpec& spec, RngStream& rng) {
    if (spec.lambda == 1) return rng.normal();
    if (spec.rank == 1) {
        double m = rng.normal();
        for (int i = 1; i < spec.lambda; ++i) m = std::min(m, rng.normal());
        return m;
    }
    if (spec.rank == spec.lambda) {
        double m = rng.normal();
        for (int i = 1; i < spec.lambda; ++i) m = std::max(m, rng.normal());
        return m;
    }
    std::vector<double> buf(static_cast<std::size_t>(spec.lambda));
    for (auto& v : buf) v = rng.normal();
    auto nth = buf.begin() + (spec.rank - 1);
    std::nth_element(buf.begin(), nth, buf.end());
    return *nth;
}

namespace {

struct ChunkSums {
    double s[4] = {0, 0, 0, 0};
    double sq[4] = {0, 0, 0, 0}; // sums of (x^k)^2, for standard errors
};

constexpr std::int64_t kChunk = 1 << 16;

ChunkSums accumulate_chunk(const OrderStatSpec& spec, int k_max,
                           std::int64_t count, RngStream rng) {
    ChunkSums cs;
    for (std::int64_t i = 0; i < count; ++i) {
        const double x = sample_order_stat(spec, rng);
        double p = 1.0;
        for (int k = 0; k < k_max; ++k) {
            p *= x;
            cs.s[k] += p;
            cs.sq[k] += p * p;
        }
    }
    return cs;
}

MomentSample reduce_chunks(const OrderStatSpec& spec, int k_max,
                           std::int64_t n_samples, const std::vector<ChunkSums>& chunks) {
    MomentSample out;
    out.spec = spec;
    out.k_max = k_max;
    out.n_samples = n_samples;
    double s[4] = {0, 0, 0, 0}, sq[4] = {0, 0, 0, 0};
    for (const auto& c : chunks) {
        for (int k = 0; k < k_max; ++k) {
            s[k] += c.s[k];
            sq[k] += c.sq[k];
        }
    }
    const double n = static_cast<double>(n_samples);
    for (int k = 0; k < k_max; ++k) {
        out.value[k] = s[k] / n;
        const double var = std::max(0.0, sq[k] / n - out.value[k] * out.value[k]);
        out.stderr_[k] = std::sqrt(var / n);
    }
    return out;
}

} // namespace

MomentSample sample_moments(const OrderStatSpec& spec, int k_max,
                            std::int64_t n_samples, std::uint64_t seed) {
    spec.validate();
    if (k_max < 1 || k_max > 4) throw ConfigError("sample_moments: k_max must be in [1,4]");
    if (n_samples < 1) throw ConfigError("sample_moments: n_samples must be >= 1");

    const std::int64_t n_chunks = (n_samples + kChunk - 1) / kChunk;
    std::vector<ChunkSums> chunks(static_cast<std::size_t>(n_chunks));
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < n_chunks; ++c) {
        const std::int64_t count = std::min<std::int64_t>(kChunk, n_samples - c * kChunk);
        chunks[static_cast<std::size_t>(c)] = accumulate_chunk(
            spec, k_max, count, RngStream::keyed(seed, static_cast<std::uint64_t>(c)));
    }
    return reduce_chunks(spec, k_max, n_samples, chunks);
}

namespace ref {

MomentSample sample_moments_serial(const OrderStatSpec& spec, int k_max,
                                   std::int64_t n_samples, std::uint64_t seed) {
    spec.validate();
    if (k_max < 1 || k_max > 4) throw ConfigError("sample_moments: k_max must be in [1,4]");
    if (n_samples < 1) throw ConfigError("sample_moments: n_samples must be >= 1");

    const std::int64_t n_chunks = (n_samples + kChunk - 1) / kChunk;
    std::vector<ChunkSums> chunks(static_cast<std::size_t>(n_chunks));
    for (std::int64_t c = 0; c < n_chunks; ++c) {
        const std::int64_t count = std::min<std::int64_t>(kChunk, n_samples - c * kChunk);
        chunks[static_cast<std::size_t>(c)] = accumulate_chunk(
            spec, k_max, count, RngStream::keyed(seed, static_cast<std::uint64_t>(c)));
    }
    return reduce_chunks(spec, k_max, n_samples, chunks);
}

} // namespace ref

OrderStatMoments moments_montecarlo(const OrderStatSpec& spec, int k_max,
                                    std::int64_t n_samples, std::uint64_t seed) {
    const MomentSample ms = sample_moments(spec, k_max, n_samples, seed);
    OrderStatMoments out;
    out.spec = spec;
    out.k_max = k_max;
    out.method = MomentMethod::montecarlo;
    out.m1 = out.m2 = out.m3 = out.m4 = kNan;
    out.m1 = ms.value[0];
    if (k_max >= 2) out.m2 = ms.value[1];
    if (k_max >= 3) out.m3 = ms.value[2];
    if (k_max >= 4) out.m4 = ms.value[3];
    out.abs_error_bound = *std::max_element(ms.stderr_, ms.stderr_ + k_max);
    return out;
}

double expected_chi_norm(int n) {
    if (n < 1) throw ConfigError("expected_chi_norm: n must be >= 1");
    const double half_n = 0.5 * static_cast<double>(n);
    return std::exp(0.5 * std::log(2.0) + std::lgamma(half_n + 0.5) - std::lgamma(half_n));
}

} // namespace csa
