#pragma once

#include <cstdint>
#include <vector>

#include "csa/rng.hpp"

namespace csa {

/// Which of lambda i.i.d. standard normals we look at: rank 1 is the minimum,
/// rank lambda the maximum.
struct OrderStatSpec {
    int lambda = 1;
    int rank = 1;

    void validate() const;
    bool operator==(const OrderStatSpec&) const = default;
};

enum class MomentMethod { quadrature, montecarlo };

/// Raw moments E(N_{rank:lambda}^k), k = 1..4. Moments above k_max are NaN.
struct OrderStatMoments {
    OrderStatSpec spec;
    double m1 = 0.0, m2 = 0.0, m3 = 0.0, m4 = 0.0;
    int k_max = 4;
    MomentMethod method = MomentMethod::quadrature;
    double abs_error_bound = 0.0;

    double moment(int k) const;
    /// Throws ContractError if the computed moments violate basic moment
    /// inequalities (Jensen, signs).
    void check_invariants() const;
};

/// Deterministic quadrature evaluation of the first k_max moments, each with
/// absolute error <= tol. Throws AccuracyError (carrying the achieved bound)
/// if the requested tolerance cannot be met.
OrderStatMoments moments_quadrature(const OrderStatSpec& spec, int k_max = 4,
                                    double tol = 1e-10);

/// Monte Carlo moment estimates with per-moment standard errors.
struct MomentSample {
    OrderStatSpec spec;
    int k_max = 4;
    std::int64_t n_samples = 0;
    double value[4] = {0, 0, 0, 0};
    double stderr_[4] = {0, 0, 0, 0};
};

/// Parallel (OpenMP) sampling estimate. Results are bit-identical for a given
/// seed regardless of thread count: sampling is chunked, each chunk has its
/// own keyed stream, and chunk partials are reduced in a fixed order.
MomentSample sample_moments(const OrderStatSpec& spec, int k_max,
                            std::int64_t n_samples, std::uint64_t seed);

namespace ref {
/// Serial reference implementation of sample_moments, kept for testing the
/// parallel kernel against.
MomentSample sample_moments_serial(const OrderStatSpec& spec, int k_max,
                                   std::int64_t n_samples, std::uint64_t seed);
} // namespace ref

/// sample_moments wrapped into the OrderStatMoments record; abs_error_bound
/// is the largest per-moment standard error.
OrderStatMoments moments_montecarlo(const OrderStatSpec& spec, int k_max,
                                    std::int64_t n_samples, std::uint64_t seed);

/// One draw of N_{rank:lambda}: generate lambda standard normals, take the
/// rank-th smallest.
double sample_order_stat(const OrderStatSpec& spec, RngStream& rng);

/// Density and CDF of N_{rank:lambda}; density is evaluated in the log domain
/// so the (1-Phi)^(lambda-rank) factor cannot underflow prematurely.
double order_stat_log_density(const OrderStatSpec& spec, double x);
double order_stat_density(const OrderStatSpec& spec, double x);
double order_stat_cdf(const OrderStatSpec& spec, double x);

/// E ||N(0, I_n)|| = sqrt(2) Gamma((n+1)/2) / Gamma(n/2), evaluated with
/// log-gamma so it stays finite for n up to at least 1e6.
double expected_chi_norm(int n);

} // namespace csa
