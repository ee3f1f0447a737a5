// Closed-form failure-probability and counting bounds, plus the alphabet-size
// thresholds of the two main theorems and Clopper-Pearson intervals.
#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "rsinsdel/rational.hpp"

namespace rsinsdel {

struct ProbabilityBound {
    Rational exact;
    double value = 0.0;
    bool vacuous = false;  // exact >= 1
};

ProbabilityBound make_bound(Rational exact);

struct CertificateCount {
    BigInt exact;  // C(2k-2+r, r)
    BigInt bound;  // 2^{2k+r-2}
};

/// Requires k, r >= 1.
CertificateCount certificate_count_bound(std::size_t k, std::size_t r);

/// (2n(k-1)/(q-n+1))^r with r = ceil(eps*n/2). Requires q >= n.
ProbabilityBound failure_prob_bound_quadratic(std::size_t n, std::size_t k, std::uint64_t q, const Rational& eps);
/// Same base with an explicit exponent r.
ProbabilityBound failure_prob_bound_quadratic_r(std::size_t n, std::size_t k, std::uint64_t q, std::size_t r);

/// 2^{2k+r-2} p^r, p = (1/eps0 + 1) * 2(k-1)/(q-n+1). Requires q >= n, 0 < eps0 < 1.
ProbabilityBound failure_prob_bound_linear(std::size_t n, std::size_t k, std::uint64_t q, const Rational& eps0,
                                           std::size_t r);

/// n d / (T - n + 1). Throws std::invalid_argument when T < n.
ProbabilityBound schwartz_zippel_bound(std::size_t n, std::size_t d, std::uint64_t t_size);

struct Threshold {
    double log2_value = 0.0;
    std::optional<BigInt> exact;  // when the power of two has an integer exponent below 4096

    /// Whether q meets the threshold; decided exactly when possible.
    bool met_by(std::uint64_t q) const;
};

/// q >= (1 + 2 * 2^{6/eps} k) n.  Requires eps > 0.
Threshold threshold_m1(std::size_t n, std::size_t k, const Rational& eps);
/// q >= n + 2^{c/eps^2} k.  Requires eps > 0, c > 0.
Threshold threshold_main(std::size_t n, std::size_t k, const Rational& eps, const Rational& c = Rational(64));

/// Exact two-sided Clopper-Pearson interval at the given confidence.
std::pair<double, double> clopper_pearson(std::uint64_t failures, std::uint64_t trials, double confidence = 0.95);

}  // namespace rsinsdel
