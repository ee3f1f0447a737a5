#include "rsinsdel/bounds.hpp"

#include <boost/math/distributions/beta.hpp>
#include <cmath>
#include <stdexcept>

namespace rsinsdel {

ProbabilityBound make_bound(Rational exact) {
    ProbabilityBound b;
    b.value = to_double(exact);
    b.vacuous = exact >= 1;
    b.exact = std::move(exact);
    return b;
}

CertificateCount certificate_count_bound(std::size_t k, std::size_t r) {
    if (k < 1 || r < 1) throw std::invalid_argument("certificate_count_bound: k and r must be >= 1");
    return {binomial(2 * k - 2 + r, r), BigInt(1) << (2 * k + r - 2)};
}

namespace {

Rational rpow(const Rational& base, std::size_t e) {
    Rational out = 1;
    for (std::size_t i = 0; i < e; ++i) out *= base;
    return out;
}

void require_q_at_least_n(std::size_t n, std::uint64_t q) {
    if (q < n) throw std::invalid_argument("bound: need q >= n");
}

Rational per_row(std::size_t n, std::size_t k, std::uint64_t q) {
    // 2(k-1)/(q-n+1)
    return Rational(BigInt(2 * (k - 1)), BigInt(q - n + 1));
}

Threshold make_threshold(const Rational& exponent, const BigInt& mult, const BigInt& add, double mult_d, double add_d) {
    // value = 2^exponent * mult + add
    Threshold t;
    const double e = to_double(exponent);
    if (boost::multiprecision::denominator(exponent) == 1 && exponent < 4096) {
        BigInt v = (BigInt(1) << static_cast<unsigned>(boost::multiprecision::numerator(exponent))) * mult + add;
        t.exact = v;
    }
    // log2(2^e m + a) = e + log2(m) + log2(1 + a / (2^e m))
    t.log2_value = e + std::log2(mult_d) + std::log2(1.0 + add_d / (std::exp2(std::min(e, 1000.0)) * mult_d));
    return t;
}

}  // namespace

bool Threshold::met_by(std::uint64_t q) const {
    if (exact) return BigInt(q) >= *exact;
    return std::log2(static_cast<double>(q)) >= log2_value;
}

ProbabilityBound failure_prob_bound_quadratic_r(std::size_t n, std::size_t k, std::uint64_t q, std::size_t r) {
    require_q_at_least_n(n, q);
    return make_bound(rpow(Rational(static_cast<std::int64_t>(n)) * per_row(n, k, q), r));
}

ProbabilityBound failure_prob_bound_quadratic(std::size_t n, std::size_t k, std::uint64_t q, const Rational& eps) {
    if (eps < 0) throw std::invalid_argument("bound: eps must be nonnegative");
    const BigInt r = ceil(eps * static_cast<std::int64_t>(n) / 2);
    return failure_prob_bound_quadratic_r(n, k, q, r.convert_to<std::size_t>());
}

ProbabilityBound failure_prob_bound_linear(std::size_t n, std::size_t k, std::uint64_t q, const Rational& eps0,
                                           std::size_t r) {
    require_q_at_least_n(n, q);
    if (eps0 <= 0 || eps0 >= 1) throw std::invalid_argument("bound: eps0 must lie in (0, 1)");
    const Rational p = (1 / eps0 + 1) * per_row(n, k, q);
    return make_bound(Rational(BigInt(1) << (2 * k + r - 2)) * rpow(p, r));
}

ProbabilityBound schwartz_zippel_bound(std::size_t n, std::size_t d, std::uint64_t t_size) {
    if (t_size < n) throw std::invalid_argument("schwartz_zippel_bound: |T| < n");
    return make_bound(Rational(BigInt(n) * d, BigInt(t_size - n + 1)));
}

Threshold threshold_m1(std::size_t n, std::size_t k, const Rational& eps) {
    if (eps <= 0) throw std::invalid_argument("threshold_m1: eps must be positive");
    // (1 + 2*2^{6/eps}*k) n = 2^{6/eps} * 2kn + n
    return make_threshold(Rational(6) / eps, BigInt(2 * k * n), BigInt(n), 2.0 * k * n, static_cast<double>(n));
}

Threshold threshold_main(std::size_t n, std::size_t k, const Rational& eps, const Rational& c) {
    if (eps <= 0 || c <= 0) throw std::invalid_argument("threshold_main: eps and c must be positive");
    return make_threshold(c / (eps * eps), BigInt(k), BigInt(n), static_cast<double>(k), static_cast<double>(n));
}

std::pair<double, double> clopper_pearson(std::uint64_t failures, std::uint64_t trials, double confidence) {
    if (trials == 0) throw std::invalid_argument("clopper_pearson: zero trials");
    if (failures > trials) throw std::invalid_argument("clopper_pearson: failures > trials");
    const double alpha = 1.0 - confidence;
    const double x = static_cast<double>(failures), m = static_cast<double>(trials);
    double lo = 0.0, hi = 1.0;
    if (failures > 0) lo = boost::math::ibeta_inv(x, m - x + 1, alpha / 2);
    if (failures < trials) hi = boost::math::ibeta_inv(x + 1, m - x, 1 - alpha / 2);
    return {lo, hi};
}

}  // namespace rsinsdel
