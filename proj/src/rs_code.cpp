#include "rsinsdel/rs_code.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace rsinsdel {

Polynomial::Polynomial(const PrimeModulus& mod, std::vector<std::uint64_t> coefficients)
    : mod_(mod), coeffs_(std::move(coefficients)) {
    for (auto& c : coeffs_) c = mod_.reduce(c);
}

std::uint64_t Polynomial::eval(std::uint64_t x) const noexcept {
    std::uint64_t acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = mod_.add(mod_.mul(acc, x), *it);
    }
    return acc;
}

FieldElement Polynomial::eval(const FieldElement& x) const {
    if (!(x.modulus() == mod_)) throw FieldError("evaluation point from a different field");
    return FieldElement(mod_, eval(x.value()));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    if (!(o.mod_ == mod_)) throw FieldError("polynomials over different fields");
    std::vector<std::uint64_t> sum(std::max(size(), o.size()), 0);
    for (std::size_t i = 0; i < sum.size(); ++i) {
        std::uint64_t a = i < size() ? coeffs_[i] : 0;
        std::uint64_t b = i < o.size() ? o.coeffs_[i] : 0;
        sum[i] = mod_.add(a, b);
    }
    return Polynomial(mod_, std::move(sum));
}

RsCode::RsCode(std::size_t n, std::size_t k, const PrimeModulus& q, std::vector<std::uint64_t> alpha)
    : k_(k), mod_(q), alpha_(std::move(alpha)) {
    if (k == 0 || k >= n) {
        throw std::invalid_argument("RS code needs 1 <= k < n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
    if (n > q.value()) {
        throw std::invalid_argument("RS code needs n <= q, got n=" + std::to_string(n) + " q=" + std::to_string(q.value()));
    }
    if (alpha_.size() != n) {
        throw std::invalid_argument("expected " + std::to_string(n) + " evaluation points, got " +
                                    std::to_string(alpha_.size()));
    }
    std::unordered_set<std::uint64_t> seen;
    for (auto& a : alpha_) {
        if (a >= q.value()) throw std::invalid_argument("evaluation point " + std::to_string(a) + " not reduced mod q");
        if (!seen.insert(a).second) throw std::invalid_argument("evaluation points are not distinct");
    }
}

Codeword RsCode::encode(const Polynomial& f) const {
    if (f.size() != k_) {
        throw std::invalid_argument("message has " + std::to_string(f.size()) + " coefficients, code dimension is " +
                                    std::to_string(k_));
    }
    if (!(f.modulus() == mod_)) throw FieldError("message polynomial over a different field");
    Codeword c(alpha_.size());
    std::transform(alpha_.begin(), alpha_.end(), c.begin(), [&](std::uint64_t a) { return f.eval(a); });
    return c;
}

RsCode sample_random_code(std::size_t n, std::size_t k, const PrimeModulus& q, Rng& rng) {
    if (k == 0 || k >= n || n > q.value()) {
        throw std::invalid_argument("random RS code needs 1 <= k < n <= q");
    }
    return RsCode(n, k, q, sample_distinct_residues(n, q.value(), rng));
}

RsCode sample_random_code(std::size_t n, std::size_t k, const PrimeModulus& q, RandomSeed seed) {
    Rng rng(seed);
    return sample_random_code(n, k, q, rng);
}

std::optional<std::uint64_t> message_count(std::uint64_t q, std::size_t k, std::uint64_t budget) {
    unsigned __int128 total = 1;
    for (std::size_t i = 0; i < k; ++i) {
        total *= q;
        if (total > budget) return std::nullopt;
    }
    return static_cast<std::uint64_t>(total);
}

CodewordEnumerator::CodewordEnumerator(const RsCode& code, std::uint64_t budget)
    : code_(&code), digits_(code.k(), 0) {
    auto total = message_count(code.q(), code.k(), budget);
    if (!total) {
        throw std::invalid_argument("enumeration of q^k = " + std::to_string(code.q()) + "^" + std::to_string(code.k()) +
                                    " messages exceeds budget " + std::to_string(budget));
    }
    total_ = *total;
}

std::optional<std::pair<Polynomial, Codeword>> CodewordEnumerator::next() {
    if (emitted_ == total_) return std::nullopt;
    Polynomial f(code_->modulus(), digits_);
    Codeword c = code_->encode(f);
    ++emitted_;
    // Odometer increment; the last coefficient varies fastest.
    for (std::size_t i = digits_.size(); i-- > 0;) {
        if (++digits_[i] < code_->q()) break;
        digits_[i] = 0;
    }
    return std::make_pair(std::move(f), std::move(c));
}

}  // namespace rsinsdel
