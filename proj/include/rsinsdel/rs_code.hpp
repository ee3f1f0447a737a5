// Reed-Solomon codes RS_{n,k}(alpha) over prime fields.
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rsinsdel/field.hpp"

namespace rsinsdel {

/// Message polynomial f_0 + f_1 x + ... + f_{k-1} x^{k-1}; leading zeros allowed.
class Polynomial {
public:
    Polynomial(const PrimeModulus& mod, std::vector<std::uint64_t> coefficients);

    std::size_t size() const noexcept { return coeffs_.size(); }
    const std::vector<std::uint64_t>& coefficients() const noexcept { return coeffs_; }
    const PrimeModulus& modulus() const noexcept { return mod_; }

    /// Horner evaluation.
    std::uint64_t eval(std::uint64_t x) const noexcept;
    FieldElement eval(const FieldElement& x) const;

    Polynomial operator+(const Polynomial& o) const;

private:
    PrimeModulus mod_;
    std::vector<std::uint64_t> coeffs_;
};

using Codeword = std::vector<std::uint64_t>;

class RsCode {
public:
    /// Requires 1 <= k < n <= q and pairwise distinct alpha.
    RsCode(std::size_t n, std::size_t k, const PrimeModulus& q, std::vector<std::uint64_t> alpha);

    std::size_t n() const noexcept { return alpha_.size(); }
    std::size_t k() const noexcept { return k_; }
    const PrimeModulus& modulus() const noexcept { return mod_; }
    std::uint64_t q() const noexcept { return mod_.value(); }
    /// Evaluation points; alpha()[i-1] is the paper-style alpha_i.
    const std::vector<std::uint64_t>& alpha() const noexcept { return alpha_; }

    /// Throws std::invalid_argument when f does not have exactly k coefficients
    /// over this code's field.
    Codeword encode(const Polynomial& f) const;

private:
    std::size_t k_;
    PrimeModulus mod_;
    std::vector<std::uint64_t> alpha_;
};

RsCode sample_random_code(std::size_t n, std::size_t k, const PrimeModulus& q, RandomSeed seed);
RsCode sample_random_code(std::size_t n, std::size_t k, const PrimeModulus& q, Rng& rng);

inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 22;

/// Streams all q^k messages in lexicographic coefficient order (f_0 most
/// significant), each with its codeword.
class CodewordEnumerator {
public:
    /// Throws std::invalid_argument when q^k exceeds `budget`.
    explicit CodewordEnumerator(const RsCode& code, std::uint64_t budget = kDefaultEnumerationBudget);

    std::uint64_t total() const noexcept { return total_; }
    std::optional<std::pair<Polynomial, Codeword>> next();

private:
    const RsCode* code_;
    std::uint64_t total_;
    std::uint64_t emitted_ = 0;
    std::vector<std::uint64_t> digits_;
};

/// q^k, or nullopt if it exceeds `budget`.
std::optional<std::uint64_t> message_count(std::uint64_t q, std::size_t k, std::uint64_t budget);

}  // namespace rsinsdel
