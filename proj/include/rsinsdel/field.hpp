// Prime-field arithmetic and seeded sampling of evaluation tuples.
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsinsdel {

/// Raised on arithmetic that has no defined result (inverse of zero, mixed moduli).
class FieldError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// The modulus q of F_q. Construction rejects composites.
///
/// Besides identifying the field, the modulus carries the raw residue
/// kernels (`add`, `mul`, ...) used by the matrix code, which works on
/// plain `uint64_t` residues in [0, q) for speed.
class PrimeModulus {
public:
    explicit PrimeModulus(std::uint64_t q);

    std::uint64_t value() const noexcept { return q_; }

    std::uint64_t reduce(std::uint64_t x) const noexcept { return x % q_; }
    std::uint64_t reduce_signed(std::int64_t x) const noexcept;

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept {
        std::uint64_t s = a + b;
        return (s >= q_ || s < a) ? s - q_ : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept {
        return a >= b ? a - b : a + (q_ - b);
    }
    std::uint64_t neg(std::uint64_t a) const noexcept { return a == 0 ? 0 : q_ - a; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q_);
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const noexcept;
    /// Throws FieldError when a == 0.
    std::uint64_t inv(std::uint64_t a) const;

    friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

private:
    std::uint64_t q_;
};

/// An element of F_q. Binary operations require both operands to share a modulus.
class FieldElement {
public:
    FieldElement(const PrimeModulus& mod, std::uint64_t value)
        : value_(mod.reduce(value)), mod_(mod) {}

    static FieldElement from_signed(const PrimeModulus& mod, std::int64_t value) {
        return FieldElement(mod, mod.reduce_signed(value));
    }

    std::uint64_t value() const noexcept { return value_; }
    const PrimeModulus& modulus() const noexcept { return mod_; }
    bool is_zero() const noexcept { return value_ == 0; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const { return FieldElement(mod_, mod_.neg(value_)); }
    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

    FieldElement inv() const;
    FieldElement pow(std::uint64_t e) const { return FieldElement(mod_, mod_.pow(value_, e)); }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.mod_ == b.mod_ && a.value_ == b.value_;
    }

private:
    void check_same(const FieldElement& o) const;

    std::uint64_t value_;
    PrimeModulus mod_;
};

/// Identifies one reproducible random stream.
struct RandomSeed {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// The engine seed an Rng built from `s` starts from.
std::uint64_t derive_seed(RandomSeed s) noexcept;

/// Seeded generator. Bounded draws use rejection on top of mt19937_64, so
/// every platform produces the same sequence for the same RandomSeed.
class Rng {
public:
    explicit Rng(RandomSeed s);

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
};

/// n pairwise-distinct residues, uniform over all ordered n-tuples of
/// distinct elements of F_q. Throws std::invalid_argument when n > q.
std::vector<std::uint64_t> sample_distinct_residues(std::size_t n, std::uint64_t q, Rng& rng);

/// Same, but excludes every value in `avoid` (which must itself be duplicate free).
std::vector<std::uint64_t> sample_distinct_residues_avoiding(std::size_t n, std::uint64_t q,
                                                             const std::vector<std::uint64_t>& avoid,
                                                             Rng& rng);

std::vector<FieldElement> sample_distinct_tuple(std::size_t n, const PrimeModulus& q, RandomSeed seed);
std::vector<FieldElement> sample_distinct_tuple(std::size_t n, const PrimeModulus& q, Rng& rng);

}  // namespace rsinsdel
