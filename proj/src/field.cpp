#include "rsinsdel/field.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace rsinsdel {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    a %= m;
    while (e > 0) {
        if (e & 1) result = mulmod(result, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return result;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    static constexpr std::uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (std::uint64_t p : small) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These twelve bases are a proven witness set for n < 3.3e24.
    for (std::uint64_t a : small) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

PrimeModulus::PrimeModulus(std::uint64_t q) : q_(q) {
    if (!is_prime(q)) {
        throw std::invalid_argument("modulus " + std::to_string(q) + " is not prime");
    }
}

std::uint64_t PrimeModulus::reduce_signed(std::int64_t x) const noexcept {
    if (x >= 0) return static_cast<std::uint64_t>(x) % q_;
    std::uint64_t mag = static_cast<std::uint64_t>(-(x + 1)) + 1;
    return neg(mag % q_);
}

std::uint64_t PrimeModulus::pow(std::uint64_t a, std::uint64_t e) const noexcept {
    return powmod(a, e, q_);
}

std::uint64_t PrimeModulus::inv(std::uint64_t a) const {
    a %= q_;
    if (a == 0) throw FieldError("inverse of zero in F_" + std::to_string(q_));
    return powmod(a, q_ - 2, q_);
}

void FieldElement::check_same(const FieldElement& o) const {
    if (!(mod_ == o.mod_)) {
        throw FieldError("operands from F_" + std::to_string(mod_.value()) + " and F_" +
                         std::to_string(o.mod_.value()));
    }
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    check_same(o);
    return FieldElement(mod_, mod_.add(value_, o.value_));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    check_same(o);
    return FieldElement(mod_, mod_.sub(value_, o.value_));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    check_same(o);
    return FieldElement(mod_, mod_.mul(value_, o.value_));
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
    check_same(o);
    return FieldElement(mod_, mod_.mul(value_, mod_.inv(o.value_)));
}

FieldElement FieldElement::inv() const { return FieldElement(mod_, mod_.inv(value_)); }

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(RandomSeed s) noexcept {
    return splitmix64(s.seed ^ splitmix64(s.stream + 0x632be59bd9b4e019ULL));
}

Rng::Rng(RandomSeed s) : engine_(derive_seed(s)) {}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: empty range");
    // Largest multiple of bound representable, minus one: reject above it.
    const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % bound + 1) % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x > limit);
    return x % bound;
}

std::vector<std::uint64_t> sample_distinct_residues_avoiding(std::size_t n, std::uint64_t q,
                                                             const std::vector<std::uint64_t>& avoid,
                                                             Rng& rng) {
    std::vector<std::uint64_t> sorted_avoid;
    for (std::uint64_t a : avoid) {
        if (a < q) sorted_avoid.push_back(a);
    }
    std::sort(sorted_avoid.begin(), sorted_avoid.end());
    sorted_avoid.erase(std::unique(sorted_avoid.begin(), sorted_avoid.end()), sorted_avoid.end());
    const std::uint64_t pool = q - sorted_avoid.size();
    if (n > pool) {
        throw std::invalid_argument("cannot draw " + std::to_string(n) + " distinct elements from a pool of size " +
                                    std::to_string(pool));
    }
    std::vector<std::uint64_t> out;
    out.reserve(n);
    if (n == 0) return out;

    if (8 * static_cast<unsigned __int128>(n) > pool) {
        // Dense: partial Fisher-Yates over an implicit array of the allowed
        // values; only displaced slots are materialized.
        auto nth_allowed = [&](std::uint64_t idx) {
            // idx-th value of [0,q) \ avoid, found by skipping the sorted exclusions.
            std::uint64_t v = idx;
            for (std::uint64_t a : sorted_avoid) {
                if (a <= v) ++v;
                else break;
            }
            return v;
        };
        std::unordered_map<std::uint64_t, std::uint64_t> displaced;
        auto slot = [&](std::uint64_t i) {
            auto it = displaced.find(i);
            return it == displaced.end() ? i : it->second;
        };
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t j = i + rng.below(pool - i);
            std::uint64_t vi = slot(i), vj = slot(j);
            displaced[j] = vi;
            displaced[i] = vj;
            out.push_back(nth_allowed(vj));
        }
    } else {
        std::unordered_set<std::uint64_t> used(sorted_avoid.begin(), sorted_avoid.end());
        while (out.size() < n) {
            std::uint64_t v = rng.below(q);
            if (used.insert(v).second) out.push_back(v);
        }
    }
    return out;
}

std::vector<std::uint64_t> sample_distinct_residues(std::size_t n, std::uint64_t q, Rng& rng) {
    return sample_distinct_residues_avoiding(n, q, {}, rng);
}

std::vector<FieldElement> sample_distinct_tuple(std::size_t n, const PrimeModulus& q, Rng& rng) {
    auto raw = sample_distinct_residues(n, q.value(), rng);
    std::vector<FieldElement> out;
    out.reserve(n);
    for (std::uint64_t v : raw) out.emplace_back(q, v);
    return out;
}

std::vector<FieldElement> sample_distinct_tuple(std::size_t n, const PrimeModulus& q, RandomSeed seed) {
    Rng rng(seed);
    return sample_distinct_tuple(n, q, rng);
}

}  // namespace rsinsdel
