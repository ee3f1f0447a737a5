// Sparse multivariate polynomials over F_q in variables X_1..X_n.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rsinsdel/field.hpp"

namespace rsinsdel {

/// Sorted (variable, exponent) pairs with positive exponents; empty is the constant monomial.
using Monomial = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

class MultiPoly {
public:
    explicit MultiPoly(const PrimeModulus& mod) : mod_(mod) {}

    const PrimeModulus& modulus() const noexcept { return mod_; }
    const std::map<Monomial, std::uint64_t>& terms() const noexcept { return terms_; }
    std::size_t term_count() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Adds coeff * mono; terms cancelling to zero are removed.
    void add_term(const Monomial& mono, std::uint64_t coeff);

    /// Replaces X_var by a constant.
    MultiPoly substitute(std::uint32_t var, std::uint64_t value) const;
    void substitute_in_place(std::uint32_t var, std::uint64_t value) { *this = substitute(var, value); }

    /// Largest exponent of X_var over all terms (0 for the zero polynomial).
    std::uint32_t degree_in(std::uint32_t var) const;

    /// Evaluates with values[v-1] for X_v.
    std::uint64_t evaluate(const std::vector<std::uint64_t>& values) const;

    std::string to_string() const;

private:
    PrimeModulus mod_;
    std::map<Monomial, std::uint64_t> terms_;
};

}  // namespace rsinsdel
