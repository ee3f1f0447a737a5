#include "rsinsdel/mpoly.hpp"

#include <sstream>
#include <stdexcept>

namespace rsinsdel {

void MultiPoly::add_term(const Monomial& mono, std::uint64_t coeff) {
    coeff = mod_.reduce(coeff);
    if (coeff == 0) return;
    auto [it, inserted] = terms_.try_emplace(mono, coeff);
    if (!inserted) {
        it->second = mod_.add(it->second, coeff);
        if (it->second == 0) terms_.erase(it);
    }
}

MultiPoly MultiPoly::substitute(std::uint32_t var, std::uint64_t value) const {
    MultiPoly out(mod_);
    value = mod_.reduce(value);
    for (const auto& [mono, coeff] : terms_) {
        std::uint32_t exp = 0;
        Monomial rest;
        rest.reserve(mono.size());
        for (const auto& ve : mono) {
            if (ve.first == var) exp = ve.second;
            else rest.push_back(ve);
        }
        if (exp == 0) {
            out.add_term(mono, coeff);
        } else {
            out.add_term(rest, mod_.mul(coeff, mod_.pow(value, exp)));
        }
    }
    return out;
}

std::uint32_t MultiPoly::degree_in(std::uint32_t var) const {
    std::uint32_t deg = 0;
    for (const auto& [mono, coeff] : terms_) {
        for (const auto& [v, e] : mono) {
            if (v == var && e > deg) deg = e;
        }
    }
    return deg;
}

std::uint64_t MultiPoly::evaluate(const std::vector<std::uint64_t>& values) const {
    std::uint64_t acc = 0;
    for (const auto& [mono, coeff] : terms_) {
        std::uint64_t t = coeff;
        for (const auto& [v, e] : mono) {
            if (v == 0 || v > values.size()) throw std::out_of_range("no value for X_" + std::to_string(v));
            t = mod_.mul(t, mod_.pow(values[v - 1], e));
        }
        acc = mod_.add(acc, t);
    }
    return acc;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mono, coeff] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << coeff;
        for (const auto& [v, e] : mono) {
            os << "*X" << v;
            if (e > 1) os << '^' << e;
        }
    }
    return os.str();
}

}  // namespace rsinsdel
