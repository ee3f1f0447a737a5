#include "rsinsdel/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace rsinsdel {

BigInt floor(const Rational& x) {
    const BigInt num = boost::multiprecision::numerator(x);
    const BigInt den = boost::multiprecision::denominator(x);  // always positive
    BigInt q = num / den;
    if (num < 0 && q * den != num) q -= 1;
    return q;
}

BigInt ceil(const Rational& x) { return -floor(-x); }

double to_double(const Rational& x) { return x.convert_to<double>(); }

std::string to_string(const Rational& x) {
    const BigInt den = boost::multiprecision::denominator(x);
    if (den == 1) return boost::multiprecision::numerator(x).str();
    return boost::multiprecision::numerator(x).str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
    auto fail = [&]() { return std::invalid_argument("not a rational number: '" + text + "'"); };
    if (text.empty()) throw fail();
    auto parse_int = [&](const std::string& s) {
        if (s.empty()) throw fail();
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw fail();
        for (std::size_t j = i; j < s.size(); ++j) {
            if (!std::isdigit(static_cast<unsigned char>(s[j]))) throw fail();
        }
        return BigInt(s[0] == '+' ? s.substr(1) : s);
    };
    if (auto slash = text.find('/'); slash != std::string::npos) {
        BigInt den = parse_int(text.substr(slash + 1));
        if (den == 0) throw fail();
        return Rational(parse_int(text.substr(0, slash)), den);
    }
    if (auto dot = text.find('.'); dot != std::string::npos) {
        std::string whole = text.substr(0, dot);
        std::string frac = text.substr(dot + 1);
        bool negative = !whole.empty() && whole[0] == '-';
        if (whole.empty() || whole == "-" || whole == "+") whole += "0";
        if (frac.empty()) frac = "0";
        BigInt w = parse_int(whole);
        BigInt f = parse_int(frac);
        if (frac[0] == '-' || frac[0] == '+') throw fail();
        BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
        BigInt mag = (w < 0 ? BigInt(-w) : w) * scale + f;
        return Rational(negative ? BigInt(-mag) : mag, scale);
    }
    return Rational(parse_int(text));
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

}  // namespace rsinsdel
