#include "cubesense/rational.hpp"

#include <stdexcept>

namespace cubesense {

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

BigInt falling_factorial(BigInt x, int k) {
    BigInt r = 1;
    for (int i = 0; i < k; ++i) {
        r *= x - i;
        if (r == 0) return 0;
    }
    return r;
}

BigInt factorial(int k) {
    BigInt r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

BigInt ipow(BigInt base, int exp) {
    BigInt r = 1;
    while (exp > 0) {
        if (exp & 1) r *= base;
        base *= base;
        exp >>= 1;
    }
    return r;
}

std::string rat_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_rational(std::string_view s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string_view::npos) return Rational{BigInt{std::string(s)}};
        BigInt num{std::string(s.substr(0, slash))};
        BigInt den{std::string(s.substr(slash + 1))};
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational{num, den};
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational: " + std::string(s));
    }
}

}  // namespace cubesense
