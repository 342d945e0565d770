#include "cubesense/fourier.hpp"

#include <cmath>
#include <stdexcept>

#include "cubesense/sensitivity.hpp"

namespace cubesense {

namespace {
// In-place Walsh-Hadamard butterflies; values stay within +-2^n, so int32 is
// exact for the n <= 24 cap.
void fwht(std::vector<std::int32_t>& a) {
    const std::size_t size = a.size();
    for (std::size_t len = 1; len < size; len <<= 1) {
        for (std::size_t i = 0; i < size; i += len << 1) {
            for (std::size_t j = i; j < i + len; ++j) {
                std::int32_t u = a[j], v = a[j + len];
                a[j] = u + v;
                a[j + len] = u - v;
            }
        }
    }
}
}  // namespace

Spectrum spectrum(const BooleanFunction& f, const Caps& caps) {
    require_cap(f.arity() <= caps.table, "spectrum arity <= " + std::to_string(caps.table),
                "n=" + std::to_string(f.arity()));
    Spectrum s;
    s.n = f.arity();
    s.coeffs.resize(f.table_size());
    for (std::uint64_t x = 0; x < f.table_size(); ++x) s.coeffs[x] = f.value(x);
    fwht(s.coeffs);
    return s;
}

BooleanFunction inverse_spectrum(const Spectrum& s) {
    std::vector<std::int32_t> a = s.coeffs;
    fwht(a);
    const std::int64_t scale = std::int64_t{1} << s.n;
    std::vector<std::uint8_t> bits(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) {
        if (a[x] == scale) bits[x] = 0;
        else if (a[x] == -scale) bits[x] = 1;
        else throw std::invalid_argument("spectrum is not a +-1 valued function");
    }
    return BooleanFunction::from_bits(s.n, bits);
}

int Spectrum::degree() const {
    int deg = 0;
    for (std::size_t sset = 0; sset < coeffs.size(); ++sset)
        if (coeffs[sset] != 0) deg = std::max(deg, std::popcount(sset));
    return deg;
}

std::vector<BigInt> Spectrum::level_coeff_squares() const {
    std::vector<std::int64_t> acc(n + 1, 0);  // each sum <= 4^n <= 2^48
    for (std::size_t sset = 0; sset < coeffs.size(); ++sset) {
        std::int64_t c = coeffs[sset];
        acc[std::popcount(sset)] += c * c;
    }
    return std::vector<BigInt>(acc.begin(), acc.end());
}

int degree(const BooleanFunction& f, const Caps& caps) { return spectrum(f, caps).degree(); }

Rational influence_moment(const Spectrum& s, int k, bool falling) {
    const auto levels = s.level_coeff_squares();
    BigInt num = 0;
    for (int j = 0; j <= s.n; ++j) {
        if (levels[j] == 0) continue;
        num += levels[j] * (falling ? falling_factorial(j, k) : ipow(j, k));
    }
    return Rational{num, pow2(2 * s.n)};
}

MomentReport influence_moments(const BooleanFunction& f, int k, const Caps& caps) {
    if (k < 1) throw std::invalid_argument("moment order must be >= 1");
    const Spectrum s = spectrum(f, caps);
    const SensitivityStats st = sensitivity_stats(f, k);
    return MomentReport{f.arity(), k, influence_moment(s, k, false), influence_moment(s, k, true),
                        st.sk, st.sffk};
}

std::vector<Rational> level_weights(const Spectrum& s) {
    const auto levels = s.level_coeff_squares();
    const BigInt denom = pow2(2 * s.n);
    std::vector<Rational> w;
    w.reserve(levels.size());
    for (const auto& a : levels) w.emplace_back(a, denom);
    return w;
}

std::vector<Rational> level_weights(const BooleanFunction& f, const Caps& caps) {
    return level_weights(spectrum(f, caps));
}

int deg_epsilon(const Spectrum& s, const Rational& eps) {
    if (eps < 0 || eps > 1) throw std::invalid_argument("eps must lie in [0,1]");
    const auto levels = s.level_coeff_squares();
    const BigInt denom = pow2(2 * s.n);
    // tail(k) = sum_{j>=k} W^j; find the least k with tail <= eps.
    BigInt tail = 0;
    int best = s.n + 1;
    for (int k = s.n; k >= 0; --k) {
        tail += levels[k];
        if (Rational{tail, denom} <= eps) best = k;
        else break;
    }
    return best;
}

int deg_epsilon(const BooleanFunction& f, const Rational& eps, const Caps& caps) {
    return deg_epsilon(spectrum(f, caps), eps);
}

Rational level_l1(const Spectrum& s, int k) {
    if (k < 0 || k > s.n) throw std::invalid_argument("level out of range");
    BigInt num = 0;
    for (std::size_t sset = 0; sset < s.coeffs.size(); ++sset)
        if (std::popcount(sset) == k) num += s.coeffs[sset] < 0 ? -s.coeffs[sset] : s.coeffs[sset];
    return Rational{num, pow2(s.n)};
}

Rational level_l1(const BooleanFunction& f, int k, const Caps& caps) {
    return level_l1(spectrum(f, caps), k);
}

double spectral_entropy(const Spectrum& s) {
    const double denom = std::ldexp(1.0, 2 * s.n);
    double h = 0.0;
    for (std::size_t sset = 0; sset < s.coeffs.size(); ++sset) {
        if (s.coeffs[sset] == 0) continue;
        const double c = static_cast<double>(s.coeffs[sset]);
        const double p = c * c / denom;
        h -= p * std::log2(p);
    }
    return h;
}

double spectral_entropy(const BooleanFunction& f, const Caps& caps) {
    return spectral_entropy(spectrum(f, caps));
}

}  // namespace cubesense
