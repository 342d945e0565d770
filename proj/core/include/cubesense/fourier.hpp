#pragma once

#include <vector>

#include "cubesense/boolean_function.hpp"
#include "cubesense/rational.hpp"

namespace cubesense {

// Integer-scaled Fourier transform: coeffs[S] = fhat(S) * 2^n, exactly.
// Parseval then reads sum_S coeffs[S]^2 = 4^n. The subset S is the bitmask
// over coordinates, consistent with CoordSet.
struct Spectrum {
    int n = 0;
    std::vector<std::int32_t> coeffs;

    int degree() const;  // max |S| with coeffs[S] != 0; 0 for constants
    // A_j = sum over |S|=j of coeffs[S]^2 (so W^j = A_j / 4^n).
    std::vector<BigInt> level_coeff_squares() const;
};

Spectrum spectrum(const BooleanFunction& f, const Caps& caps = default_caps());

// Inverse transform; throws std::invalid_argument if the spectrum is not the
// transform of a +-1 valued function.
BooleanFunction inverse_spectrum(const Spectrum& s);

int degree(const BooleanFunction& f, const Caps& caps = default_caps());

// Influence and sensitivity moments of order k, all exact.
struct MomentReport {
    int n = 0;
    int k = 0;
    Rational ik;    // E[|S|^k] under the squared-coefficient distribution
    Rational iffk;  // falling-factorial variant
    Rational sk;    // E_x[s(f,x)^k]
    Rational sffk;  // falling-factorial variant
};

MomentReport influence_moments(const BooleanFunction& f, int k, const Caps& caps = default_caps());
Rational influence_moment(const Spectrum& s, int k, bool falling);

std::vector<Rational> level_weights(const Spectrum& s);
std::vector<Rational> level_weights(const BooleanFunction& f, const Caps& caps = default_caps());

// Minimum k such that the Fourier weight on levels >= k is at most eps
// (non-strict comparison, exact arithmetic). May return n+1.
int deg_epsilon(const Spectrum& s, const Rational& eps);
int deg_epsilon(const BooleanFunction& f, const Rational& eps, const Caps& caps = default_caps());

// Exact L1 mass of level k: sum over |S|=k of |fhat(S)|.
Rational level_l1(const Spectrum& s, int k);
Rational level_l1(const BooleanFunction& f, int k, const Caps& caps = default_caps());

// Entropy of the squared-coefficient distribution in bits, 0*log(1/0) = 0.
// Floating point; relative error stays below 1e-9 for n <= 24.
double spectral_entropy(const Spectrum& s);
double spectral_entropy(const BooleanFunction& f, const Caps& caps = default_caps());

}  // namespace cubesense
