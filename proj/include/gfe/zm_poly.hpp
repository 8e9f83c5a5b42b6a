#pragma once

// Dense univariate polynomials over Z/mZ for word-sized m, coefficients
// stored lowest degree first with no trailing zeros. Division and gcd assume
// the relevant leading coefficients are invertible mod m.

#include <cstdint>
#include <random>
#include <vector>

#include "gfe/number_theory.hpp"

namespace gfe::zm {

using nt::u128;
using nt::u64;
using Poly = std::vector<u64>;

void trim(Poly& a);
int degree(const Poly& a);  // -1 for the zero polynomial

Poly add(const Poly& a, const Poly& b, u64 m);
Poly sub(const Poly& a, const Poly& b, u64 m);
Poly mul(const Poly& a, const Poly& b, u64 m);
Poly scale(const Poly& a, u64 c, u64 m);

/// Quotient and remainder; b must have an invertible leading coefficient.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, u64 m);
inline Poly mod(const Poly& a, const Poly& b, u64 m) { return divmod(a, b, m).second; }

Poly monic(const Poly& a, u64 m);

/// Monic gcd over a prime field F_m.
Poly gcd(Poly a, Poly b, u64 m);

/// (g, s, t) with s a + t b = g, g monic gcd, over a prime field.
struct ExtGcd {
    Poly g, s, t;
};
ExtGcd ext_gcd(const Poly& a, const Poly& b, u64 m);

/// base^exp mod (modulus, m).
Poly powmod(Poly base, u128 exp, const Poly& modulus, u64 m);

/// Reduces an integer-coefficient polynomial mod m.
Poly from_signed(const std::vector<long>& coeffs, u64 m);

}  // namespace gfe::zm
