#pragma once

// Small integer helpers shared by the residue-ring, sieve, curve and oracle
// modules. Word-sized routines use unsigned 128-bit intermediates.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace gfe::nt {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u128 exp, u64 m);

/// Inverse of a modulo m; nullopt when gcd(a, m) != 1.
std::optional<u64> invmod(u64 a, u64 m);

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(u64 n);

/// Multiplicative order of a modulo n (gcd(a, n) must be 1).
u64 multiplicative_order(u64 a, u64 n);

/// Integer power as u128; the caller guarantees no overflow.
u128 ipow(u64 base, unsigned exp);

mpz_class to_mpz(u128 v);

using Factorization = std::vector<std::pair<mpz_class, unsigned>>;

/// Prime factorization of |n| (n != 0) by trial division and Pollard rho.
/// Factors come back sorted ascending.
Factorization factor(const mpz_class& n);

/// All positive divisors of |n|, sorted. Throws CapExceeded when there would
/// be more than `cap` of them.
std::vector<mpz_class> divisors(const mpz_class& n, std::size_t cap = 1'000'000);

/// Exact n-th root of x when x is a perfect n-th power (negative x allowed
/// for odd n).
std::optional<mpz_class> exact_root(const mpz_class& x, unsigned n);

/// p-adic valuation of n != 0.
unsigned valuation(mpz_class n, unsigned long p);

}  // namespace gfe::nt
