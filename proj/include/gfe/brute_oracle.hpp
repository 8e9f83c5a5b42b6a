#pragma once

// Exhaustive desk-scale search for x^13 + y^13 = z^n and direct checks of the
// elementary facts used in the descent.

#include <optional>
#include <string>
#include <vector>

#include "gfe/ring_core.hpp"
#include "gfe/unit_sieve.hpp"

namespace gfe {

struct SearchConfig {
    long bound = 50;                 // max |a|, |b|
    std::vector<unsigned> exponents;  // each n >= 2
    unsigned threads = 0;

    /// n = 2, ..., max_n.
    static SearchConfig all_up_to(long bound, unsigned max_n);
};

struct Solution {
    Integer a;
    Integer b;
    Integer c;
    unsigned n = 0;
    bool primitive = true;  // gcd(a, b, c) = 1

    bool is_trivial() const;  // ab = 0 or c = 0
    friend bool operator==(const Solution& l, const Solution& r) {
        return l.n == r.n && l.a == r.a && l.b == r.b && l.c == r.c && l.primitive == r.primitive;
    }
    /// Orders by (n, a, b, c).
    friend bool operator<(const Solution& l, const Solution& r);
};

/// a^13 + b^13.
Integer sum13(const Integer& a, const Integer& b);

/// Throws std::invalid_argument when bound < 1 or some n < 2. The result is
/// sorted by (n, a, b, c).
std::vector<Solution> search(const SearchConfig& cfg);

/// "a,b,c,n,primitive" header plus one row per solution.
std::string to_csv(const std::vector<Solution>& sols);

struct GcdFacts {
    Integer a;
    Integer b;
    Integer sum;        // a + b
    Integer phi;        // (a^13 + b^13) / (a + b), or 13 a^12 when a + b = 0
    Integer gcd;        // gcd(a + b, phi)
    bool thirteen_divides_sum = false;
    bool thirteen_divides_phi = false;
    unsigned v13_phi = 0;
    bool thirteen_divides_value = false;  // 13 | a^13 + b^13, i.e. 13 | c
    bool other_primes_one_mod_13 = true;  // every prime l != 13 dividing phi is 1 mod 13
};

/// Throws NotCoprime when gcd(a, b) != 1 and IdentityCheckFailed if any link
/// of the 13-adic equivalence chain or gcd in {1, 13} fails.
GcdFacts gcd_facts(const Integer& a, const Integer& b);

/// (a^13 + b^13) / (a + b) as a binary-form value, valid for a + b = 0.
Integer phi13_value(const Integer& a, const Integer& b);

enum class TrivialFamily { I, II, III, IV };
std::string to_string(TrivialFamily f);

struct UnitWitness {
    TrivialFamily family = TrivialFamily::I;
    SieveCase branch = SieveCase::CaseI;
    CycloNum epsilon;
    std::vector<u64> exponents;   // class of epsilon over sieve_generators()
    bool class_trivial = false;
    bool pair_condition = false;  // (a, b) mod p^2 lies in the sieve candidate set
};

/// For (a, b) in +-(1,0), +-(0,1), +-(1,1), +-(1,-1): the unit epsilon with
/// a + b zeta = epsilon gamma^p (times 1 - zeta when 13 | a + b), its class,
/// and whether the pair passes the sieve's a + b condition. Throws
/// UnsupportedPair otherwise and IdentityCheckFailed if the class of
/// a + b zeta disagrees with that of epsilon.
UnitWitness unit_equation_witness(long a, long b, u64 p);

}  // namespace gfe
