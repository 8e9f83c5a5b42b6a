#pragma once

// Residue rings of Z[zeta_13] that the unit sieve maps into:
//   QuotP2  (Z/p^2)[t]/(G_i)   ~ O_L / p_i^2, G_i the Hensel lift of g_i
//   QuotQ   (Z/q)[t]/(g_i)     ~ O_L / q_i = F_{q^f}
// where Phi_13 = g_1 ... g_s mod p (resp. q), and the p-th power class maps
// M -> M / M^p expressed as F_p-vectors.

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "gfe/ring_core.hpp"
#include "gfe/zm_poly.hpp"

namespace gfe {

using nt::u128;
using nt::u64;

struct PrimeFactorization {
    u64 p = 0;
    int f = 0;  // residue degree = order of p mod 13
    int s = 0;  // number of primes above p
    std::vector<zm::Poly> factors;  // monic, mod p, sorted lexicographically (constant term first)
    std::vector<zm::Poly> lifts;    // monic Hensel lifts mod p^2, same order
};

/// Factors Phi_13 modulo a prime p != 13 and lifts the factors to p^2.
/// Throws BadPrime for p = 13 or composite p.
PrimeFactorization factor_13th_cyclotomic_mod(u64 p);

enum class RingKind { QuotP2, QuotQ };

/// Element of a residue ring: coefficients of 1, t, ..., t^{f-1}; unused
/// trailing slots stay zero.
using RingElement = std::array<u64, 12>;

class ResidueRing {
public:
    /// Component `index` of the factorization; QuotP2 uses the lift mod p^2,
    /// QuotQ the factor mod q.
    ResidueRing(const PrimeFactorization& fac, std::size_t index, RingKind kind);

    RingKind kind() const { return kind_; }
    u64 prime() const { return prime_; }
    u64 modulus() const { return modulus_; }
    int degree() const { return f_; }
    const zm::Poly& modulus_poly() const { return poly_; }
    Integer unit_group_order() const { return order_; }
    /// |(O/q_i)^*| for the residue field, i.e. prime^f - 1.
    u128 residue_field_units() const { return field_units_; }

    RingElement zero() const { return RingElement{}; }
    RingElement one() const;
    RingElement from_integer(long v) const;

    RingElement add(const RingElement& a, const RingElement& b) const;
    RingElement mul(const RingElement& a, const RingElement& b) const;
    RingElement pow(RingElement a, u128 e) const;
    bool is_unit(const RingElement& a) const;

    /// Image of x under zeta -> t. Throws NonIntegralDenominator when a
    /// denominator is not invertible modulo the characteristic.
    RingElement reduce(const CycloNum& x) const;

    /// Image of a + b zeta.
    RingElement reduce_linear(long a, long b) const;

    /// Dimension of M/M^p for this component: f for QuotP2, 1 or 0 for QuotQ.
    int class_dimension(u64 p) const;

    /// p-th power class of a unit. QuotP2 requires p == prime().
    std::vector<u64> pth_power_class(const RingElement& u, u64 p) const;

    /// Smallest primitive element (QuotQ only), searched in increasing order
    /// of sum c_i q^i.
    const RingElement& generator() const;

private:
    RingKind kind_;
    u64 prime_;
    u64 modulus_;
    int f_;
    zm::Poly poly_;
    Integer order_;
    u128 field_units_;
    std::array<RingElement, 12> zeta_powers_{};  // t^i mod poly, i = 0..11
    std::shared_ptr<const RingElement> generator_;
};

/// Per-component F_p-vectors; addition corresponds to multiplication in the
/// product of unit groups.
struct ClassVector {
    u64 p = 0;
    std::vector<std::vector<u64>> components;

    bool is_zero() const;
    std::size_t dimension() const;
    std::vector<u64> flatten() const;
    friend ClassVector operator+(const ClassVector& a, const ClassVector& b);
    friend ClassVector operator-(const ClassVector& a);
    friend ClassVector operator-(const ClassVector& a, const ClassVector& b) { return a + (-b); }
    friend bool operator==(const ClassVector&, const ClassVector&) = default;
};

/// Class map O_L (local units) -> prod M_i / M_i^p over the primes above
/// `modulus`. With modulus == p the components are the QuotP2 rings;
/// otherwise the QuotQ fields.
class ClassMap {
public:
    ClassMap(u64 p, u64 modulus);

    u64 p() const { return p_; }
    u64 modulus() const { return modulus_; }
    const PrimeFactorization& factorization() const { return fac_; }
    const std::vector<ResidueRing>& rings() const { return rings_; }
    std::size_t dimension() const;

    ClassVector operator()(const CycloNum& x) const;
    ClassVector of_linear(long a, long b) const;  // class of a + b zeta
    ClassVector of_elements(const std::vector<RingElement>& per_ring) const;

private:
    u64 p_;
    u64 modulus_;
    PrimeFactorization fac_;
    std::vector<ResidueRing> rings_;
};

ClassVector class_vector(const CycloNum& x, u64 p, u64 modulus);

}  // namespace gfe
