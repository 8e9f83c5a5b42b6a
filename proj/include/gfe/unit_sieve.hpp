#pragma once

// Unit sieve over O_L^* / O_L^*p.
//
// A candidate pair (alpha, beta) mod p^2 yields a class vector
//   Case I   phi(alpha, beta) = class(alpha + beta zeta)
//   Case II  phi(alpha, beta) = class((alpha + beta zeta) / (1 - zeta))
// and survives when it lies in the image of
//   pi : O_L^*/O_L^*p -> prod_i M_i / M_i^p,
// spanned by the cyclotomic units u_a = 1 + zeta + ... + zeta^{a-1}, a = 2..6.

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gfe/residue_rings.hpp"
#include "gfe/ring_core.hpp"

namespace gfe {

enum class SieveCase { CaseI, CaseII };

std::string to_string(SieveCase c);
SieveCase parse_sieve_case(std::string_view text);  // "I", "II", "CASE_I", "CASE_II"

struct CandidatePair {
    long alpha = 0;
    long beta = 0;
    friend auto operator<=>(const CandidatePair&, const CandidatePair&) = default;
};

/// Throws UnsupportedPrime unless p is a prime with p != 2, 3, 13 and p != 1 mod 13.
void require_sieve_prime(u64 p);

/// Pairs 0 <= alpha <= beta < p^2 (or all ordered pairs when `normalized` is
/// false), at most one of them divisible by p, such that alpha + beta (Case I)
/// or 13 (alpha + beta) (Case II) is a p-th power mod p^2. Sorted.
std::vector<CandidatePair> candidate_pairs(u64 p, SieveCase c, bool normalized = true);

/// The p-th powers in Z/p^2, including 0, as a membership table.
std::vector<bool> pth_powers_mod_p2(u64 p);

/// u_a = (1 - zeta^a) / (1 - zeta) for a = 2..6.
std::vector<CycloNum> sieve_generators();

class UnitClassGroup {
public:
    /// Throws KernelNotTrivial when the generator classes have rank < 5.
    explicit UnitClassGroup(u64 p);

    u64 p() const { return p_; }
    const ClassMap& class_map() const { return map_; }
    const std::vector<CycloNum>& generators() const { return generators_; }
    const std::vector<ClassVector>& generator_classes() const { return gen_classes_; }
    int rank() const { return rank_; }
    /// |O_L^*/O_L^*p| = p^5.
    Integer order() const;

    /// Exponents e (entries in [0, p)) with sum e_a class(u_a) = v, or nullopt
    /// when v is outside the image.
    std::optional<std::vector<u64>> preimage(const ClassVector& v) const;

    ClassVector class_of_exponents(const std::vector<u64>& exponents) const;

    /// prod u_a^{e_a} using centred exponents in (-p/2, p/2].
    CycloNum representative(const std::vector<u64>& exponents) const;

private:
    u64 p_;
    ClassMap map_;
    std::vector<CycloNum> generators_;
    std::vector<ClassVector> gen_classes_;
    int rank_ = 0;
    // Row operations T with T A = [I_5; 0] for the 12 x 5 generator matrix A.
    std::vector<std::vector<u64>> transform_;
};

UnitClassGroup build_pi(u64 p);

struct SurvivingUnit {
    std::vector<u64> exponents;  // over sieve_generators(), in [0, p)
    CycloNum representative;
    std::vector<CandidatePair> witnesses;
};

struct SieveReport {
    u64 p = 0;
    SieveCase sieve_case = SieveCase::CaseI;
    std::size_t candidate_count = 0;
    std::vector<CycloNum> generators;
    std::vector<SurvivingUnit> survivors;  // ordered by exponent tuple
    double elapsed_ms = 0.0;

    nlohmann::json to_json() const;
};

struct SieveOptions {
    unsigned threads = 0;  // 0: hardware concurrency
    bool normalized = true;
};

SieveReport run_sieve(u64 p, SieveCase c, const SieveOptions& options = {});
SieveReport run_sieve(const UnitClassGroup& group, SieveCase c, const SieveOptions& options = {});

/// 13 / (1 - zeta)^12.
CycloNum mu0();

struct ExtraneousUnit {
    CycloNum mu;      // mu0^k
    CycloNum gamma0;  // (1 - zeta)^((12k + 1) / p)
    long k = 0;       // 12k = -1 mod p, 1 <= k < p
};

/// Checks 13^k - 13^k zeta = mu gamma0^p exactly before returning.
ExtraneousUnit extraneous_unit(u64 p);

/// Exact unit test: u must be a unit of Z[zeta] (NotAUnit otherwise) and p a
/// sieve prime.
bool is_pth_power_unit(const CycloNum& u, u64 p);

struct ExtraneousNorm {
    CubicNum norm;                // Norm_{L/K}(mu)
    UnitDecomposition exact;      // norm = sign rho^i (1 - rho)^j
    long j = 0;                   // norm = (rho (1 - rho))^j mod p-th powers, 0 <= j < p
};

/// Also asserts i = j, 3j = 2 and j = -8k modulo p.
ExtraneousNorm norm_of_extraneous(u64 p);

}  // namespace gfe
