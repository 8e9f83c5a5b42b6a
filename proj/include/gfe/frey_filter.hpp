#pragma once

// Modular enhancement of the unit sieve at an auxiliary prime q.
//
// The pair list keeps (a, b) mod q whose class in prod (O_L/q_i)^*/p-th powers
// equals that of a target unit. Frey curves E_{a,b} are read from a JSON data
// file; their traces a_q are counted exhaustively over the residue field of
// a prime above q and compared with target congruences mod p.
//
// Data file layout:
//   {
//     "baseField": "Q(sqrt13)" | "K",
//     "curves": { "a1": [term, ...], ..., "a6": [term, ...] } | null,
//     "targets": [ { "q": 19, "residues": [-9, 3], "prime": 0 }, ... ]
//   }
// with term = { "coeff": "<element>", "a": i, "b": j } meaning coeff * a^i * b^j,
// and <element> the comma-separated coordinate encoding ("c0,c1" over
// Q(sqrt13) in the basis 1, sqrt13; "c0,c1,c2" over K in 1, rho, rho^2).
// "prime" picks the prime above a split q (see FiniteField::residue_field)
// and defaults to 0.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gfe/residue_rings.hpp"
#include "gfe/ring_core.hpp"
#include "gfe/unit_sieve.hpp"

namespace gfe {

// ---------------------------------------------------------------- pair list

struct PairList {
    u64 p = 0;
    u64 q = 0;
    bool trivial_sieve = false;  // p divides no residue-field unit order
    std::vector<CandidatePair> pairs;
};

/// Pairs (a, b) != (0, 0), 0 <= a <= b < q (all ordered pairs when not
/// normalized), restricted to a + b a p-th power mod q when p | q - 1, whose
/// class matches `target`.
PairList mod_q_pair_list(u64 p, u64 q, const CycloNum& target, bool normalized = true);

/// Auxiliary prime used for p in {5, 7, 11, 17, 19, 23, 29, 31, 37}.
std::optional<u64> default_auxiliary_prime(u64 p);

// ---------------------------------------------------------------- finite fields

enum class BaseField { QSqrt13, CubicK };

std::string to_string(BaseField b);
BaseField parse_base_field(std::string_view text);

/// F_q[t]/(m(t)) for a monic irreducible m of degree 1..3, q odd. The base
/// field generator (sqrt13 or rho) maps to t.
class FiniteField {
public:
    using Elem = std::array<u64, 3>;

    FiniteField(u64 q, zm::Poly modulus);

    /// Residue field of a prime above q in the base field. Inert q gives
    /// F_q[s]/(s^2 - 13) or F_q[r]/(r^3 + r^2 - 4r + 1); split q gives F_q with
    /// the generator sent to the `prime_index`-th smallest root of the minimal
    /// polynomial. Throws BadPrime when q is even or 13, or the index is out
    /// of range.
    static FiniteField residue_field(BaseField base, u64 q, int prime_index = 0);
    static bool is_inert(BaseField base, u64 q);

    u64 characteristic() const { return q_; }
    int degree() const { return n_; }
    u64 size() const { return size_; }

    Elem zero() const { return Elem{}; }
    Elem one() const { return Elem{1, 0, 0}; }
    Elem from_integer(long v) const;
    Elem from_index(u64 index) const;  // base-q digits, constant term lowest
    u64 index(const Elem& e) const;

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem pow(Elem a, u64 e) const;
    bool is_zero(const Elem& a) const { return a == Elem{}; }

    /// Image of sum c_i x^i for rational coordinates in the base-field basis.
    /// Throws BadReduction when a denominator is divisible by q.
    Elem reduce(const std::vector<Rational>& coords) const;

private:
    u64 q_;
    int n_;
    u64 size_;
    zm::Poly modulus_;
    std::array<Elem, 3> tpow_{};  // t^0, t^1, t^2
};

// ---------------------------------------------------------------- curves

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with coefficients given by
/// coordinates in the base-field basis (2 for Q(sqrt13), 3 for K).
struct EllipticCurveNF {
    BaseField base = BaseField::QSqrt13;
    std::array<std::vector<Rational>, 5> a;  // a1, a2, a3, a4, a6
    std::string label;

    static EllipticCurveNF over_quadratic(const std::array<QuadNum, 5>& coeffs, std::string label = {});
    static EllipticCurveNF over_cubic(const std::array<CubicNum, 5>& coeffs, std::string label = {});
};

struct ReducedCurve {
    FiniteField field;
    std::array<FiniteField::Elem, 5> a;  // a1, a2, a3, a4, a6

    FiniteField::Elem discriminant() const;
};

inline constexpr u64 kDefaultFieldBudget = 10'000'000;

/// Throws BadPrime, BadReduction (denominator or discriminant vanishes mod
/// the prime) or FieldTooLarge.
ReducedCurve reduce_curve(const EllipticCurveNF& e, u64 q, u64 field_budget = kDefaultFieldBudget,
                          int prime_index = 0);

/// #E(F) including the point at infinity, by a table of square counts.
u64 count_points(const ReducedCurve& e);

/// a_q = |F| + 1 - #E(F).
long reduce_curve_and_trace(const EllipticCurveNF& e, u64 q, u64 field_budget = kDefaultFieldBudget,
                            int prime_index = 0);

// ---------------------------------------------------------------- Frey data

struct PolyTerm {
    std::vector<Rational> coeff;
    unsigned a_exp = 0;
    unsigned b_exp = 0;
};

struct TraceTarget {
    u64 q = 0;
    int prime = 0;
    std::vector<long> residues;
};

struct FreyData {
    BaseField base = BaseField::QSqrt13;
    std::optional<std::array<std::vector<PolyTerm>, 5>> curves;
    std::vector<TraceTarget> targets;

    bool has_curves() const { return curves.has_value(); }
    const TraceTarget* target_for(u64 q) const;
    EllipticCurveNF curve(long a, long b) const;
};

/// Throws ParseError on malformed input.
FreyData parse_frey_data(const nlohmann::json& j);
FreyData load_frey_data(const std::string& path);

/// Path from GFE_FREY_DATA, if set and non-empty.
std::optional<std::string> frey_data_path_from_env();

enum class Verdict { Eliminated, Unresolved };
std::string to_string(Verdict v);

struct PairTrace {
    CandidatePair pair;
    std::optional<long> trace;  // nullopt when the reduction failed
    std::string note;
};

struct EliminationReport {
    u64 p = 0;
    u64 q = 0;
    bool trivial_sieve = false;
    std::vector<long> targets;  // residues mod p, in [0, p)
    std::vector<PairTrace> traces;
    std::vector<CandidatePair> unresolved;
    Verdict verdict = Verdict::Unresolved;

    nlohmann::json to_json() const;
};

/// Pair list for the extraneous unit at (p, q), then a_q(E_{a,b}) mod p for
/// every pair against every target residue. Throws MissingFreyData when no
/// curve table or no targets for q are configured.
EliminationReport eliminate_extraneous(u64 p, u64 q, const FreyData* data, unsigned threads = 0);

}  // namespace gfe
