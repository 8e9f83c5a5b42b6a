#pragma once

// Exact arithmetic in L = Q(zeta_13), its cubic subfield K = Q(rho) and the
// quadratic subfield Q(sqrt 13).
//
// Elements are dense coordinate vectors of GMP rationals:
//   CycloNum  basis 1, zeta, ..., zeta^11        (reduced mod Phi_13)
//   CubicNum  basis 1, rho, rho^2                (rho^3 + rho^2 - 4 rho + 1 = 0)
//   QuadNum   basis 1, sqrt13
// with rho = zeta + zeta^-1 + zeta^5 + zeta^-5. All values are immutable once
// built and every free function is pure.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace gfe {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses a single rational in slash form ("3", "-7/4"). Throws ParseError.
Rational parse_rational(std::string_view text);

class CycloNum {
public:
    static constexpr int kDegree = 12;
    using Coords = std::array<Rational, kDegree>;

    CycloNum() = default;
    explicit CycloNum(Coords coords) : coords_(std::move(coords)) {}
    CycloNum(long value) { coords_[0] = value; }  // NOLINT(google-explicit-constructor)
    CycloNum(const Rational& value) { coords_[0] = value; }  // NOLINT(google-explicit-constructor)

    /// zeta^k for any integer k.
    static CycloNum zeta_power(long k);
    static CycloNum zeta() { return zeta_power(1); }

    const Coords& coords() const { return coords_; }
    const Rational& operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }

    bool is_zero() const;
    bool is_integral() const;
    /// True when the element lies in Q (coordinates 1..11 vanish).
    bool is_rational() const;

    /// Least common multiple of coordinate denominators.
    Integer denominator() const;

    /// Absolute norm N_{L/Q}.
    Rational norm() const;
    CycloNum inverse() const;
    CycloNum pow(long exponent) const;

    CycloNum operator-() const;
    CycloNum& operator+=(const CycloNum& rhs);
    CycloNum& operator-=(const CycloNum& rhs);
    CycloNum& operator*=(const CycloNum& rhs);
    CycloNum& operator/=(const CycloNum& rhs) { return *this *= rhs.inverse(); }

    friend CycloNum operator+(CycloNum a, const CycloNum& b) { return a += b; }
    friend CycloNum operator-(CycloNum a, const CycloNum& b) { return a -= b; }
    friend CycloNum operator*(const CycloNum& a, const CycloNum& b);
    friend CycloNum operator/(const CycloNum& a, const CycloNum& b) { return a * b.inverse(); }
    friend bool operator==(const CycloNum& a, const CycloNum& b) { return a.coords_ == b.coords_; }

    /// "c0,c1,...,c11" with slash-form rationals.
    std::string to_string() const;
    static CycloNum parse(std::string_view text);
    /// Polynomial in zeta, highest power first, e.g. "-2ζ^11 - 4ζ^10 - 4".
    std::string pretty() const;

private:
    Coords coords_{};
};

class CubicNum {
public:
    using Coords = std::array<Rational, 3>;

    CubicNum() = default;
    explicit CubicNum(Coords coords) : coords_(std::move(coords)) {}
    CubicNum(const Rational& c0, const Rational& c1, const Rational& c2) : coords_{c0, c1, c2} {}
    CubicNum(long value) { coords_[0] = value; }  // NOLINT(google-explicit-constructor)
    CubicNum(const Rational& value) { coords_[0] = value; }  // NOLINT(google-explicit-constructor)

    static CubicNum rho() { return CubicNum(0, 1, 0); }

    const Coords& coords() const { return coords_; }
    const Rational& operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }

    bool is_zero() const;
    bool is_integral() const;
    bool is_rational() const { return coords_[1] == 0 && coords_[2] == 0; }

    CubicNum inverse() const;
    CubicNum pow(long exponent) const;

    CubicNum operator-() const;
    CubicNum& operator+=(const CubicNum& rhs);
    CubicNum& operator-=(const CubicNum& rhs);
    CubicNum& operator*=(const CubicNum& rhs);
    CubicNum& operator/=(const CubicNum& rhs) { return *this *= rhs.inverse(); }

    friend CubicNum operator+(CubicNum a, const CubicNum& b) { return a += b; }
    friend CubicNum operator-(CubicNum a, const CubicNum& b) { return a -= b; }
    friend CubicNum operator*(const CubicNum& a, const CubicNum& b);
    friend CubicNum operator/(const CubicNum& a, const CubicNum& b) { return a * b.inverse(); }
    friend bool operator==(const CubicNum& a, const CubicNum& b) { return a.coords_ == b.coords_; }

    /// "c0,c1,c2" with slash-form rationals.
    std::string to_string() const;
    static CubicNum parse(std::string_view text);
    /// Polynomial in rho, e.g. "176ρ^2 - 288ρ + 96".
    std::string pretty() const;

private:
    Coords coords_{};
};

class QuadNum {
public:
    QuadNum() = default;
    QuadNum(const Rational& a, const Rational& b) : coords_{a, b} {}
    QuadNum(long value) { coords_[0] = value; }  // NOLINT(google-explicit-constructor)
    QuadNum(const Rational& value) { coords_[0] = value; }  // NOLINT(google-explicit-constructor)

    static QuadNum sqrt13() { return QuadNum(0, 1); }

    const Rational& operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
    bool is_zero() const { return coords_[0] == 0 && coords_[1] == 0; }

    QuadNum conjugate() const { return QuadNum(coords_[0], -coords_[1]); }
    Rational norm() const { return coords_[0] * coords_[0] - 13 * coords_[1] * coords_[1]; }
    QuadNum inverse() const;

    QuadNum operator-() const { return QuadNum(-coords_[0], -coords_[1]); }
    friend QuadNum operator+(const QuadNum& a, const QuadNum& b) {
        return QuadNum(a[0] + b[0], a[1] + b[1]);
    }
    friend QuadNum operator-(const QuadNum& a, const QuadNum& b) {
        return QuadNum(a[0] - b[0], a[1] - b[1]);
    }
    friend QuadNum operator*(const QuadNum& a, const QuadNum& b) {
        return QuadNum(a[0] * b[0] + 13 * a[1] * b[1], a[0] * b[1] + a[1] * b[0]);
    }
    friend QuadNum operator/(const QuadNum& a, const QuadNum& b) { return a * b.inverse(); }
    friend bool operator==(const QuadNum& a, const QuadNum& b) { return a.coords_ == b.coords_; }

    std::string to_string() const;
    static QuadNum parse(std::string_view text);

private:
    std::array<Rational, 2> coords_{};
};

/// sigma_c : zeta -> zeta^c, c in {1, ..., 12}.
class GaloisElement {
public:
    explicit GaloisElement(int c);
    static GaloisElement identity() { return GaloisElement(1); }

    int index() const { return c_; }
    GaloisElement compose(const GaloisElement& other) const { return GaloisElement(c_ * other.c_ % 13); }
    friend bool operator==(GaloisElement a, GaloisElement b) { return a.c_ == b.c_; }

private:
    int c_;
};

CycloNum galois_apply(GaloisElement s, const CycloNum& x);

/// rho -> zeta + zeta^5 + zeta^8 + zeta^12.
CycloNum embed_K_to_L(const CubicNum& x);

/// Inverse of embed_K_to_L on its image; throws RetractionError otherwise.
CubicNum retract_L_to_K(const CycloNum& x);

/// Product of sigma_c(x) over c in {1, 5, 12, 8}, retracted to K.
CubicNum norm_L_to_K(const CycloNum& x);

/// Generator of Gal(K/Q) induced by sigma_2.
CubicNum cubic_sigma(const CubicNum& x);

Rational norm_K_to_Q(const CubicNum& x);

/// u = sign * rho^i * (1 - rho)^j.
struct UnitDecomposition {
    int sign = 1;
    long i = 0;
    long j = 0;
    friend bool operator==(const UnitDecomposition&, const UnitDecomposition&) = default;
};

CubicNum unit_compose_K(const UnitDecomposition& d);

/// Writes a unit of O_K in the basis {-1, rho, 1 - rho}. Exponents are
/// proposed from the real logarithmic embeddings evaluated at
/// `precision_bits` (doubled on failure up to `max_precision_bits`) and
/// always certified exactly.
UnitDecomposition unit_decompose_K(const CubicNum& u, unsigned precision_bits = 128,
                                   unsigned max_precision_bits = 2048);

}  // namespace gfe
