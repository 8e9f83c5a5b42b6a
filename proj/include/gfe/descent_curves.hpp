#pragma once

// Binary forms over K, the descent identity (1 + d) H^2 = F + d G^4, the
// hyperelliptic models C'_{p,e}, C_{p,e}, D'_{p,e} and the test that turns a
// curve point back into a candidate pair (a, b).

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gfe/ring_core.hpp"

namespace gfe {

/// Homogeneous form sum c_i x^i y^(deg - i).
class BinaryForm {
public:
    BinaryForm() = default;
    explicit BinaryForm(std::vector<CubicNum> coeffs);  // index i multiplies x^i y^(deg - i)

    static BinaryForm x();
    static BinaryForm y();
    static BinaryForm constant(const CubicNum& c);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<CubicNum>& coeffs() const { return coeffs_; }
    /// Coefficient of x^i y^(deg - i).
    const CubicNum& coeff(int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }
    bool is_zero() const;

    CubicNum operator()(const CubicNum& x, const CubicNum& y) const;

    /// Coefficientwise sigma, the generator of Gal(K/Q) induced by zeta -> zeta^2.
    BinaryForm sigma() const;
    BinaryForm pow(unsigned n) const;

    friend BinaryForm operator+(const BinaryForm& a, const BinaryForm& b);
    friend BinaryForm operator-(const BinaryForm& a, const BinaryForm& b);
    friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b);
    friend BinaryForm operator*(const CubicNum& c, const BinaryForm& f);
    friend bool operator==(const BinaryForm& a, const BinaryForm& b) { return a.coeffs_ == b.coeffs_; }

    std::string pretty() const;

private:
    std::vector<CubicNum> coeffs_{CubicNum(0)};
};

struct StandardForms {
    BinaryForm F;  // x^4 + rho x^3 y + (rho^2 + rho - 1) x^2 y^2 + rho x y^3 + y^4
    BinaryForm G;  // x + y
    BinaryForm H;  // x^2 + (8 - 2 rho^2)/5 xy + y^2
    CubicNum d;    // 1 / (4 rho^2)
};

/// Checks (1 + d) H^2 = F + d G^4 and 1 + d = (rho^2 - rho + 1)((rho^2 + rho - 5)/2)^2;
/// throws IdentityCheckFailed otherwise.
const StandardForms& standard_forms();

/// phi_13 = (x^13 + y^13) / (x + y).
BinaryForm cyclotomic_form();

/// x^13 + y^13 == F sigma(F) sigma^2(F) (x + y), coefficientwise.
bool verify_cyclotomic_factorization();

/// rho^2 + 3 rho - 2, the generator of the prime above 13 used in D'_{p,e}.
/// F(1, -1) = rho^2 - rho + 1 generates the same ideal; the two differ by the
/// unit rho^2 + 2 rho - 2.
CubicNum pi13();

CubicNum x0_const();          // 4 (rho^2 - rho + 1)
CubicNum y0_const(long p);    // 2^(p-1) (rho^2 - rho + 1)^((p+1)/2) (rho^2 + rho - 5)
CubicNum c_int_const(long p); // 4^(p-1) (rho^2 - rho + 1)^p rho^-2

enum class CurveKind { CPrime, CInt, DPrime };
std::string to_string(CurveKind k);

/// lhs Y^2 = rhs_x X^p + rhs_c.
struct CurveModel {
    long p = 0;
    CubicNum e;
    CurveKind kind = CurveKind::CInt;
    CubicNum lhs;
    CubicNum rhs_x;
    CubicNum rhs_c;

    long genus() const { return (p - 1) / 2; }
    std::string equation() const;
};

/// Throws BadPrime for p not an odd prime and NotAUnit when e is not in O_K^*.
CurveModel make_curve(long p, const CubicNum& e = CubicNum(1), CurveKind kind = CurveKind::CInt);

struct CurvePoint {
    bool at_infinity = false;
    CubicNum x;
    CubicNum y;

    static CurvePoint infinity() { return CurvePoint{true, {}, {}}; }
    static CurvePoint affine(CubicNum x, CubicNum y) { return CurvePoint{false, std::move(x), std::move(y)}; }

    /// "INF" or "x;y" in the CubicNum coordinate encoding.
    std::string to_string() const;
    /// Accepts "INF" for x (y ignored) or two CubicNum encodings.
    static CurvePoint parse(std::string_view x, std::string_view y = {});
    friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

bool is_on_curve(const CurvePoint& pt, const CurveModel& model);

enum class PointVerdict { TrivialSolution, NoIntegerSolution, Candidate };
std::string to_string(PointVerdict v);

struct PointTestResult {
    PointVerdict verdict = PointVerdict::NoIntegerSolution;
    CubicNum ratio;                                 // F(a,b) / H(a,b)^2 forced by the point
    BinaryForm quartic;                             // F - ratio H^2
    std::vector<std::pair<Integer, Integer>> roots;  // rational (a : b), lowest terms
    std::optional<std::pair<Integer, Integer>> candidate;
    bool candidate_is_pth_power = false;            // a^13 + b^13 = c^p for some integer c
};

struct PointTestOptions {
    /// Skip the norm-form search when the Q-coordinate quartics of F - ratio H^2
    /// share no factor (no rational root can then exist).
    bool gcd_shortcut = true;
    std::size_t divisor_cap = 1'000'000;
};

/// Throws DegenerateLambda for affine points with Y = 0, CapExceeded when a
/// divisor enumeration would exceed the cap.
PointTestResult point_to_solution_test(const CurvePoint& pt, const CurveModel& model,
                                       const PointTestOptions& options = {});

/// Integer binary form N = Q sigma(Q) sigma^2(Q), scaled to primitive integer
/// coefficients (index i multiplies x^i y^(deg - i)).
std::vector<Integer> rational_norm_form(const BinaryForm& q);

/// Rational roots (a : b) of an integer binary form with a, b coprime and
/// b > 0, or (1 : 0). Candidates a | c_low, b | c_high.
std::vector<std::pair<Integer, Integer>> rational_roots(const std::vector<Integer>& form,
                                                        std::size_t divisor_cap = 1'000'000);

/// Complete point lists on C_p (e = 1, integral model) for p = 5 and p = 7;
/// UnknownPointSet otherwise.
std::vector<CurvePoint> known_points(long p);

CubicNum x1_const();  // 4 rho - 4
CubicNum y1_const();  // 176 rho^2 - 288 rho + 96

}  // namespace gfe
