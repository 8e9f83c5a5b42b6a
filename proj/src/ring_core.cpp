#include "gfe/ring_core.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include <mpfr.h>

#include "gfe/errors.hpp"

namespace gfe {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<Rational> parse_coords(std::string_view text, std::size_t expected, const char* what) {
    std::vector<Rational> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        try {
            out.push_back(parse_rational(piece));
        } catch (const ParseError& e) {
            throw ParseError(std::string(what) + " coordinate " + std::to_string(out.size()) + " (offset " +
                             std::to_string(start) + "): " + e.what());
        }
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (out.size() != expected) {
        throw ParseError(std::string(what) + ": expected " + std::to_string(expected) +
                         " comma-separated rationals, got " + std::to_string(out.size()));
    }
    return out;
}

template <typename Coords>
std::string join_coords(const Coords& coords) {
    std::string s;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) s += ',';
        s += coords[i].get_str();
    }
    return s;
}

// Renders sum coeff[k] * sym^k, highest power first.
template <typename Coords>
std::string pretty_poly(const Coords& coords, const char* sym) {
    std::string s;
    for (int k = static_cast<int>(coords.size()) - 1; k >= 0; --k) {
        const Rational& c = coords[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        const bool negative = c < 0;
        const Rational mag = abs(c);
        if (s.empty()) {
            if (negative) s += '-';
        } else {
            s += negative ? " - " : " + ";
        }
        if (k == 0 || mag != 1) s += mag.get_str();
        if (k >= 1) s += sym;
        if (k >= 2) s += "^" + std::to_string(k);
    }
    return s.empty() ? "0" : s;
}

// Reduces a length-13 coefficient vector modulo Phi_13 using
// zeta^12 = -(1 + zeta + ... + zeta^11).
CycloNum reduce13(std::array<Rational, 13>& c) {
    CycloNum::Coords out;
    for (int i = 0; i < 12; ++i) out[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)] - c[12];
    return CycloNum(std::move(out));
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const auto t = trim(text);
    if (t.empty()) throw ParseError("empty rational");
    for (char ch : t) {
        if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '+' || ch == '/')) {
            throw ParseError("invalid character in rational '" + std::string(t) + "'");
        }
    }
    std::string s(t);
    if (s.front() == '+') s.erase(0, 1);
    Rational r;
    if (r.set_str(s, 10) != 0) throw ParseError("invalid rational '" + std::string(t) + "'");
    if (r.get_den() == 0) throw ParseError("zero denominator in '" + std::string(t) + "'");
    r.canonicalize();
    return r;
}

// ---------------------------------------------------------------- CycloNum

CycloNum CycloNum::zeta_power(long k) {
    long r = k % 13;
    if (r < 0) r += 13;
    Coords c{};
    if (r == 12) {
        for (auto& x : c) x = -1;
    } else {
        c[static_cast<std::size_t>(r)] = 1;
    }
    return CycloNum(std::move(c));
}

bool CycloNum::is_zero() const {
    for (const auto& x : coords_)
        if (x != 0) return false;
    return true;
}

bool CycloNum::is_integral() const {
    for (const auto& x : coords_)
        if (x.get_den() != 1) return false;
    return true;
}

bool CycloNum::is_rational() const {
    for (int i = 1; i < kDegree; ++i)
        if (coords_[static_cast<std::size_t>(i)] != 0) return false;
    return true;
}

Integer CycloNum::denominator() const {
    Integer l = 1;
    for (const auto& x : coords_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    return l;
}

CycloNum CycloNum::operator-() const {
    Coords c;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coords_[i];
    return CycloNum(std::move(c));
}

CycloNum& CycloNum::operator+=(const CycloNum& rhs) {
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += rhs.coords_[i];
    return *this;
}

CycloNum& CycloNum::operator-=(const CycloNum& rhs) {
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= rhs.coords_[i];
    return *this;
}

CycloNum& CycloNum::operator*=(const CycloNum& rhs) { return *this = *this * rhs; }

CycloNum operator*(const CycloNum& a, const CycloNum& b) {
    std::array<Rational, 13> acc{};
    for (std::size_t i = 0; i < 12; ++i) {
        if (a.coords_[i] == 0) continue;
        for (std::size_t j = 0; j < 12; ++j) {
            if (b.coords_[j] == 0) continue;
            acc[(i + j) % 13] += a.coords_[i] * b.coords_[j];
        }
    }
    return reduce13(acc);
}

namespace {

// Product of sigma_c(x) over c = 2..12.
CycloNum other_conjugates(const CycloNum& x) {
    CycloNum p(1);
    for (int c = 2; c <= 12; ++c) p = p * galois_apply(GaloisElement(c), x);
    return p;
}

}  // namespace

Rational CycloNum::norm() const {
    const CycloNum n = *this * other_conjugates(*this);
    if (!n.is_rational()) throw InternalError("norm of cyclotomic element is not rational");
    return n[0];
}

CycloNum CycloNum::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero in Q(zeta_13)");
    CycloNum p = other_conjugates(*this);
    const CycloNum n = *this * p;
    if (!n.is_rational()) throw InternalError("norm of cyclotomic element is not rational");
    const Rational inv = 1 / n[0];
    Coords c = p.coords_;
    for (auto& x : c) x *= inv;
    return CycloNum(std::move(c));
}

CycloNum CycloNum::pow(long exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    CycloNum result(1);
    CycloNum base = *this;
    while (exponent > 0) {
        if (exponent & 1) result = result * base;
        exponent >>= 1;
        if (exponent) base = base * base;
    }
    return result;
}

std::string CycloNum::to_string() const { return join_coords(coords_); }

CycloNum CycloNum::parse(std::string_view text) {
    const auto v = parse_coords(text, kDegree, "CycloNum");
    Coords c;
    std::copy(v.begin(), v.end(), c.begin());
    return CycloNum(std::move(c));
}

std::string CycloNum::pretty() const { return pretty_poly(coords_, "ζ"); }

// ---------------------------------------------------------------- CubicNum

bool CubicNum::is_zero() const { return coords_[0] == 0 && coords_[1] == 0 && coords_[2] == 0; }

bool CubicNum::is_integral() const {
    for (const auto& x : coords_)
        if (x.get_den() != 1) return false;
    return true;
}

CubicNum CubicNum::operator-() const { return CubicNum(-coords_[0], -coords_[1], -coords_[2]); }

CubicNum& CubicNum::operator+=(const CubicNum& rhs) {
    for (std::size_t i = 0; i < 3; ++i) coords_[i] += rhs.coords_[i];
    return *this;
}

CubicNum& CubicNum::operator-=(const CubicNum& rhs) {
    for (std::size_t i = 0; i < 3; ++i) coords_[i] -= rhs.coords_[i];
    return *this;
}

CubicNum& CubicNum::operator*=(const CubicNum& rhs) { return *this = *this * rhs; }

CubicNum operator*(const CubicNum& a, const CubicNum& b) {
    std::array<Rational, 5> c{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) c[i + j] += a.coords_[i] * b.coords_[j];
    // rho^3 = -rho^2 + 4 rho - 1
    for (std::size_t k = 4; k >= 3; --k) {
        const Rational t = c[k];
        c[k] = 0;
        c[k - 1] -= t;
        c[k - 2] += 4 * t;
        c[k - 3] -= t;
    }
    return CubicNum(c[0], c[1], c[2]);
}

CubicNum CubicNum::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero in K");
    const CubicNum s1 = cubic_sigma(*this);
    const CubicNum p = s1 * cubic_sigma(s1);
    const CubicNum n = *this * p;
    if (!n.is_rational()) throw InternalError("norm of cubic element is not rational");
    const Rational inv = 1 / n[0];
    return CubicNum(p[0] * inv, p[1] * inv, p[2] * inv);
}

CubicNum CubicNum::pow(long exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    CubicNum result(1);
    CubicNum base = *this;
    while (exponent > 0) {
        if (exponent & 1) result = result * base;
        exponent >>= 1;
        if (exponent) base = base * base;
    }
    return result;
}

std::string CubicNum::to_string() const { return join_coords(coords_); }

CubicNum CubicNum::parse(std::string_view text) {
    const auto v = parse_coords(text, 3, "CubicNum");
    return CubicNum(v[0], v[1], v[2]);
}

std::string CubicNum::pretty() const { return pretty_poly(coords_, "ρ"); }

// ---------------------------------------------------------------- QuadNum

QuadNum QuadNum::inverse() const {
    const Rational n = norm();
    if (n == 0) throw std::domain_error("inverse of zero in Q(sqrt13)");
    return QuadNum(coords_[0] / n, -coords_[1] / n);
}

std::string QuadNum::to_string() const { return join_coords(coords_); }

QuadNum QuadNum::parse(std::string_view text) {
    const auto v = parse_coords(text, 2, "QuadNum");
    return QuadNum(v[0], v[1]);
}

// ---------------------------------------------------------------- Galois

GaloisElement::GaloisElement(int c) : c_(((c % 13) + 13) % 13) {
    if (c_ == 0) throw std::invalid_argument("Galois index must be a unit mod 13");
}

CycloNum galois_apply(GaloisElement s, const CycloNum& x) {
    std::array<Rational, 13> acc{};
    for (int i = 0; i < 12; ++i) acc[static_cast<std::size_t>(s.index() * i % 13)] = x[i];
    return reduce13(acc);
}

// ---------------------------------------------------------------- K <-> L

namespace {

struct Retraction {
    std::array<CycloNum, 3> basis;           // embeddings of 1, rho, rho^2
    std::array<int, 3> rows{};               // pivot coordinates
    std::array<std::array<Rational, 3>, 3> inv{};  // inverse of the 3x3 pivot block

    Retraction() {
        const CycloNum rho_l = CycloNum::zeta_power(1) + CycloNum::zeta_power(5) + CycloNum::zeta_power(8) +
                               CycloNum::zeta_power(12);
        basis = {CycloNum(1), rho_l, rho_l * rho_l};
        // Choose pivot rows greedily so that the 3x3 block is invertible.
        std::array<std::array<Rational, 3>, 3> block{};
        int found = 0;
        for (int r = 0; r < 12 && found < 3; ++r) {
            std::array<Rational, 3> row{basis[0][r], basis[1][r], basis[2][r]};
            block[static_cast<std::size_t>(found)] = row;
            if (rank(block, found + 1) == found + 1) rows[static_cast<std::size_t>(found++)] = r;
        }
        inv = invert(block);
    }

    static int rank(std::array<std::array<Rational, 3>, 3> m, int nrows) {
        int r = 0;
        for (int col = 0; col < 3 && r < nrows; ++col) {
            int piv = -1;
            for (int i = r; i < nrows; ++i)
                if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] != 0) piv = i;
            if (piv < 0) continue;
            std::swap(m[static_cast<std::size_t>(r)], m[static_cast<std::size_t>(piv)]);
            for (int i = 0; i < nrows; ++i) {
                if (i == r) continue;
                const Rational f = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] /
                                   m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
                for (std::size_t k = 0; k < 3; ++k)
                    m[static_cast<std::size_t>(i)][k] -= f * m[static_cast<std::size_t>(r)][k];
            }
            ++r;
        }
        return r;
    }

    static std::array<std::array<Rational, 3>, 3> invert(std::array<std::array<Rational, 3>, 3> m) {
        std::array<std::array<Rational, 3>, 3> inv{};
        for (std::size_t i = 0; i < 3; ++i) inv[i][i] = 1;
        for (std::size_t col = 0; col < 3; ++col) {
            std::size_t piv = col;
            while (m[piv][col] == 0) ++piv;
            std::swap(m[col], m[piv]);
            std::swap(inv[col], inv[piv]);
            const Rational d = m[col][col];
            for (std::size_t k = 0; k < 3; ++k) {
                m[col][k] /= d;
                inv[col][k] /= d;
            }
            for (std::size_t i = 0; i < 3; ++i) {
                if (i == col) continue;
                const Rational f = m[i][col];
                for (std::size_t k = 0; k < 3; ++k) {
                    m[i][k] -= f * m[col][k];
                    inv[i][k] -= f * inv[col][k];
                }
            }
        }
        return inv;
    }
};

const Retraction& retraction() {
    static const Retraction r;
    return r;
}

}  // namespace

CycloNum embed_K_to_L(const CubicNum& x) {
    const auto& b = retraction().basis;
    CycloNum::Coords c;
    for (std::size_t i = 0; i < 12; ++i) {
        const int k = static_cast<int>(i);
        c[i] = x[0] * b[0][k] + x[1] * b[1][k] + x[2] * b[2][k];
    }
    return CycloNum(std::move(c));
}

CubicNum retract_L_to_K(const CycloNum& x) {
    const auto& r = retraction();
    std::array<Rational, 3> y;
    for (std::size_t i = 0; i < 3; ++i) {
        y[i] = 0;
        for (std::size_t k = 0; k < 3; ++k) y[i] += r.inv[i][k] * x[r.rows[k]];
    }
    CubicNum candidate(y[0], y[1], y[2]);
    if (!(embed_K_to_L(candidate) == x)) {
        throw RetractionError("element " + x.to_string() + " does not lie in the cubic subfield");
    }
    return candidate;
}

CubicNum norm_L_to_K(const CycloNum& x) {
    CycloNum p = x;
    for (int c : {5, 12, 8}) p = p * galois_apply(GaloisElement(c), x);
    return retract_L_to_K(p);
}

CubicNum cubic_sigma(const CubicNum& x) {
    static const CubicNum sigma_rho = retract_L_to_K(galois_apply(GaloisElement(2), embed_K_to_L(CubicNum::rho())));
    static const CubicNum sigma_rho2 = sigma_rho * sigma_rho;
    return CubicNum(x[0]) + CubicNum(x[1]) * sigma_rho + CubicNum(x[2]) * sigma_rho2;
}

Rational norm_K_to_Q(const CubicNum& x) {
    const CubicNum s1 = cubic_sigma(x);
    const CubicNum n = x * s1 * cubic_sigma(s1);
    if (!n.is_rational()) throw InternalError("cubic norm is not rational");
    return n[0];
}

// ---------------------------------------------------------------- units of O_K

CubicNum unit_compose_K(const UnitDecomposition& d) {
    const CubicNum rho = CubicNum::rho();
    return CubicNum(d.sign) * rho.pow(d.i) * (CubicNum(1) - rho).pow(d.j);
}

namespace {

class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    BigFloat(const BigFloat&) = delete;
    BigFloat& operator=(const BigFloat&) = delete;
    ~BigFloat() { mpfr_clear(v_); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

private:
    mpfr_t v_;
};

// Newton refinement of a root of t^3 + t^2 - 4t + 1 near `start`.
void refine_root(BigFloat& r, double start, mpfr_prec_t prec) {
    mpfr_set_d(r.get(), start, MPFR_RNDN);
    BigFloat f(prec), df(prec), t(prec);
    const int iterations = 8 + static_cast<int>(std::log2(static_cast<double>(prec)));
    for (int it = 0; it < iterations; ++it) {
        // f = ((r + 1) r - 4) r + 1, df = (3r + 2) r - 4
        mpfr_add_ui(f.get(), r.get(), 1, MPFR_RNDN);
        mpfr_mul(f.get(), f.get(), r.get(), MPFR_RNDN);
        mpfr_sub_ui(f.get(), f.get(), 4, MPFR_RNDN);
        mpfr_mul(f.get(), f.get(), r.get(), MPFR_RNDN);
        mpfr_add_ui(f.get(), f.get(), 1, MPFR_RNDN);
        mpfr_mul_ui(df.get(), r.get(), 3, MPFR_RNDN);
        mpfr_add_ui(df.get(), df.get(), 2, MPFR_RNDN);
        mpfr_mul(df.get(), df.get(), r.get(), MPFR_RNDN);
        mpfr_sub_ui(df.get(), df.get(), 4, MPFR_RNDN);
        mpfr_div(t.get(), f.get(), df.get(), MPFR_RNDN);
        mpfr_sub(r.get(), r.get(), t.get(), MPFR_RNDN);
    }
}

// log |c0 + c1 r + c2 r^2|
void log_abs_eval(BigFloat& out, const CubicNum& x, const BigFloat& r, mpfr_prec_t prec) {
    BigFloat acc(prec), term(prec);
    mpfr_set_q(acc.get(), x[2].get_mpq_t(), MPFR_RNDN);
    mpfr_mul(acc.get(), acc.get(), r.get(), MPFR_RNDN);
    mpfr_set_q(term.get(), x[1].get_mpq_t(), MPFR_RNDN);
    mpfr_add(acc.get(), acc.get(), term.get(), MPFR_RNDN);
    mpfr_mul(acc.get(), acc.get(), r.get(), MPFR_RNDN);
    mpfr_set_q(term.get(), x[0].get_mpq_t(), MPFR_RNDN);
    mpfr_add(acc.get(), acc.get(), term.get(), MPFR_RNDN);
    mpfr_abs(acc.get(), acc.get(), MPFR_RNDN);
    mpfr_log(out.get(), acc.get(), MPFR_RNDN);
}

std::optional<UnitDecomposition> try_decompose(const CubicNum& u, mpfr_prec_t prec) {
    // Two of the three real embeddings: rho -> 2cos(2 pi k/13) + 2cos(10 pi k/13), k = 1, 2.
    const double tau = 2.0 * std::numbers::pi / 13.0;
    const std::array<double, 2> starts{2 * std::cos(tau) + 2 * std::cos(5 * tau),
                                       2 * std::cos(2 * tau) + 2 * std::cos(10 * tau)};
    const CubicNum rho = CubicNum::rho();
    const CubicNum one_minus_rho = CubicNum(1) - rho;

    BigFloat a11(prec), a12(prec), a21(prec), a22(prec), b1(prec), b2(prec);
    std::array<BigFloat*, 2> col_rho{&a11, &a21}, col_omr{&a12, &a22}, rhs{&b1, &b2};
    for (std::size_t k = 0; k < 2; ++k) {
        BigFloat r(prec);
        refine_root(r, starts[k], prec);
        log_abs_eval(*col_rho[k], rho, r, prec);
        log_abs_eval(*col_omr[k], one_minus_rho, r, prec);
        log_abs_eval(*rhs[k], u, r, prec);
    }
    // Cramer's rule.
    BigFloat det(prec), t(prec), xi(prec), xj(prec);
    mpfr_mul(det.get(), a11.get(), a22.get(), MPFR_RNDN);
    mpfr_mul(t.get(), a12.get(), a21.get(), MPFR_RNDN);
    mpfr_sub(det.get(), det.get(), t.get(), MPFR_RNDN);
    mpfr_mul(xi.get(), b1.get(), a22.get(), MPFR_RNDN);
    mpfr_mul(t.get(), a12.get(), b2.get(), MPFR_RNDN);
    mpfr_sub(xi.get(), xi.get(), t.get(), MPFR_RNDN);
    mpfr_div(xi.get(), xi.get(), det.get(), MPFR_RNDN);
    mpfr_mul(xj.get(), a11.get(), b2.get(), MPFR_RNDN);
    mpfr_mul(t.get(), b1.get(), a21.get(), MPFR_RNDN);
    mpfr_sub(xj.get(), xj.get(), t.get(), MPFR_RNDN);
    mpfr_div(xj.get(), xj.get(), det.get(), MPFR_RNDN);

    if (!mpfr_number_p(xi.get()) || !mpfr_number_p(xj.get())) return std::nullopt;
    if (mpfr_cmpabs_ui(xi.get(), 1UL << 40) > 0 || mpfr_cmpabs_ui(xj.get(), 1UL << 40) > 0) return std::nullopt;
    const long i = mpfr_get_si(xi.get(), MPFR_RNDN);
    const long j = mpfr_get_si(xj.get(), MPFR_RNDN);

    const CubicNum q = u * rho.pow(-i) * one_minus_rho.pow(-j);
    if (q == CubicNum(1)) return UnitDecomposition{1, i, j};
    if (q == CubicNum(-1)) return UnitDecomposition{-1, i, j};
    return std::nullopt;
}

}  // namespace

UnitDecomposition unit_decompose_K(const CubicNum& u, unsigned precision_bits, unsigned max_precision_bits) {
    if (!u.is_integral()) throw NotAUnit("non-integral element " + u.to_string());
    const Rational n = norm_K_to_Q(u);
    if (n != 1 && n != -1) throw NotAUnit("norm " + n.get_str() + " of " + u.to_string() + " is not +-1");
    for (unsigned prec = precision_bits; prec <= max_precision_bits; prec *= 2) {
        if (auto d = try_decompose(u, static_cast<mpfr_prec_t>(prec))) return *d;
    }
    throw DecompositionFailure("could not certify exponents for " + u.to_string() + " at " +
                               std::to_string(max_precision_bits) + " bits");
}

}  // namespace gfe
