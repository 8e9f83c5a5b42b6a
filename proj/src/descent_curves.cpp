#include "gfe/descent_curves.hpp"

#include <algorithm>
#include <set>

#include "gfe/errors.hpp"
#include "gfe/number_theory.hpp"

namespace gfe {

namespace {

CubicNum rho() { return CubicNum::rho(); }
CubicNum rho2() { return rho() * rho(); }

// rho^2 - rho + 1
CubicNum nu() { return rho2() - rho() + CubicNum(1); }

using RatPoly = std::vector<Rational>;  // index = power of t

void trim(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly poly_mod(RatPoly a, const RatPoly& b) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        const Rational f = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        trim(a);
    }
    return a;
}

RatPoly poly_gcd(RatPoly a, RatPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        RatPoly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// The Q-coordinate forms of a form over K, as polynomials in t = x / y.
std::array<RatPoly, 3> rational_components(const BinaryForm& f) {
    std::array<RatPoly, 3> out;
    for (auto& c : out) c.resize(f.coeffs().size());
    for (std::size_t i = 0; i < f.coeffs().size(); ++i)
        for (int k = 0; k < 3; ++k) out[static_cast<std::size_t>(k)][i] = f.coeffs()[i][k];
    return out;
}

bool is_trivial_pair(const Integer& a, const Integer& b) { return a == 0 || b == 0 || a == -b; }

}  // namespace

// ---------------------------------------------------------------- BinaryForm

BinaryForm::BinaryForm(std::vector<CubicNum> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.emplace_back(0);
}

BinaryForm BinaryForm::x() { return BinaryForm({CubicNum(0), CubicNum(1)}); }
BinaryForm BinaryForm::y() { return BinaryForm({CubicNum(1), CubicNum(0)}); }
BinaryForm BinaryForm::constant(const CubicNum& c) { return BinaryForm({c}); }

bool BinaryForm::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const CubicNum& c) { return c.is_zero(); });
}

CubicNum BinaryForm::operator()(const CubicNum& x, const CubicNum& y) const {
    const int n = degree();
    std::vector<CubicNum> ypow(static_cast<std::size_t>(n) + 1, CubicNum(1));
    for (int i = 1; i <= n; ++i) ypow[static_cast<std::size_t>(i)] = ypow[static_cast<std::size_t>(i - 1)] * y;
    CubicNum acc;
    CubicNum xp(1);
    for (int i = 0; i <= n; ++i) {
        acc += coeffs_[static_cast<std::size_t>(i)] * xp * ypow[static_cast<std::size_t>(n - i)];
        xp *= x;
    }
    return acc;
}

BinaryForm BinaryForm::sigma() const {
    std::vector<CubicNum> c;
    c.reserve(coeffs_.size());
    for (const auto& v : coeffs_) c.push_back(cubic_sigma(v));
    return BinaryForm(std::move(c));
}

BinaryForm BinaryForm::pow(unsigned n) const {
    BinaryForm r = constant(CubicNum(1));
    for (unsigned i = 0; i < n; ++i) r = r * *this;
    return r;
}

// Sums of forms of different degree are not homogeneous; both operands must
// share a degree unless one of them is zero.
BinaryForm operator+(const BinaryForm& a, const BinaryForm& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree() != b.degree()) throw std::invalid_argument("adding binary forms of different degree");
    std::vector<CubicNum> c = a.coeffs_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coeffs_[i];
    return BinaryForm(std::move(c));
}

BinaryForm operator-(const BinaryForm& a, const BinaryForm& b) { return a + CubicNum(-1) * b; }

BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
    std::vector<CubicNum> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return BinaryForm(std::move(c));
}

BinaryForm operator*(const CubicNum& s, const BinaryForm& f) {
    std::vector<CubicNum> c = f.coeffs_;
    for (auto& v : c) v = s * v;
    return BinaryForm(std::move(c));
}

std::string BinaryForm::pretty() const {
    const int n = degree();
    std::string out;
    for (int i = n; i >= 0; --i) {
        const CubicNum& c = coeffs_[static_cast<std::size_t>(i)];
        if (c.is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + c.pretty() + ")";
        if (i > 0) out += " x" + (i > 1 ? "^" + std::to_string(i) : std::string());
        if (n - i > 0) out += " y" + (n - i > 1 ? "^" + std::to_string(n - i) : std::string());
    }
    return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------- standard forms

const StandardForms& standard_forms() {
    static const StandardForms forms = [] {
        StandardForms s;
        const CubicNum one(1);
        s.F = BinaryForm({one, rho(), rho2() + rho() - one, rho(), one});
        s.G = BinaryForm({one, one});
        s.H = BinaryForm({one, (CubicNum(8) - CubicNum(2) * rho2()) * CubicNum(Rational(1, 5)), one});
        s.d = (CubicNum(4) * rho2()).inverse();

        const CubicNum half(Rational(1, 2));
        const CubicNum alt = (rho2() + rho() - CubicNum(4)) * half;
        if (s.d != alt * alt) throw IdentityCheckFailed("1/(4 rho^2) != ((rho^2 + rho - 4)/2)^2");
        const BinaryForm lhs = (one + s.d) * s.H.pow(2);
        const BinaryForm rhs = s.F + s.d * s.G.pow(4);
        if (!(lhs - rhs).is_zero()) throw IdentityCheckFailed("(1 + d) H^2 != F + d G^4");
        const CubicNum w = (rho2() + rho() - CubicNum(5)) * half;
        if (one + s.d != nu() * w * w) throw IdentityCheckFailed("1 + d != (rho^2 - rho + 1)((rho^2 + rho - 5)/2)^2");
        return s;
    }();
    return forms;
}

BinaryForm cyclotomic_form() {
    std::vector<CubicNum> c;
    for (int i = 0; i <= 12; ++i) c.emplace_back(i % 2 == 0 ? 1 : -1);
    return BinaryForm(std::move(c));
}

bool verify_cyclotomic_factorization() {
    const auto& s = standard_forms();
    const BinaryForm prod = s.F * s.F.sigma() * s.F.sigma().sigma() * s.G;
    std::vector<CubicNum> target(14);
    target[0] = 1;
    target[13] = 1;
    return prod == BinaryForm(std::move(target));
}

CubicNum pi13() { return CubicNum(-2, 3, 1); }

CubicNum x0_const() { return CubicNum(4) * nu(); }

CubicNum y0_const(long p) {
    return CubicNum(2).pow(p - 1) * nu().pow((p + 1) / 2) * (rho2() + rho() - CubicNum(5));
}

CubicNum c_int_const(long p) { return CubicNum(4).pow(p - 1) * nu().pow(p) * rho2().inverse(); }

CubicNum x1_const() { return CubicNum(-4, 4, 0); }
CubicNum y1_const() { return CubicNum(96, -288, 176); }

// ---------------------------------------------------------------- curves

std::string to_string(CurveKind k) {
    switch (k) {
        case CurveKind::CPrime: return "C_PRIME";
        case CurveKind::CInt: return "C_INT";
        case CurveKind::DPrime: return "D_PRIME";
    }
    return "?";
}

std::string CurveModel::equation() const {
    return "(" + lhs.pretty() + ") Y^2 = (" + rhs_x.pretty() + ") X^" + std::to_string(p) + " + (" + rhs_c.pretty() +
           ")";
}

CurveModel make_curve(long p, const CubicNum& e, CurveKind kind) {
    if (p < 3 || !nt::is_prime(static_cast<nt::u64>(p))) throw BadPrime("curve exponent must be an odd prime");
    if (!e.is_integral() || abs(norm_K_to_Q(e)) != 1) throw NotAUnit(e.to_string() + " is not a unit of O_K");

    const auto& s = standard_forms();
    const CubicNum one_d = CubicNum(1) + s.d;
    const CubicNum x0p = x0_const().pow(p);
    const CubicNum y0 = y0_const(p);
    if (y0 * y0 / one_d != x0p) throw IdentityCheckFailed("Y0^2 / (1 + d) != X0^p at p = " + std::to_string(p));
    if (s.d * x0p != c_int_const(p)) throw IdentityCheckFailed("d X0^p != integral constant at p = " + std::to_string(p));

    CurveModel m;
    m.p = p;
    m.e = e;
    m.kind = kind;
    switch (kind) {
        case CurveKind::CPrime:
            m.lhs = one_d;
            m.rhs_x = e;
            m.rhs_c = s.d;
            break;
        case CurveKind::CInt:
            m.lhs = CubicNum(1);
            m.rhs_x = e;
            m.rhs_c = c_int_const(p);
            break;
        case CurveKind::DPrime:
            m.lhs = one_d;
            m.rhs_x = pi13() * e;
            m.rhs_c = s.d * CubicNum(Rational(1, 28561));
            break;
    }
    return m;
}

std::string CurvePoint::to_string() const { return at_infinity ? "INF" : x.to_string() + ";" + y.to_string(); }

CurvePoint CurvePoint::parse(std::string_view xs, std::string_view ys) {
    if (xs == "INF" || xs == "inf") return infinity();
    if (ys.empty()) {
        const auto semi = xs.find(';');
        if (semi == std::string_view::npos) throw ParseError("point needs X and Y coordinates");
        return affine(CubicNum::parse(xs.substr(0, semi)), CubicNum::parse(xs.substr(semi + 1)));
    }
    return affine(CubicNum::parse(xs), CubicNum::parse(ys));
}

bool is_on_curve(const CurvePoint& pt, const CurveModel& m) {
    if (pt.at_infinity) return true;
    return m.lhs * pt.y * pt.y == m.rhs_x * pt.x.pow(m.p) + m.rhs_c;
}

// ---------------------------------------------------------------- point test

std::string to_string(PointVerdict v) {
    switch (v) {
        case PointVerdict::TrivialSolution: return "TRIVIAL_SOLUTION";
        case PointVerdict::NoIntegerSolution: return "NO_INTEGER_SOLUTION";
        case PointVerdict::Candidate: return "CANDIDATE";
    }
    return "?";
}

std::vector<Integer> rational_norm_form(const BinaryForm& q) {
    const BinaryForm n = q * q.sigma() * q.sigma().sigma();
    Integer den = 1;
    for (const auto& c : n.coeffs()) {
        if (!c.is_rational()) throw InternalError("norm form has an irrational coefficient");
        den = lcm(den, c[0].get_den());
    }
    std::vector<Integer> out;
    Integer g = 0;
    for (const auto& c : n.coeffs()) {
        const Rational v = c[0] * den;
        out.push_back(v.get_num());
        g = gcd(g, v.get_num());
    }
    if (g > 1)
        for (auto& v : out) v /= g;
    return out;
}

std::vector<std::pair<Integer, Integer>> rational_roots(const std::vector<Integer>& form, std::size_t divisor_cap) {
    std::vector<std::pair<Integer, Integer>> roots;
    if (std::all_of(form.begin(), form.end(), [](const Integer& c) { return c == 0; }))
        throw std::invalid_argument("rational roots of the zero form");
    const std::size_t n = form.size() - 1;
    std::size_t lo = 0;
    while (form[lo] == 0) ++lo;
    std::size_t hi = n;
    while (form[hi] == 0) --hi;
    if (hi < n) roots.emplace_back(1, 0);  // y divides the form
    if (lo > 0) roots.emplace_back(0, 1);  // x divides the form
    if (hi == lo) return roots;

    const auto num_divs = nt::divisors(form[lo], divisor_cap);
    const auto den_divs = nt::divisors(form[hi], divisor_cap);
    std::set<std::pair<Integer, Integer>> found;
    for (const auto& b : den_divs) {
        for (const auto& a0 : num_divs) {
            if (gcd(a0, b) != 1) continue;
            for (const Integer& a : {a0, Integer(-a0)}) {
                Integer acc = 0;
                Integer apow = 1;
                std::vector<Integer> bpow(hi - lo + 1, Integer(1));
                for (std::size_t k = 1; k < bpow.size(); ++k) bpow[k] = bpow[k - 1] * b;
                for (std::size_t i = lo; i <= hi; ++i) {
                    acc += form[i] * apow * bpow[hi - i];
                    apow *= a;
                }
                if (acc == 0) found.emplace(a, b);
            }
        }
    }
    roots.insert(roots.end(), found.begin(), found.end());
    return roots;
}

PointTestResult point_to_solution_test(const CurvePoint& pt, const CurveModel& model, const PointTestOptions& options) {
    const auto& s = standard_forms();
    PointTestResult r;
    if (pt.at_infinity) {
        r.ratio = CubicNum(1) + s.d;
    } else {
        if (pt.y.is_zero()) throw DegenerateLambda("point has Y = 0");
        switch (model.kind) {
            case CurveKind::CInt: {
                const CubicNum xs = pt.x / x0_const();
                const CubicNum ys = pt.y / y0_const(model.p);
                r.ratio = model.e * xs.pow(model.p) / (ys * ys);
                break;
            }
            case CurveKind::CPrime: r.ratio = model.e * pt.x.pow(model.p) / (pt.y * pt.y); break;
            case CurveKind::DPrime: r.ratio = pi13() * model.e * pt.x.pow(model.p) / (pt.y * pt.y); break;
        }
    }
    r.quartic = s.F - r.ratio * s.H.pow(2);

    const auto done = [&r] {
        if (r.roots.empty()) {
            r.verdict = PointVerdict::NoIntegerSolution;
            return r;
        }
        r.verdict = PointVerdict::TrivialSolution;
        for (const auto& [a, b] : r.roots)
            if (!is_trivial_pair(a, b)) {
                r.verdict = PointVerdict::Candidate;
                r.candidate = std::make_pair(a, b);
                break;
            }
        return r;
    };

    if (r.quartic.is_zero()) throw DegenerateLambda("F - ratio H^2 vanishes identically");

    if (options.gcd_shortcut) {
        const auto comps = rational_components(r.quartic);
        RatPoly g;
        for (const auto& c : comps) g = poly_gcd(g, c);
        const bool root_at_infinity = r.quartic.coeff(r.quartic.degree()).is_zero();
        if (g.size() <= 1 && !root_at_infinity) return done();
    }

    for (const auto& [a, b] : rational_roots(rational_norm_form(r.quartic), options.divisor_cap))
        if (r.quartic(CubicNum(Rational(a)), CubicNum(Rational(b))).is_zero()) r.roots.emplace_back(a, b);

    done();
    if (r.candidate) {
        const auto& [a, b] = *r.candidate;
        Integer ap;
        Integer bp;
        mpz_pow_ui(ap.get_mpz_t(), a.get_mpz_t(), 13);
        mpz_pow_ui(bp.get_mpz_t(), b.get_mpz_t(), 13);
        Integer sum = ap + bp;
        const bool scaled = model.kind == CurveKind::DPrime;
        if (!scaled || sum % 13 == 0)
            r.candidate_is_pth_power = nt::exact_root(scaled ? Integer(sum / 13) : sum, static_cast<unsigned>(model.p)).has_value();
    }
    return r;
}

// ---------------------------------------------------------------- known points

std::vector<CurvePoint> known_points(long p) {
    std::vector<CurvePoint> pts;
    if (p == 5) {
        pts = {CurvePoint::affine(x0_const(), y0_const(5)), CurvePoint::affine(x0_const(), -y0_const(5)),
               CurvePoint::affine(x1_const(), y1_const()), CurvePoint::affine(x1_const(), -y1_const()),
               CurvePoint::infinity()};
    } else if (p == 7) {
        pts = {CurvePoint::affine(x0_const(), y0_const(7)), CurvePoint::affine(x0_const(), -y0_const(7)),
               CurvePoint::infinity()};
    } else {
        throw UnknownPointSet("no proven complete point list for p = " + std::to_string(p));
    }
    const CurveModel m = make_curve(p);
    for (const auto& pt : pts)
        if (!is_on_curve(pt, m)) throw IdentityCheckFailed("listed point " + pt.to_string() + " is not on C_p");
    return pts;
}

}  // namespace gfe
