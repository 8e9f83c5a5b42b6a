#include "gfe/residue_rings.hpp"

#include <algorithm>
#include <random>

#include "gfe/errors.hpp"

namespace gfe {

namespace {

zm::Poly phi13_mod(u64 m) { return zm::Poly(13, 1 % m); }

// Cantor-Zassenhaus equal-degree splitting of a squarefree product of
// degree-f irreducibles over F_p (p odd).
void split_equal_degree(const zm::Poly& h, int f, u64 p, std::mt19937_64& rng, std::vector<zm::Poly>& out) {
    if (zm::degree(h) == f) {
        out.push_back(h);
        return;
    }
    const u128 half = (nt::ipow(p, static_cast<unsigned>(f)) - 1) / 2;
    std::uniform_int_distribution<u64> coeff(0, p - 1);
    while (true) {
        zm::Poly a(static_cast<std::size_t>(zm::degree(h)));
        for (auto& c : a) c = coeff(rng);
        zm::trim(a);
        if (zm::degree(a) < 1) continue;
        zm::Poly g = zm::gcd(a, h, p);
        if (zm::degree(g) <= 0) {
            zm::Poly b = zm::sub(zm::powmod(a, half, h, p), zm::Poly{1}, p);
            g = zm::gcd(b, h, p);
        }
        if (zm::degree(g) > 0 && zm::degree(g) < zm::degree(h)) {
            split_equal_degree(g, f, p, rng, out);
            split_equal_degree(zm::divmod(h, g, p).first, f, p, rng, out);
            return;
        }
    }
}

// One Newton step: lifts the monic factor g of Phi_13 mod p to the monic
// factor of Phi_13 mod p^2 that reduces to it.
zm::Poly hensel_lift(const zm::Poly& g, const zm::Poly& cofactor, u64 p) {
    const u64 p2 = p * p;
    const auto eg = zm::ext_gcd(g, cofactor, p);  // s g + t h = 1 mod p
    if (eg.g != zm::Poly{1}) throw InternalError("factors of Phi_13 are not coprime");
    const zm::Poly diff = zm::sub(phi13_mod(p2), zm::mul(g, cofactor, p2), p2);
    zm::Poly e(diff.size());
    for (std::size_t i = 0; i < diff.size(); ++i) {
        if (diff[i] % p != 0) throw InternalError("Hensel defect not divisible by p");
        e[i] = diff[i] / p;
    }
    zm::trim(e);
    const zm::Poly delta = zm::mod(zm::mul(eg.t, e, p), g, p);
    return zm::add(g, zm::scale(delta, p, p2), p2);
}

}  // namespace

PrimeFactorization factor_13th_cyclotomic_mod(u64 p) {
    if (p == 13) throw BadPrime("13 ramifies in Q(zeta_13)");
    if (!nt::is_prime(p)) throw BadPrime(std::to_string(p) + " is not prime");
    if (p >= (1ULL << 16)) throw BadPrime(std::to_string(p) + " exceeds the supported range");

    PrimeFactorization fac;
    fac.p = p;
    fac.f = static_cast<int>(nt::multiplicative_order(p % 13, 13));
    fac.s = 12 / fac.f;

    const zm::Poly phi = phi13_mod(p);
    if (fac.s == 1) {
        fac.factors.push_back(phi);
    } else {
        std::mt19937_64 rng(p);
        split_equal_degree(phi, fac.f, p, rng, fac.factors);
        for (auto& g : fac.factors) g = zm::monic(g, p);
    }
    std::sort(fac.factors.begin(), fac.factors.end());

    const u64 p2 = p * p;
    for (std::size_t i = 0; i < fac.factors.size(); ++i) {
        zm::Poly cofactor{1};
        for (std::size_t j = 0; j < fac.factors.size(); ++j)
            if (j != i) cofactor = zm::mul(cofactor, fac.factors[j], p);
        fac.lifts.push_back(fac.s == 1 ? phi13_mod(p2) : hensel_lift(fac.factors[i], cofactor, p));
    }

    zm::Poly prod{1};
    for (const auto& g : fac.lifts) prod = zm::mul(prod, g, p2);
    if (prod != phi13_mod(p2)) throw InternalError("Hensel lifts do not multiply to Phi_13 mod p^2");
    return fac;
}

// ---------------------------------------------------------------- ResidueRing

ResidueRing::ResidueRing(const PrimeFactorization& fac, std::size_t index, RingKind kind)
    : kind_(kind), prime_(fac.p), f_(fac.f) {
    if (index >= fac.factors.size()) throw std::out_of_range("residue ring index");
    const Integer pf = [&] {
        Integer r;
        mpz_ui_pow_ui(r.get_mpz_t(), prime_, static_cast<unsigned long>(f_));
        return r;
    }();
    field_units_ = nt::ipow(prime_, static_cast<unsigned>(f_)) - 1;
    if (kind == RingKind::QuotP2) {
        modulus_ = prime_ * prime_;
        poly_ = fac.lifts[index];
        order_ = pf * (pf - 1);
    } else {
        modulus_ = prime_;
        poly_ = fac.factors[index];
        order_ = pf - 1;
    }
    for (int i = 0; i < 12; ++i) {
        zm::Poly ti(static_cast<std::size_t>(i) + 1, 0);
        ti[static_cast<std::size_t>(i)] = 1 % modulus_;
        const zm::Poly r = zm::mod(ti, poly_, modulus_);
        RingElement e{};
        std::copy(r.begin(), r.end(), e.begin());
        zeta_powers_[static_cast<std::size_t>(i)] = e;
    }

    if (kind == RingKind::QuotQ) {
        if ((field_units_ >> 64) != 0) throw BadPrime("residue field of " + std::to_string(prime_) + " is too large");
        const auto primes = nt::factor(nt::to_mpz(field_units_));
        std::vector<u128> cofactors;
        for (const auto& [r, e] : primes) cofactors.push_back(field_units_ / static_cast<u128>(r.get_ui()));
        for (u128 n = 1;; ++n) {
            RingElement g{};
            u128 v = n;
            for (int i = 0; i < f_; ++i) {
                g[static_cast<std::size_t>(i)] = static_cast<u64>(v % prime_);
                v /= prime_;
            }
            if (v != 0) throw InternalError("no primitive element found");
            bool primitive = true;
            for (u128 c : cofactors) {
                if (pow(g, c) == one()) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) {
                generator_ = std::make_shared<const RingElement>(g);
                break;
            }
        }
    }
}

RingElement ResidueRing::one() const {
    RingElement e{};
    e[0] = 1 % modulus_;
    return e;
}

RingElement ResidueRing::from_integer(long v) const {
    long r = v % static_cast<long>(modulus_);
    if (r < 0) r += static_cast<long>(modulus_);
    RingElement e{};
    e[0] = static_cast<u64>(r);
    return e;
}

RingElement ResidueRing::add(const RingElement& a, const RingElement& b) const {
    RingElement r{};
    for (int i = 0; i < f_; ++i) {
        const auto k = static_cast<std::size_t>(i);
        r[k] = (a[k] + b[k]) % modulus_;
    }
    return r;
}

RingElement ResidueRing::mul(const RingElement& a, const RingElement& b) const {
    std::array<u64, 23> acc{};
    const auto f = static_cast<std::size_t>(f_);
    for (std::size_t i = 0; i < f; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < f; ++j) acc[i + j] = (acc[i + j] + nt::mulmod(a[i], b[j], modulus_)) % modulus_;
    }
    for (std::size_t k = 2 * f - 2; k >= f; --k) {
        const u64 c = acc[k];
        if (c == 0) continue;
        acc[k] = 0;
        for (std::size_t j = 0; j < f; ++j) {
            const std::size_t idx = k - f + j;
            acc[idx] = (acc[idx] + modulus_ - nt::mulmod(c, poly_[j], modulus_)) % modulus_;
        }
    }
    RingElement r{};
    std::copy(acc.begin(), acc.begin() + static_cast<std::ptrdiff_t>(f), r.begin());
    return r;
}

RingElement ResidueRing::pow(RingElement a, u128 e) const {
    RingElement r = one();
    while (e > 0) {
        if (e & 1) r = mul(r, a);
        e >>= 1;
        if (e) a = mul(a, a);
    }
    return r;
}

bool ResidueRing::is_unit(const RingElement& a) const {
    for (int i = 0; i < f_; ++i)
        if (a[static_cast<std::size_t>(i)] % prime_ != 0) return true;
    return false;
}

RingElement ResidueRing::reduce(const CycloNum& x) const {
    const Integer m(static_cast<unsigned long>(modulus_));
    RingElement r{};
    for (int i = 0; i < 12; ++i) {
        const Rational& c = x[i];
        if (c == 0) continue;
        Integer num = c.get_num() % m;
        if (num < 0) num += m;
        u64 value = num.get_ui();
        if (c.get_den() != 1) {
            Integer den = c.get_den() % m;
            const auto inv = nt::invmod(den.get_ui(), modulus_);
            if (!inv) {
                throw NonIntegralDenominator("denominator " + c.get_den().get_str() + " not invertible mod " +
                                             std::to_string(modulus_));
            }
            value = nt::mulmod(value, *inv, modulus_);
        }
        const RingElement& tp = zeta_powers_[static_cast<std::size_t>(i)];
        for (int k = 0; k < f_; ++k) {
            const auto kk = static_cast<std::size_t>(k);
            r[kk] = (r[kk] + nt::mulmod(value, tp[kk], modulus_)) % modulus_;
        }
    }
    return r;
}

RingElement ResidueRing::reduce_linear(long a, long b) const {
    RingElement r = from_integer(a);
    const RingElement bb = from_integer(b);
    const RingElement& t = zeta_powers_[1];
    for (int k = 0; k < f_; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        r[kk] = (r[kk] + nt::mulmod(bb[0], t[kk], modulus_)) % modulus_;
    }
    return r;
}

int ResidueRing::class_dimension(u64 p) const {
    if (kind_ == RingKind::QuotP2) {
        if (p != prime_) throw std::invalid_argument("QuotP2 class map requires p equal to the ring prime");
        return f_;
    }
    return field_units_ % p == 0 ? 1 : 0;
}

const RingElement& ResidueRing::generator() const {
    if (!generator_) throw std::logic_error("generator is only defined for residue fields");
    return *generator_;
}

std::vector<u64> ResidueRing::pth_power_class(const RingElement& u, u64 p) const {
    if (!is_unit(u)) throw NotAUnit("element is not invertible in the residue ring");
    if (kind_ == RingKind::QuotP2) {
        if (p != prime_) throw std::invalid_argument("QuotP2 class map requires p equal to the ring prime");
        // u^(p^f - 1) = 1 + p w (mod p^2); w in F_{p^f} is the class.
        const RingElement v = pow(u, field_units_);
        std::vector<u64> w(static_cast<std::size_t>(f_));
        for (int i = 0; i < f_; ++i) {
            const auto k = static_cast<std::size_t>(i);
            const u64 c = (v[k] + modulus_ - (i == 0 ? 1 : 0)) % modulus_;
            if (c % prime_ != 0) throw InternalError("u^(p^f-1) is not congruent to 1 mod p");
            w[k] = c / prime_;
        }
        return w;
    }
    if (field_units_ % p != 0) return {};
    const u128 cofactor = field_units_ / p;
    const RingElement x = pow(u, cofactor);
    const RingElement root = pow(*generator_, cofactor);
    RingElement acc = one();
    for (u64 k = 0; k < p; ++k) {
        if (acc == x) return {k};
        acc = mul(acc, root);
    }
    throw InternalError("p-th power residue symbol not found");
}

// ---------------------------------------------------------------- ClassVector

bool ClassVector::is_zero() const {
    for (const auto& c : components)
        for (u64 v : c)
            if (v != 0) return false;
    return true;
}

std::size_t ClassVector::dimension() const {
    std::size_t d = 0;
    for (const auto& c : components) d += c.size();
    return d;
}

std::vector<u64> ClassVector::flatten() const {
    std::vector<u64> out;
    for (const auto& c : components) out.insert(out.end(), c.begin(), c.end());
    return out;
}

ClassVector operator+(const ClassVector& a, const ClassVector& b) {
    if (a.p != b.p || a.components.size() != b.components.size()) throw std::invalid_argument("class vector shape");
    ClassVector r = a;
    for (std::size_t i = 0; i < r.components.size(); ++i) {
        if (r.components[i].size() != b.components[i].size()) throw std::invalid_argument("class vector shape");
        for (std::size_t k = 0; k < r.components[i].size(); ++k)
            r.components[i][k] = (r.components[i][k] + b.components[i][k]) % a.p;
    }
    return r;
}

ClassVector operator-(const ClassVector& a) {
    ClassVector r = a;
    for (auto& comp : r.components)
        for (auto& c : comp) c = (a.p - c) % a.p;
    return r;
}

// ---------------------------------------------------------------- ClassMap

ClassMap::ClassMap(u64 p, u64 modulus) : p_(p), modulus_(modulus), fac_(factor_13th_cyclotomic_mod(modulus)) {
    if (!nt::is_prime(p) || p == 13) throw BadPrime("class map exponent " + std::to_string(p));
    const RingKind kind = p == modulus ? RingKind::QuotP2 : RingKind::QuotQ;
    for (std::size_t i = 0; i < fac_.factors.size(); ++i) rings_.emplace_back(fac_, i, kind);
}

std::size_t ClassMap::dimension() const {
    std::size_t d = 0;
    for (const auto& r : rings_) d += static_cast<std::size_t>(r.class_dimension(p_));
    return d;
}

ClassVector ClassMap::of_elements(const std::vector<RingElement>& per_ring) const {
    ClassVector cv;
    cv.p = p_;
    cv.components.reserve(rings_.size());
    for (std::size_t i = 0; i < rings_.size(); ++i) cv.components.push_back(rings_[i].pth_power_class(per_ring[i], p_));
    return cv;
}

ClassVector ClassMap::operator()(const CycloNum& x) const {
    std::vector<RingElement> els;
    els.reserve(rings_.size());
    for (const auto& r : rings_) els.push_back(r.reduce(x));
    return of_elements(els);
}

ClassVector ClassMap::of_linear(long a, long b) const {
    std::vector<RingElement> els;
    els.reserve(rings_.size());
    for (const auto& r : rings_) els.push_back(r.reduce_linear(a, b));
    return of_elements(els);
}

ClassVector class_vector(const CycloNum& x, u64 p, u64 modulus) { return ClassMap(p, modulus)(x); }

}  // namespace gfe
