#include "gfe/zm_poly.hpp"

#include <stdexcept>

namespace gfe::zm {

using nt::mulmod;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly add(const Poly& a, const Poly& b, u64 m) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        const u64 x = i < a.size() ? a[i] : 0;
        const u64 y = i < b.size() ? b[i] : 0;
        r[i] = (x + y) % m;
    }
    trim(r);
    return r;
}

Poly sub(const Poly& a, const Poly& b, u64 m) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        const u64 x = i < a.size() ? a[i] : 0;
        const u64 y = i < b.size() ? b[i] : 0;
        r[i] = (x + m - y) % m;
    }
    trim(r);
    return r;
}

Poly mul(const Poly& a, const Poly& b, u64 m) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], m)) % m;
    }
    trim(r);
    return r;
}

Poly scale(const Poly& a, u64 c, u64 m) {
    Poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mulmod(a[i], c, m);
    trim(r);
    return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, u64 m) {
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    const auto lead_inv = nt::invmod(b.back(), m);
    if (!lead_inv) throw std::domain_error("leading coefficient not invertible");
    Poly r = a;
    trim(r);
    if (r.size() < b.size()) return {{}, r};
    Poly q(r.size() - b.size() + 1, 0);
    const std::size_t shift_max = r.size() - b.size();
    for (std::size_t shift = shift_max + 1; shift-- > 0;) {
        const std::size_t k = shift + b.size() - 1;
        const u64 c = mulmod(r[k], *lead_inv, m);
        q[shift] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] = (r[shift + j] + m - mulmod(c, b[j], m)) % m;
    }
    trim(q);
    r.resize(b.size() - 1);
    trim(r);
    return {q, r};
}

Poly monic(const Poly& a, u64 m) {
    if (a.empty()) return a;
    return scale(a, *nt::invmod(a.back(), m), m);
}

Poly gcd(Poly a, Poly b, u64 m) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = mod(a, b, m);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, m);
}

ExtGcd ext_gcd(const Poly& a, const Poly& b, u64 m) {
    Poly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    trim(r0);
    trim(r1);
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1, m);
        Poly s2 = sub(s0, mul(q, s1, m), m);
        Poly t2 = sub(t0, mul(q, t1, m), m);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.empty()) return {r0, s0, t0};
    const u64 inv = *nt::invmod(r0.back(), m);
    return {scale(r0, inv, m), scale(s0, inv, m), scale(t0, inv, m)};
}

Poly powmod(Poly base, u128 exp, const Poly& modulus, u64 m) {
    Poly result{1 % m};
    trim(result);
    base = mod(base, modulus, m);
    while (exp > 0) {
        if (exp & 1) result = mod(mul(result, base, m), modulus, m);
        exp >>= 1;
        if (exp) base = mod(mul(base, base, m), modulus, m);
    }
    return result;
}

Poly from_signed(const std::vector<long>& coeffs, u64 m) {
    Poly r(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        long v = coeffs[i] % static_cast<long>(m);
        if (v < 0) v += static_cast<long>(m);
        r[i] = static_cast<u64>(v);
    }
    trim(r);
    return r;
}

}  // namespace gfe::zm
