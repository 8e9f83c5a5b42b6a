#include "gfe/number_theory.hpp"

#include <algorithm>
#include <numeric>

#include "gfe/errors.hpp"

namespace gfe::nt {

u64 powmod(u64 base, u128 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

std::optional<u64> invmod(u64 a, u64 m) {
    __int128 old_r = static_cast<__int128>(a % m), r = m;
    __int128 old_s = 1, s = 0;
    while (r != 0) {
        __int128 q = old_r / r;
        std::swap(old_r, r);
        r -= q * old_r;
        std::swap(old_s, s);
        s -= q * old_s;
    }
    if (old_r != 1) return std::nullopt;
    old_s %= static_cast<__int128>(m);
    if (old_s < 0) old_s += m;
    return static_cast<u64>(old_s);
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % small == 0) return n == small;
    }
    u64 d = n - 1;
    unsigned r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < r; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

u64 multiplicative_order(u64 a, u64 n) {
    a %= n;
    u64 x = a;
    u64 k = 1;
    while (x != 1 % n) {
        x = mulmod(x, a, n);
        ++k;
        if (k > n) throw Error("multiplicative_order: element is not invertible");
    }
    return k;
}

u128 ipow(u64 base, unsigned exp) {
    u128 r = 1;
    while (exp-- > 0) r *= base;
    return r;
}

mpz_class to_mpz(u128 v) {
    mpz_class hi(static_cast<unsigned long>(v >> 64));
    mpz_class lo(static_cast<unsigned long>(v & ~0ULL));
    return (hi << 64) + lo;
}

namespace {

bool probably_prime(const mpz_class& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

// Brent's variant of Pollard rho; returns a nontrivial factor of composite n.
mpz_class rho_factor(const mpz_class& n) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = 1;; ++c) {
        mpz_class y = 2, x, g = 1, q = 1, ys;
        unsigned long r = 1;
        const unsigned long m = 128;
        auto f = [&](const mpz_class& v) {
            mpz_class t = v * v + c;
            return mpz_class(t % n);
        };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = f(y);
            unsigned long k = 0;
            while (k < r && g == 1) {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    mpz_class diff = abs(x - y);
                    q = (q * diff) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            }
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                mpz_class diff = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_into(mpz_class n, std::vector<mpz_class>& out) {
    if (n == 1) return;
    if (probably_prime(n)) {
        out.push_back(n);
        return;
    }
    mpz_class d = rho_factor(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

Factorization factor(const mpz_class& n) {
    if (n == 0) throw Error("factor: zero has no factorization");
    mpz_class m = abs(n);
    std::vector<mpz_class> primes;
    for (unsigned long d = 2; d < 10000 && d * d <= m; d += (d == 2 ? 1 : 2)) {
        while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
            primes.emplace_back(d);
            m /= d;
        }
    }
    factor_into(m, primes);
    std::sort(primes.begin(), primes.end());
    Factorization result;
    for (const auto& q : primes) {
        if (!result.empty() && result.back().first == q) {
            ++result.back().second;
        } else {
            result.emplace_back(q, 1);
        }
    }
    return result;
}

std::vector<mpz_class> divisors(const mpz_class& n, std::size_t cap) {
    const auto fac = factor(n);
    std::size_t count = 1;
    for (const auto& [q, e] : fac) {
        count *= (e + 1);
        if (count > cap) throw CapExceeded("divisor count exceeds cap of " + std::to_string(cap));
    }
    std::vector<mpz_class> divs{1};
    for (const auto& [q, e] : fac) {
        const std::size_t base = divs.size();
        mpz_class power = 1;
        for (unsigned i = 1; i <= e; ++i) {
            power *= q;
            for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * power);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

std::optional<mpz_class> exact_root(const mpz_class& x, unsigned n) {
    if (n == 0) return std::nullopt;
    if (x < 0 && n % 2 == 0) return std::nullopt;
    mpz_class root;
    mpz_root(root.get_mpz_t(), x.get_mpz_t(), n);
    mpz_class back;
    mpz_pow_ui(back.get_mpz_t(), root.get_mpz_t(), n);
    if (back != x) return std::nullopt;
    return root;
}

unsigned valuation(mpz_class n, unsigned long p) {
    if (n == 0) throw Error("valuation of zero");
    unsigned v = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        n /= p;
        ++v;
    }
    return v;
}

}  // namespace gfe::nt
