#include "gfe/brute_oracle.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gfe/errors.hpp"
#include "gfe/number_theory.hpp"
#include "parallel.hpp"

namespace gfe {

namespace {

Integer ipow(const Integer& x, unsigned n) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), n);
    return r;
}

}  // namespace

SearchConfig SearchConfig::all_up_to(long bound, unsigned max_n) {
    SearchConfig cfg;
    cfg.bound = bound;
    for (unsigned n = 2; n <= max_n; ++n) cfg.exponents.push_back(n);
    return cfg;
}

bool Solution::is_trivial() const { return a == 0 || b == 0 || c == 0; }

bool operator<(const Solution& l, const Solution& r) {
    if (l.n != r.n) return l.n < r.n;
    if (l.a != r.a) return l.a < r.a;
    if (l.b != r.b) return l.b < r.b;
    return l.c < r.c;
}

Integer sum13(const Integer& a, const Integer& b) { return ipow(a, 13) + ipow(b, 13); }

std::vector<Solution> search(const SearchConfig& cfg) {
    if (cfg.bound < 1) throw std::invalid_argument("search bound must be at least 1");
    for (unsigned n : cfg.exponents)
        if (n < 2) throw std::invalid_argument("exponent n must be at least 2");

    // Representatives b >= |a|, b > 0 cover every pair up to swapping and
    // negating (a, b); orbits are expanded below.
    const auto bound = static_cast<std::size_t>(cfg.bound);
    std::vector<std::vector<Solution>> per_b(bound + 1);
    detail::parallel_for(bound + 1, cfg.threads, [&](std::size_t bi) {
        const long b = static_cast<long>(bi);
        if (b == 0) return;
        for (long a = -b; a <= b; ++a) {
            if (std::gcd(a, b) != 1) continue;
            const Integer ai(a), bi_(b);
            const Integer v = sum13(ai, bi_);
            for (unsigned n : cfg.exponents) {
                const auto r = nt::exact_root(v, n);
                if (!r) continue;
                const std::pair<Integer, Integer> images[] = {{ai, bi_}, {bi_, ai}, {-ai, -bi_}, {-bi_, -ai}};
                for (const auto& [x, y] : images) {
                    const Integer w = sum13(x, y);
                    for (const Integer& c : {Integer(*r), Integer(-*r)}) {
                        if (ipow(c, n) != w) continue;
                        Integer g = gcd(gcd(x, y), c);
                        per_b[bi].push_back(Solution{x, y, c, n, g == 1});
                    }
                }
            }
        }
    });

    std::set<Solution> merged;
    for (auto& v : per_b) merged.insert(v.begin(), v.end());
    return {merged.begin(), merged.end()};
}

std::string to_csv(const std::vector<Solution>& sols) {
    std::ostringstream os;
    os << "a,b,c,n,primitive\n";
    for (const auto& s : sols) os << s.a << ',' << s.b << ',' << s.c << ',' << s.n << ',' << (s.primitive ? 1 : 0) << '\n';
    return os.str();
}

Integer phi13_value(const Integer& a, const Integer& b) {
    const Integer s = a + b;
    if (s == 0) return 13 * ipow(a, 12);
    return sum13(a, b) / s;
}

GcdFacts gcd_facts(const Integer& a, const Integer& b) {
    if (gcd(a, b) != 1) throw NotCoprime("gcd(" + a.get_str() + ", " + b.get_str() + ") != 1");
    GcdFacts f;
    f.a = a;
    f.b = b;
    f.sum = a + b;
    f.phi = phi13_value(a, b);
    f.gcd = gcd(f.sum, f.phi);
    f.thirteen_divides_sum = f.sum % 13 == 0;
    f.thirteen_divides_phi = f.phi % 13 == 0;
    f.v13_phi = nt::valuation(f.phi, 13);
    f.thirteen_divides_value = sum13(a, b) % 13 == 0;

    for (const auto& [l, e] : nt::factor(f.phi)) {
        (void)e;
        if (l != 13 && l % 13 != 1) f.other_primes_one_mod_13 = false;
    }

    const bool g13 = f.gcd == 13;
    const bool chain = g13 == f.thirteen_divides_value && g13 == f.thirteen_divides_sum &&
                       g13 == f.thirteen_divides_phi && g13 == (f.v13_phi == 1);
    if (!chain) throw IdentityCheckFailed("13-adic equivalences fail at (" + a.get_str() + ", " + b.get_str() + ")");
    if (f.gcd != 1 && f.gcd != 13) throw IdentityCheckFailed("gcd(a + b, phi) = " + f.gcd.get_str());
    if (!f.other_primes_one_mod_13)
        throw IdentityCheckFailed("phi(" + a.get_str() + ", " + b.get_str() + ") has a prime factor not 1 mod 13");
    return f;
}

std::string to_string(TrivialFamily f) {
    switch (f) {
        case TrivialFamily::I: return "i";
        case TrivialFamily::II: return "ii";
        case TrivialFamily::III: return "iii";
        case TrivialFamily::IV: return "iv";
    }
    return "?";
}

UnitWitness unit_equation_witness(long a, long b, u64 p) {
    UnitWitness w;
    const CycloNum zeta = CycloNum::zeta();
    const auto is = [&](long x, long y) { return (a == x && b == y) || (a == -x && b == -y); };
    if (is(1, 0)) {
        w.family = TrivialFamily::I;
        w.epsilon = CycloNum(1);
    } else if (is(0, 1)) {
        w.family = TrivialFamily::II;
        w.epsilon = zeta;
    } else if (is(1, 1)) {
        w.family = TrivialFamily::III;
        w.epsilon = CycloNum(1) + zeta;
    } else if (is(1, -1)) {
        w.family = TrivialFamily::IV;
        w.branch = SieveCase::CaseII;
        w.epsilon = CycloNum(1);
    } else {
        throw UnsupportedPair("(" + std::to_string(a) + ", " + std::to_string(b) + ") is not a trivial-solution pair");
    }

    const UnitClassGroup group(p);
    const ClassMap& map = group.class_map();
    ClassVector v = map.of_linear(a, b);
    if (w.branch == SieveCase::CaseII) v = v - map(CycloNum(1) - zeta);
    const ClassVector eps_class = map(w.epsilon);
    if (!(v - eps_class).is_zero())
        throw IdentityCheckFailed("class of a + b zeta differs from that of epsilon");
    const auto pre = group.preimage(eps_class);
    if (!pre) throw InternalError("unit class outside the generator span");
    w.exponents = *pre;
    w.class_trivial = eps_class.is_zero();

    const long m = static_cast<long>(p * p);
    const long scale = w.branch == SieveCase::CaseI ? 1 : 13;
    const long s = ((scale * (a + b)) % m + m) % m;
    w.pair_condition = pth_powers_mod_p2(p)[static_cast<std::size_t>(s)];
    return w;
}

}  // namespace gfe
