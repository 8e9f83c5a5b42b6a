#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "gfe/brute_oracle.hpp"
#include "gfe/errors.hpp"
#include "gfe/number_theory.hpp"
#include "test_support.hpp"

using namespace gfe;
using gfe::testing::uniform;

namespace {

using Triple = std::tuple<long, long, long>;

std::set<Triple> trivial_set(unsigned n) {
    std::set<Triple> s{{1, -1, 0}, {-1, 1, 0}};
    for (long sgn : {1L, -1L}) {
        if (n % 2 == 1) {
            s.insert({sgn, 0, sgn});
            s.insert({0, sgn, sgn});
        } else {
            s.insert({1, 0, sgn});
            s.insert({0, 1, sgn});
        }
    }
    return s;
}

std::set<Triple> as_triples(const std::vector<Solution>& sols, unsigned n) {
    std::set<Triple> s;
    for (const auto& x : sols)
        if (x.n == n) s.insert({x.a.get_si(), x.b.get_si(), x.c.get_si()});
    return s;
}

// Oracle: every ordered coprime pair, c found by scanning |c| upward in exact
// arithmetic (only feasible for small bounds).
std::set<Triple> naive_search(long bound, unsigned n) {
    std::set<Triple> out;
    for (long a = -bound; a <= bound; ++a)
        for (long b = -bound; b <= bound; ++b) {
            if (std::gcd(a, b) != 1) continue;
            const Integer v = sum13(a, b);
            for (long c = -400; c <= 400; ++c) {
                Integer cn;
                mpz_pow_ui(cn.get_mpz_t(), Integer(c).get_mpz_t(), n);
                if (cn == v) out.insert({a, b, c});
            }
        }
    return out;
}

}  // namespace

TEST_CASE("search at bound 50 finds only trivial solutions") {
    const auto sols = search(SearchConfig::all_up_to(50, 30));
    for (unsigned n = 2; n <= 30; ++n) CHECK(as_triples(sols, n) == trivial_set(n));
    for (const auto& s : sols) {
        CHECK(s.is_trivial());
        CHECK(s.primitive);
        CHECK((s.c % 13 == 0) == ((s.a + s.b) % 13 == 0));
    }
    CHECK(std::is_sorted(sols.begin(), sols.end(), [](const Solution& l, const Solution& r) { return l.n < r.n; }));
}

TEST_CASE("search agrees with a naive scan at small bounds") {
    for (unsigned n : {2u, 3u, 5u, 7u, 13u}) {
        SearchConfig cfg;
        cfg.bound = 4;
        cfg.exponents = {n};
        CHECK(as_triples(search(cfg), n) == naive_search(4, n));
    }
}

TEST_CASE("search is deterministic across thread counts") {
    SearchConfig cfg = SearchConfig::all_up_to(20, 12);
    cfg.threads = 1;
    const auto one = search(cfg);
    cfg.threads = 4;
    CHECK(search(cfg) == one);
    const std::string csv = to_csv(one);
    CHECK(csv.rfind("a,b,c,n,primitive\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(one.size()) + 1);
}

TEST_CASE("search config validation") {
    SearchConfig cfg;
    cfg.bound = 0;
    cfg.exponents = {2};
    CHECK_THROWS_AS(search(cfg), std::invalid_argument);
    cfg.bound = 3;
    cfg.exponents = {1};
    CHECK_THROWS_AS(search(cfg), std::invalid_argument);
    // 1 + 1 = 2 is not a square
    cfg.exponents = {2};
    for (const auto& s : search(cfg)) CHECK_FALSE((s.a == 1 && s.b == 1));
}

TEST_CASE("perfect power round trip") {
    for (int t = 0; t < 200; ++t) {
        const Integer c = uniform(-5000, 5000);
        const auto n = static_cast<unsigned>(uniform(2, 12));
        Integer cn;
        mpz_pow_ui(cn.get_mpz_t(), c.get_mpz_t(), n);
        const auto r = nt::exact_root(cn, n);
        REQUIRE(r.has_value());
        Integer back;
        mpz_pow_ui(back.get_mpz_t(), r->get_mpz_t(), n);
        CHECK(back == cn);
        if (abs(c) >= 2) CHECK_FALSE(nt::exact_root(cn + 1, n).has_value());
    }
}

TEST_CASE("gcd facts") {
    const auto f = gcd_facts(1, 12);
    CHECK(f.gcd == 13);
    CHECK(f.v13_phi == 1);
    CHECK(f.thirteen_divides_sum);
    CHECK(f.thirteen_divides_value);

    const auto g = gcd_facts(1, 1);
    CHECK(g.gcd == 1);
    CHECK(g.phi == 1);

    const auto h = gcd_facts(2, 1);
    CHECK(h.phi == 2731);  // 8193 / 3
    CHECK(h.gcd == 1);
    CHECK(h.other_primes_one_mod_13);

    CHECK(gcd_facts(1, -1).gcd == 13);
    CHECK_THROWS_AS(gcd_facts(2, 4), NotCoprime);
    CHECK_THROWS_AS(gcd_facts(0, 0), NotCoprime);

    // Property: the chain holds on random coprime pairs.
    for (int t = 0; t < 150; ++t) {
        const long a = uniform(-200, 200);
        const long b = uniform(-200, 200);
        if (std::gcd(a, b) != 1) continue;
        const auto r = gcd_facts(a, b);
        CHECK((r.gcd == 1 || r.gcd == 13));
        CHECK(r.phi * r.sum == sum13(a, b));
    }
}

TEST_CASE("unit equation witnesses for the trivial families") {
    const auto i = unit_equation_witness(1, 0, 5);
    CHECK(i.family == TrivialFamily::I);
    CHECK(i.class_trivial);
    CHECK(i.pair_condition);

    const auto ii = unit_equation_witness(0, -1, 5);
    CHECK(ii.family == TrivialFamily::II);
    CHECK(ii.class_trivial);

    const auto iii = unit_equation_witness(1, 1, 5);
    CHECK(iii.family == TrivialFamily::III);
    CHECK_FALSE(iii.class_trivial);
    CHECK(iii.exponents == std::vector<u64>{1, 0, 0, 0, 0});
    // 5th powers mod 25 are 0, +-1, +-7, so 2 is not one.
    CHECK_FALSE(iii.pair_condition);

    const auto iv = unit_equation_witness(-1, 1, 5);
    CHECK(iv.family == TrivialFamily::IV);
    CHECK(iv.branch == SieveCase::CaseII);
    CHECK(iv.class_trivial);
    CHECK(iv.pair_condition);

    CHECK_THROWS_AS(unit_equation_witness(2, 1, 5), UnsupportedPair);
    CHECK_THROWS_AS(unit_equation_witness(1, 0, 13), UnsupportedPrime);
}

TEST_CASE("trivial families match the sieve output") {
    for (u64 p : {5ull, 7ull, 11ull}) {
        const auto rep1 = run_sieve(p, SieveCase::CaseI);
        const auto witnesses_of = [](const SieveReport& r, long a, long b) {
            for (const auto& s : r.survivors)
                for (const auto& w : s.witnesses)
                    if (w.alpha == a && w.beta == b) return std::optional<std::vector<u64>>(s.exponents);
            return std::optional<std::vector<u64>>();
        };
        const auto zero = witnesses_of(rep1, 0, 1);
        REQUIRE(zero.has_value());
        CHECK(*zero == unit_equation_witness(0, 1, p).exponents);

        const auto w3 = unit_equation_witness(1, 1, p);
        const auto found = witnesses_of(rep1, 1, 1);
        CHECK(found.has_value() == w3.pair_condition);
        if (found) CHECK(*found == w3.exponents);

        const long m = static_cast<long>(p * p);
        const auto rep2 = run_sieve(p, SieveCase::CaseII);
        const auto w4 = witnesses_of(rep2, 1, m - 1);
        REQUIRE(w4.has_value());
        CHECK(*w4 == unit_equation_witness(1, -1, p).exponents);
    }
}
