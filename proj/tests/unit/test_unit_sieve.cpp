#include "doctest.h"

#include <set>

#include <nlohmann/json.hpp>

#include "gfe/errors.hpp"
#include "gfe/unit_sieve.hpp"
#include "test_support.hpp"

using namespace gfe;

namespace {

const std::vector<u64> kSievePrimes = {5, 7, 11, 17, 19, 23, 29, 31, 37, 41, 43, 47};

CycloNum from_coeffs(std::initializer_list<long> low_to_high) {
    CycloNum::Coords c{};
    std::size_t i = 0;
    for (long v : low_to_high) c[i++] = v;
    return CycloNum(c);
}

// -2z^11 - 4z^10 - 3z^9 - 4z^8 - 2z^7 - 4z^5 - 5z^4 - z^3 - z^2 - 5z - 4
CycloNum survivor_epsilon() { return from_coeffs({-4, -5, -1, -1, -5, -4, 0, -2, -4, -3, -4, -2}); }

// -2z^11 - 2z^10 + z^9 - 3z^8 - z^7 - z^6 - z^5 - z^4 - 3z^3 + z^2 - 2z - 2
CycloNum fifth_root_witness() { return from_coeffs({-2, -2, 1, -3, -1, -1, -1, -1, -3, 1, -2, -2}); }

// Oracle: count pairs by a plain double loop over naive p-th powers.
std::size_t brute_candidate_count(long p, long scale, bool normalized) {
    const long m = p * p;
    std::set<long> powers;
    for (long x = 0; x < m; ++x) {
        long y = 1;
        for (long t = 0; t < p; ++t) y = y * x % m;
        powers.insert(y);
    }
    std::size_t n = 0;
    for (long a = 0; a < m; ++a)
        for (long b = 0; b < m; ++b) {
            if (normalized && b < a) continue;
            if (a % p == 0 && b % p == 0) continue;
            if (powers.count(scale * (a + b) % m)) ++n;
        }
    return n;
}

std::set<std::vector<u64>> survivor_classes(const SieveReport& r) {
    std::set<std::vector<u64>> s;
    for (const auto& u : r.survivors) s.insert(u.exponents);
    return s;
}

}  // namespace

TEST_CASE("candidate_pairs") {
    CHECK(candidate_pairs(5, SieveCase::CaseI).size() == 62);
    CHECK(candidate_pairs(7, SieveCase::CaseI).size() == 171);
    CHECK(candidate_pairs(5, SieveCase::CaseII).size() == brute_candidate_count(5, 13, true));
    CHECK(candidate_pairs(7, SieveCase::CaseII).size() == brute_candidate_count(7, 13, true));
    CHECK(candidate_pairs(11, SieveCase::CaseI).size() == brute_candidate_count(11, 1, true));
    CHECK(candidate_pairs(5, SieveCase::CaseI, false).size() == brute_candidate_count(5, 1, false));

    for (const auto& pr : candidate_pairs(7, SieveCase::CaseI)) {
        CHECK(pr.alpha <= pr.beta);
        CHECK(pr.beta < 49);
        CHECK_FALSE((pr.alpha % 7 == 0 && pr.beta % 7 == 0));
    }

    for (u64 bad : {2ULL, 3ULL, 13ULL, 53ULL, 79ULL, 9ULL})
        CHECK_THROWS_AS(candidate_pairs(bad, SieveCase::CaseI), UnsupportedPrime);
}

TEST_CASE("pth_powers_mod_p2 has exactly p elements") {
    for (u64 p : kSievePrimes) {
        const auto t = pth_powers_mod_p2(p);
        CHECK(static_cast<u64>(std::count(t.begin(), t.end(), true)) == p);
    }
}

TEST_CASE("build_pi: rank 5 at every sieve prime up to 47") {
    const auto g5 = build_pi(5);
    CHECK(g5.rank() == 5);
    CHECK(g5.order() == 3125);
    CHECK(build_pi(7).order() == 16807);
    CHECK_FALSE(g5.generator_classes()[0].is_zero());
    CHECK(g5.generators()[0] == CycloNum(1) + CycloNum::zeta());
    CHECK(g5.generators()[0] * (CycloNum(1) - CycloNum::zeta()) == CycloNum(1) - CycloNum::zeta_power(2));

    for (u64 p : kSievePrimes) {
        CAPTURE(p);
        const auto g = build_pi(p);
        CHECK(g.rank() == 5);
        CHECK(g.class_map().dimension() == 12);
    }
    CHECK_THROWS_AS(build_pi(53), UnsupportedPrime);
}

TEST_CASE("preimage inverts class_of_exponents") {
    for (u64 p : {5ULL, 7ULL, 17ULL}) {
        const auto g = build_pi(p);
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<u64> e(5);
            for (auto& x : e) x = static_cast<u64>(gfe::testing::uniform(0, static_cast<long>(p) - 1));
            const auto v = g.class_of_exponents(e);
            REQUIRE(g.preimage(v).has_value());
            CHECK(*g.preimage(v) == e);
            if (trial < 5) CHECK(g.class_map()(g.representative(e)) == v);
        }
    }
}

TEST_CASE("run_sieve Case I, p = 5") {
    const auto r = run_sieve(5, SieveCase::CaseI);
    CHECK(r.candidate_count == 62);
    REQUIRE(r.survivors.size() == 2);
    CHECK(r.survivors[0].exponents == std::vector<u64>(5, 0));
    CHECK(r.survivors[0].representative == CycloNum(1));

    const auto& second = r.survivors[1];
    const ClassMap cm(5, 5);
    const CycloNum eps = survivor_epsilon();
    CHECK(cm(second.representative) == cm(eps));
    CHECK(is_pth_power_unit(second.representative / eps, 5));

    const auto ext = extraneous_unit(5);
    CHECK(cm(second.representative) == cm(ext.mu));
    CHECK(is_pth_power_unit(eps / ext.mu, 5));
    CHECK(eps / ext.mu == fifth_root_witness().pow(5));

    for (const auto& s : r.survivors) {
        const auto g = build_pi(5);
        CHECK(g.class_map()(s.representative) == g.class_of_exponents(s.exponents));
        CHECK_FALSE(s.witnesses.empty());
    }
}

TEST_CASE("run_sieve Case I, p = 7") {
    const auto r = run_sieve(7, SieveCase::CaseI);
    CHECK(r.candidate_count == 171);
    REQUIRE(r.survivors.size() == 2);
    CHECK(r.survivors[0].exponents == std::vector<u64>(5, 0));
    CHECK(ClassMap(7, 7)(r.survivors[1].representative) == ClassMap(7, 7)(extraneous_unit(7).mu));
}

TEST_CASE("run_sieve Case II") {
    for (u64 p : {5ULL, 7ULL, 11ULL}) {
        const auto r = run_sieve(p, SieveCase::CaseII);
        REQUIRE(r.survivors.size() == 1);
        CHECK(r.survivors[0].exponents == std::vector<u64>(5, 0));
    }
    CHECK(run_sieve(17, SieveCase::CaseII).survivors.size() == 2);
}

TEST_CASE("inspected solutions survive") {
    for (u64 p : {5ULL, 7ULL, 11ULL}) {
        const long m = static_cast<long>(p * p);
        const auto g = build_pi(p);
        const auto trivial = std::vector<u64>(5, 0);

        const auto case_one = run_sieve(g, SieveCase::CaseI);
        REQUIRE_FALSE(case_one.survivors.empty());
        const auto& w = case_one.survivors[0].witnesses;
        CHECK(std::find(w.begin(), w.end(), CandidatePair{0, 1}) != w.end());

        const auto pairs = candidate_pairs(p, SieveCase::CaseI);
        if (std::binary_search(pairs.begin(), pairs.end(), CandidatePair{1, 1}))
            CHECK(g.preimage(g.class_map().of_linear(1, 1)) == std::vector<u64>{1, 0, 0, 0, 0});

        const auto case_two = run_sieve(g, SieveCase::CaseII);
        const auto& w2 = case_two.survivors[0].witnesses;
        CHECK(case_two.survivors[0].exponents == trivial);
        CHECK(std::find(w2.begin(), w2.end(), CandidatePair{1, m - 1}) != w2.end());
    }
}

TEST_CASE("run_sieve is symmetric in alpha, beta and deterministic across threads") {
    for (u64 p : {5ULL, 7ULL}) {
        for (SieveCase c : {SieveCase::CaseI, SieveCase::CaseII}) {
            const auto normalized = run_sieve(p, c, {1, true});
            const auto full = run_sieve(p, c, {2, false});
            CHECK(survivor_classes(normalized) == survivor_classes(full));

            auto a = run_sieve(p, c, {1, true}).to_json();
            auto b = run_sieve(p, c, {3, true}).to_json();
            a.erase("elapsedMs");
            b.erase("elapsedMs");
            CHECK(a == b);
        }
    }
}

TEST_CASE("SieveReport JSON") {
    const auto j = run_sieve(5, SieveCase::CaseI).to_json();
    CHECK(j["p"] == 5);
    CHECK(j["case"] == "CASE_I");
    CHECK(j["candidateCount"] == 62);
    CHECK(j["generators"].size() == 5);
    CHECK(j["survivors"].size() == 2);
    CHECK(j["survivors"][1]["exponents"].size() == 5);
    CHECK(CycloNum::parse(j["survivors"][1]["representative"].get<std::string>()) ==
          run_sieve(5, SieveCase::CaseI).survivors[1].representative);
    CHECK(j.contains("elapsedMs"));
    CHECK(parse_sieve_case("II") == SieveCase::CaseII);
    CHECK_THROWS_AS(parse_sieve_case("III"), ParseError);
}

TEST_CASE("extraneous_unit") {
    const auto e5 = extraneous_unit(5);
    const CycloNum omz = CycloNum(1) - CycloNum::zeta();
    CHECK(e5.k == 2);
    CHECK(e5.gamma0 == omz.pow(5));
    CHECK(e5.mu == CycloNum(169) / omz.pow(24));

    for (u64 p : kSievePrimes) {
        CAPTURE(p);
        // Oracle: smallest k in [1, p) with 12k = -1 mod p by search.
        long k = 1;
        while ((12 * k + 1) % static_cast<long>(p) != 0) ++k;
        const auto e = extraneous_unit(p);
        CHECK(e.k == k);
        CHECK(CycloNum(13).pow(k) - CycloNum(13).pow(k) * CycloNum::zeta() ==
              e.mu * e.gamma0.pow(static_cast<long>(p)));
        CHECK(e.mu.is_integral());
        CHECK(abs(e.mu.norm()) == 1);
    }
    CHECK_THROWS_AS(extraneous_unit(3), UnsupportedPrime);
    CHECK_THROWS_AS(extraneous_unit(13), UnsupportedPrime);
}

TEST_CASE("is_pth_power_unit") {
    CHECK(is_pth_power_unit(CycloNum::zeta(), 5));
    CHECK(is_pth_power_unit(CycloNum(-1), 7));
    const CycloNum u2 = CycloNum(1) + CycloNum::zeta();
    CHECK(is_pth_power_unit(u2.pow(5), 5));
    CHECK_FALSE(is_pth_power_unit(u2, 5));
    CHECK_FALSE(is_pth_power_unit(extraneous_unit(5).mu, 5));
    CHECK(is_pth_power_unit(survivor_epsilon() / extraneous_unit(5).mu, 5));
    CHECK_THROWS_AS(is_pth_power_unit(CycloNum(2), 5), NotAUnit);
    CHECK_THROWS_AS(is_pth_power_unit(CycloNum(Rational(1, 2)), 5), NotAUnit);
    CHECK_THROWS_AS(is_pth_power_unit(CycloNum(1) - CycloNum::zeta(), 5), NotAUnit);
}

TEST_CASE("norm_of_extraneous") {
    const CubicNum rho_one_minus_rho = CubicNum::rho() * (CubicNum(1) - CubicNum::rho());
    CHECK(norm_L_to_K(mu0()) == rho_one_minus_rho.pow(-8));

    const auto n5 = norm_of_extraneous(5);
    CHECK((n5.j + 1) % 5 == 0);
    CHECK(n5.norm == rho_one_minus_rho.pow(-16));
    CHECK(norm_of_extraneous(7).j == 3);

    for (u64 p : kSievePrimes) {
        CAPTURE(p);
        const auto n = norm_of_extraneous(p);
        const long pl = static_cast<long>(p);
        CHECK((3 * n.j - 2) % pl == 0);
        CHECK((n.j + 8 * extraneous_unit(p).k) % pl == 0);
        CHECK(unit_compose_K(n.exact) == n.norm);
    }
}
