#include "doctest.h"

#include <unordered_set>

#include "gfe/errors.hpp"
#include "gfe/residue_rings.hpp"
#include "test_support.hpp"

using namespace gfe;

namespace {

// Oracle: order of p mod 13 by repeated multiplication.
int brute_order_mod13(unsigned long p) {
    unsigned long x = p % 13;
    int k = 1;
    while (x != 1) {
        x = x * p % 13;
        ++k;
    }
    return k;
}

zm::Poly phi13(u64 m) { return zm::Poly(13, 1 % m); }

zm::Poly reduce_coeffs(const zm::Poly& a, u64 m) {
    zm::Poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] % m;
    zm::trim(r);
    return r;
}

RingElement random_element(const ResidueRing& ring) {
    RingElement e{};
    for (int i = 0; i < ring.degree(); ++i)
        e[static_cast<std::size_t>(i)] = static_cast<u64>(gfe::testing::uniform(0, static_cast<long>(ring.modulus()) - 1));
    return e;
}

RingElement random_unit(const ResidueRing& ring) {
    RingElement e;
    do {
        e = random_element(ring);
    } while (!ring.is_unit(e));
    return e;
}

u64 encode(const RingElement& e, const ResidueRing& ring) {
    u64 key = 0;
    for (int i = ring.degree() - 1; i >= 0; --i) key = key * ring.modulus() + e[static_cast<std::size_t>(i)];
    return key;
}

const std::vector<u64> kSmallPrimes = {2,  3,  5,  7,  11, 17, 19, 23, 29, 31, 37,  41,  43,  47,
                                       53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 103, 139, 233};

}  // namespace

TEST_CASE("factor_13th_cyclotomic_mod: residue degrees") {
    const auto f5 = factor_13th_cyclotomic_mod(5);
    CHECK(f5.f == brute_order_mod13(5));
    CHECK(f5.f == 4);
    CHECK(f5.s == 3);

    const auto f7 = factor_13th_cyclotomic_mod(7);
    CHECK(f7.f == brute_order_mod13(7));
    CHECK(f7.s == 12 / brute_order_mod13(7));

    const auto f19 = factor_13th_cyclotomic_mod(19);
    CHECK(f19.f == 12);
    CHECK(f19.s == 1);

    CHECK_THROWS_AS(factor_13th_cyclotomic_mod(13), BadPrime);
    CHECK_THROWS_AS(factor_13th_cyclotomic_mod(15), BadPrime);
}

TEST_CASE("factorization and Hensel lift invariants") {
    for (u64 p : kSmallPrimes) {
        CAPTURE(p);
        const auto fac = factor_13th_cyclotomic_mod(p);
        CHECK(fac.f == brute_order_mod13(p));
        CHECK(fac.f * fac.s == 12);
        REQUIRE(fac.factors.size() == static_cast<std::size_t>(fac.s));
        REQUIRE(fac.lifts.size() == fac.factors.size());

        int total_degree = 0;
        zm::Poly prod{1}, lift_prod{1};
        for (std::size_t i = 0; i < fac.factors.size(); ++i) {
            CHECK(zm::degree(fac.factors[i]) == fac.f);
            CHECK(fac.factors[i].back() == 1);
            CHECK(fac.lifts[i].back() == 1);
            CHECK(reduce_coeffs(fac.lifts[i], p) == fac.factors[i]);
            total_degree += zm::degree(fac.factors[i]);
            prod = zm::mul(prod, fac.factors[i], p);
            lift_prod = zm::mul(lift_prod, fac.lifts[i], p * p);
            for (std::size_t j = i + 1; j < fac.factors.size(); ++j)
                CHECK(zm::gcd(fac.factors[i], fac.factors[j], p) == zm::Poly{1});
            if (i > 0) CHECK(fac.factors[i - 1] < fac.factors[i]);
        }
        CHECK(total_degree == 12);
        CHECK(prod == phi13(p));
        CHECK(lift_prod == phi13(p * p));
    }
}

TEST_CASE("reduce") {
    const ClassMap cm(5, 5);
    for (const auto& ring : cm.rings()) {
        const RingElement r = ring.reduce(CycloNum(13));
        CHECK(r == ring.from_integer(13));
        CHECK(r[0] == 13);

        CycloNum all;
        for (int k = 0; k <= 12; ++k) all += CycloNum::zeta_power(k);
        CHECK(ring.reduce(all) == ring.zero());

        CHECK(ring.reduce(CycloNum::zeta() * CycloNum(3) + CycloNum(2)) == ring.reduce_linear(2, 3));
        CHECK_THROWS_AS(ring.reduce(CycloNum(Rational(1, 5))), NonIntegralDenominator);
        CHECK(ring.mul(ring.reduce(CycloNum(Rational(1, 13))), ring.from_integer(13)) == ring.one());
    }
}

TEST_CASE("reduce(mu0) is a unit modulo each p_i^2 for p = 5") {
    const CycloNum mu0 = CycloNum(13) / (CycloNum(1) - CycloNum::zeta()).pow(12);
    const auto fac = factor_13th_cyclotomic_mod(5);
    const ClassMap cm(5, 5);
    for (std::size_t i = 0; i < cm.rings().size(); ++i) {
        const auto& ring = cm.rings()[i];
        const RingElement r = ring.reduce(mu0);
        // Oracle: extended gcd of the image mod p against g_i over F_5.
        zm::Poly img(r.begin(), r.begin() + ring.degree());
        img = reduce_coeffs(img, 5);
        const auto eg = zm::ext_gcd(img, fac.factors[i], 5);
        CHECK(eg.g == zm::Poly{1});
        CHECK(ring.is_unit(r));
    }
}

TEST_CASE("pth_power_class basic properties") {
    for (u64 p : {5ULL, 7ULL, 11ULL}) {
        const ClassMap cm(p, p);
        for (const auto& ring : cm.rings()) {
            const auto zero = ring.pth_power_class(ring.one(), p);
            CHECK(zero == std::vector<u64>(static_cast<std::size_t>(ring.degree()), 0));
            for (int trial = 0; trial < 50; ++trial) {
                const RingElement u = random_unit(ring), v = random_unit(ring);
                CHECK(ring.pth_power_class(ring.pow(v, p), p) == zero);
                auto cu = ring.pth_power_class(u, p);
                const auto cv = ring.pth_power_class(v, p);
                for (std::size_t k = 0; k < cu.size(); ++k) cu[k] = (cu[k] + cv[k]) % p;
                CHECK(ring.pth_power_class(ring.mul(u, v), p) == cu);
            }
            CHECK_THROWS_AS(ring.pth_power_class(ring.zero(), p), NotAUnit);
            CHECK_THROWS_AS(ring.pth_power_class(ring.from_integer(static_cast<long>(p)), p), NotAUnit);
        }
    }
}

TEST_CASE("pth_power_class kernel is exactly the p-th powers (exhaustive, p = 5, f = 4)") {
    const ClassMap cm(5, 5);
    const ResidueRing& ring = cm.rings().front();
    REQUIRE(ring.degree() == 4);
    CHECK(ring.unit_group_order() == Integer(625 * 624));

    // Oracle: the full set M^5 by raising every unit of (Z/25)[t]/(G) to the 5th power.
    std::unordered_set<u64> fifth_powers;
    RingElement e{};
    std::size_t units = 0;
    for (u64 c0 = 0; c0 < 25; ++c0)
        for (u64 c1 = 0; c1 < 25; ++c1)
            for (u64 c2 = 0; c2 < 25; ++c2)
                for (u64 c3 = 0; c3 < 25; ++c3) {
                    e = {c0, c1, c2, c3};
                    if (!ring.is_unit(e)) continue;
                    ++units;
                    fifth_powers.insert(encode(ring.pow(e, 5), ring));
                }
    CHECK(Integer(static_cast<unsigned long>(units)) == ring.unit_group_order());
    CHECK(fifth_powers.size() == 624);

    const std::vector<u64> zero(4, 0);
    std::size_t zero_classes = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const RingElement u = random_unit(ring);
        const bool in_kernel = ring.pth_power_class(u, 5) == zero;
        CHECK(in_kernel == fifth_powers.contains(encode(u, ring)));
        const RingElement v = ring.pow(random_unit(ring), 5);
        CHECK(ring.pth_power_class(v, 5) == zero);
        if (in_kernel) ++zero_classes;
    }
    // Kernel elements drawn from the full set: every zero class has a root.
    for (u64 key : fifth_powers) {
        RingElement u{};
        u64 k = key;
        for (int i = 0; i < 4; ++i) {
            u[static_cast<std::size_t>(i)] = k % 25;
            k /= 25;
        }
        CHECK(ring.pth_power_class(u, 5) == zero);
    }
    CHECK(zero_classes > 0);
}

TEST_CASE("class_vector examples") {
    for (u64 p : {5ULL, 7ULL, 11ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL, 41ULL, 43ULL, 47ULL}) {
        CAPTURE(p);
        const ClassMap cm(p, p);
        CHECK(cm.dimension() == 12);
        CHECK(cm(CycloNum::zeta()).is_zero());
        CHECK(cm(CycloNum(-1)).is_zero());
        CHECK(cm(CycloNum(-1)).dimension() == 12);
    }
    CHECK(class_vector(CycloNum::zeta(), 5, 5).is_zero());
    CHECK(class_vector(CycloNum(-1), 7, 7).is_zero());

    // 13^k - zeta 13^k = mu gamma0^p with k = 2 at p = 5.
    const CycloNum one_minus_zeta = CycloNum(1) - CycloNum::zeta();
    const CycloNum mu = CycloNum(169) / one_minus_zeta.pow(24);
    const ClassMap cm(5, 5);
    CHECK(cm(CycloNum(169) - CycloNum(169) * CycloNum::zeta()) == cm(mu));
    CHECK_FALSE(cm(mu).is_zero());
}

TEST_CASE("residue field classes (auxiliary prime)") {
    const ClassMap cm(5, 19);
    REQUIRE(cm.rings().size() == 1);
    const auto& field = cm.rings().front();
    CHECK(field.kind() == RingKind::QuotQ);
    Integer q12;
    mpz_ui_pow_ui(q12.get_mpz_t(), 19, 12);
    CHECK(field.unit_group_order() + 1 == q12);
    CHECK(cm.dimension() == 1);
    CHECK(field.pth_power_class(field.generator(), 5) == std::vector<u64>{1});
    for (int trial = 0; trial < 50; ++trial) {
        const RingElement u = random_unit(field), v = random_unit(field);
        CHECK(field.pth_power_class(field.pow(u, 5), 5) == std::vector<u64>{0});
        const u64 a = field.pth_power_class(u, 5)[0], b = field.pth_power_class(v, 5)[0];
        CHECK(field.pth_power_class(field.mul(u, v), 5) == std::vector<u64>{(a + b) % 5});
    }
    // Rationals are 5th powers in F_{19^12} since 5 does not divide 18.
    CHECK(cm.of_linear(7, 0).is_zero());

    // 5 does not divide 3^3 - 1: every component is trivial.
    const ClassMap trivial(5, 3);
    CHECK(trivial.dimension() == 0);
    CHECK(trivial(CycloNum::zeta() + CycloNum(2)).dimension() == 0);
}
