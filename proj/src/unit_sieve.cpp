#include "gfe/unit_sieve.hpp"

#include <algorithm>
#include <chrono>
#include <map>

#include <nlohmann/json.hpp>

#include "gfe/errors.hpp"
#include "gfe/number_theory.hpp"
#include "parallel.hpp"

namespace gfe {

namespace {

long mod(long x, long m) {
    long r = x % m;
    return r < 0 ? r + m : r;
}

CycloNum one_minus_zeta() { return CycloNum(1) - CycloNum::zeta(); }

}  // namespace

std::string to_string(SieveCase c) { return c == SieveCase::CaseI ? "CASE_I" : "CASE_II"; }

SieveCase parse_sieve_case(std::string_view text) {
    if (text == "I" || text == "CASE_I" || text == "1") return SieveCase::CaseI;
    if (text == "II" || text == "CASE_II" || text == "2") return SieveCase::CaseII;
    throw ParseError("unknown sieve case '" + std::string(text) + "'");
}

void require_sieve_prime(u64 p) {
    if (p < 5 || p == 13 || p % 13 == 1 || p >= (1u << 16) || !nt::is_prime(p))
        throw UnsupportedPrime("sieve prime must be prime, not 2, 3 or 13, and not 1 mod 13 (got " +
                               std::to_string(p) + ")");
}

std::vector<bool> pth_powers_mod_p2(u64 p) {
    const u64 m = p * p;
    std::vector<bool> table(m, false);
    for (u64 x = 0; x < m; ++x) table[nt::powmod(x, p, m)] = true;
    return table;
}

std::vector<CandidatePair> candidate_pairs(u64 p, SieveCase c, bool normalized) {
    require_sieve_prime(p);
    const long m = static_cast<long>(p * p);
    const long pl = static_cast<long>(p);
    const auto powers = pth_powers_mod_p2(p);
    const long scale = c == SieveCase::CaseI ? 1 : 13;
    std::vector<CandidatePair> out;
    for (long a = 0; a < m; ++a) {
        for (long b = normalized ? a : 0; b < m; ++b) {
            if (a % pl == 0 && b % pl == 0) continue;
            if (powers[static_cast<std::size_t>(mod(scale * (a + b), m))]) out.push_back({a, b});
        }
    }
    return out;
}

std::vector<CycloNum> sieve_generators() {
    std::vector<CycloNum> gens;
    for (int a = 2; a <= 6; ++a) {
        CycloNum u;
        for (int k = 0; k < a; ++k) u += CycloNum::zeta_power(k);
        gens.push_back(u);
    }
    return gens;
}

// ---------------------------------------------------------------- UnitClassGroup

UnitClassGroup::UnitClassGroup(u64 p) : p_((require_sieve_prime(p), p)), map_(p, p), generators_(sieve_generators()) {
    for (const auto& g : generators_) gen_classes_.push_back(map_(g));

    const std::size_t rows = map_.dimension();
    const std::size_t cols = generators_.size();
    std::vector<std::vector<u64>> a(rows, std::vector<u64>(cols));
    for (std::size_t j = 0; j < cols; ++j) {
        const auto flat = gen_classes_[j].flatten();
        for (std::size_t i = 0; i < rows; ++i) a[i][j] = flat[i];
    }
    transform_.assign(rows, std::vector<u64>(rows, 0));
    for (std::size_t i = 0; i < rows; ++i) transform_[i][i] = 1;

    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        std::swap(transform_[piv], transform_[r]);
        const u64 inv = *nt::invmod(a[r][c], p_);
        for (auto& x : a[r]) x = nt::mulmod(x, inv, p_);
        for (auto& x : transform_[r]) x = nt::mulmod(x, inv, p_);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const u64 f = a[i][c];
            for (std::size_t k = 0; k < cols; ++k) a[i][k] = (a[i][k] + p_ - nt::mulmod(f, a[r][k], p_)) % p_;
            for (std::size_t k = 0; k < rows; ++k)
                transform_[i][k] = (transform_[i][k] + p_ - nt::mulmod(f, transform_[r][k], p_)) % p_;
        }
        ++r;
    }
    rank_ = static_cast<int>(r);
    if (rank_ < static_cast<int>(cols))
        throw KernelNotTrivial("generator classes have rank " + std::to_string(rank_) + " < 5 at p = " +
                               std::to_string(p_));
}

Integer UnitClassGroup::order() const {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), p_, generators_.size());
    return r;
}

std::optional<std::vector<u64>> UnitClassGroup::preimage(const ClassVector& v) const {
    const auto flat = v.flatten();
    const std::size_t rows = transform_.size();
    if (flat.size() != rows) throw std::invalid_argument("class vector has wrong dimension");
    std::vector<u64> w(rows, 0);
    for (std::size_t i = 0; i < rows; ++i) {
        u64 acc = 0;
        for (std::size_t k = 0; k < rows; ++k) acc = (acc + nt::mulmod(transform_[i][k], flat[k], p_)) % p_;
        w[i] = acc;
    }
    const std::size_t n = generators_.size();
    for (std::size_t i = n; i < rows; ++i)
        if (w[i] != 0) return std::nullopt;
    w.resize(n);
    return w;
}

ClassVector UnitClassGroup::class_of_exponents(const std::vector<u64>& exponents) const {
    ClassVector acc = map_(CycloNum(1));
    for (std::size_t a = 0; a < exponents.size(); ++a)
        for (u64 t = 0; t < exponents[a] % p_; ++t) acc = acc + gen_classes_[a];
    return acc;
}

CycloNum UnitClassGroup::representative(const std::vector<u64>& exponents) const {
    CycloNum r(1);
    for (std::size_t a = 0; a < exponents.size(); ++a) {
        long e = static_cast<long>(exponents[a] % p_);
        if (2 * e > static_cast<long>(p_)) e -= static_cast<long>(p_);
        if (e != 0) r *= generators_[a].pow(e);
    }
    return r;
}

UnitClassGroup build_pi(u64 p) { return UnitClassGroup(p); }

// ---------------------------------------------------------------- sieve

nlohmann::json SieveReport::to_json() const {
    nlohmann::json j;
    j["p"] = p;
    j["case"] = to_string(sieve_case);
    j["candidateCount"] = candidate_count;
    j["generators"] = nlohmann::json::array();
    for (const auto& g : generators) j["generators"].push_back(g.to_string());
    j["survivors"] = nlohmann::json::array();
    for (const auto& s : survivors) {
        nlohmann::json w = nlohmann::json::array();
        for (const auto& pr : s.witnesses) w.push_back({pr.alpha, pr.beta});
        j["survivors"].push_back({{"exponents", s.exponents},
                                  {"representative", s.representative.to_string()},
                                  {"witnesses", std::move(w)}});
    }
    j["elapsedMs"] = elapsed_ms;
    return j;
}

SieveReport run_sieve(u64 p, SieveCase c, const SieveOptions& options) {
    return run_sieve(UnitClassGroup(p), c, options);
}

SieveReport run_sieve(const UnitClassGroup& group, SieveCase c, const SieveOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    const u64 p = group.p();
    const auto pairs = candidate_pairs(p, c, options.normalized);
    const ClassMap& map = group.class_map();
    const ClassVector twist = map(one_minus_zeta());

    std::vector<std::optional<std::vector<u64>>> results(pairs.size());
    detail::parallel_for(pairs.size(), options.threads, [&](std::size_t i) {
        ClassVector v;
        try {
            v = map.of_linear(pairs[i].alpha, pairs[i].beta);
        } catch (const NotAUnit&) {
            throw InternalError("alpha + beta zeta is not a local unit for (" + std::to_string(pairs[i].alpha) + ", " +
                                std::to_string(pairs[i].beta) + ")");
        }
        if (c == SieveCase::CaseII) v = v - twist;
        results[i] = group.preimage(v);
    });

    std::map<std::vector<u64>, std::vector<CandidatePair>> classes;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        if (results[i]) classes[*results[i]].push_back(pairs[i]);

    SieveReport report;
    report.p = p;
    report.sieve_case = c;
    report.candidate_count = pairs.size();
    report.generators = group.generators();
    for (auto& [exps, witnesses] : classes)
        report.survivors.push_back({exps, group.representative(exps), std::move(witnesses)});
    report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

// ---------------------------------------------------------------- extraneous unit

CycloNum mu0() { return CycloNum(13) * one_minus_zeta().pow(-12); }

ExtraneousUnit extraneous_unit(u64 p) {
    if (p < 5 || p == 13 || !nt::is_prime(p))
        throw UnsupportedPrime("extraneous unit needs a prime p other than 2, 3, 13 (got " + std::to_string(p) + ")");
    const long pl = static_cast<long>(p);
    ExtraneousUnit e;
    e.k = mod(-static_cast<long>(*nt::invmod(12 % p, p)), pl);
    e.gamma0 = one_minus_zeta().pow((12 * e.k + 1) / pl);
    e.mu = mu0().pow(e.k);

    const CycloNum lhs = CycloNum(13).pow(e.k) * one_minus_zeta();
    if (lhs != e.mu * e.gamma0.pow(pl))
        throw IdentityCheckFailed("13^k - 13^k zeta != mu gamma0^p at p = " + std::to_string(p));
    return e;
}

bool is_pth_power_unit(const CycloNum& u, u64 p) {
    if (!u.is_integral() || abs(u.norm()) != 1) throw NotAUnit(u.to_string() + " is not a unit of Z[zeta]");
    const UnitClassGroup group(p);
    return group.class_map()(u).is_zero();
}

ExtraneousNorm norm_of_extraneous(u64 p) {
    const ExtraneousUnit e = extraneous_unit(p);
    const long pl = static_cast<long>(p);
    ExtraneousNorm r;
    r.norm = norm_L_to_K(e.mu);
    r.exact = unit_decompose_K(r.norm);
    const long i = mod(r.exact.i, pl);
    r.j = mod(r.exact.j, pl);
    if (i != r.j) throw IdentityCheckFailed("norm of mu is not a power of rho (1 - rho) modulo p-th powers");
    if (mod(3 * r.j - 2, pl) != 0) throw IdentityCheckFailed("3j != 2 mod p");
    if (mod(r.j + 8 * e.k, pl) != 0) throw IdentityCheckFailed("j != -8k mod p");
    return r;
}

}  // namespace gfe
