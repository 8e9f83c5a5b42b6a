#include "gfe/frey_filter.hpp"

#include <cstdlib>
#include <fstream>

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

zm::Poly base_minimal_polynomial(BaseField base, u64 q) {
    if (base == BaseField::QSqrt13) return {(q - 13 % q) % q, 0, 1};
    return {1, (q - 4 % q) % q, 1, 1};
}

// Roots in F_q, ascending, by exhaustive evaluation.
std::vector<u64> zm_roots(const zm::Poly& m, u64 q) {
    std::vector<u64> roots;
    for (u64 x = 0; x < q; ++x) {
        u64 v = 0;
        for (std::size_t i = m.size(); i-- > 0;) v = (nt::mulmod(v, x, q) + m[i]) % q;
        if (v == 0) roots.push_back(x);
    }
    return roots;
}

void require_unit(const CycloNum& u) {
    if (!u.is_integral() || abs(u.norm()) != 1) throw NotAUnit(u.to_string() + " is not a unit of Z[zeta]");
}

}  // namespace

// ---------------------------------------------------------------- pair list

PairList mod_q_pair_list(u64 p, u64 q, const CycloNum& target, bool normalized) {
    if (!nt::is_prime(q) || q == 13 || q == p || q >= (1u << 16))
        throw BadPrime("auxiliary prime must be a prime other than 13 and p (got " + std::to_string(q) + ")");
    require_unit(target);
    const ClassMap map(p, q);

    PairList out;
    out.p = p;
    out.q = q;
    out.trivial_sieve = map.dimension() == 0;

    const bool restrict_sum = (q - 1) % p == 0;
    std::vector<bool> pth_power(q, false);
    for (u64 x = 0; x < q; ++x) pth_power[nt::powmod(x, p, q)] = true;

    const ClassVector want = map(target);
    const long ql = static_cast<long>(q);
    for (long a = 0; a < ql; ++a) {
        for (long b = normalized ? a : 0; b < ql; ++b) {
            if (a == 0 && b == 0) continue;
            if (restrict_sum && !pth_power[static_cast<std::size_t>((a + b) % ql)]) continue;
            try {
                if (map.of_linear(a, b) == want) out.pairs.push_back({a, b});
            } catch (const NotAUnit&) {
                // a + b zeta lies in a prime above q; no unit can match it.
            }
        }
    }
    return out;
}

std::optional<u64> default_auxiliary_prime(u64 p) {
    switch (p) {
        case 5:
        case 7: return 19;
        case 11: return 23;
        case 17: return 103;
        case 19: return 7;
        case 23: return 139;
        case 29: return 233;
        case 31: return 37;
        case 37: return 11;
        default: return std::nullopt;
    }
}

// ---------------------------------------------------------------- finite fields

std::string to_string(BaseField b) { return b == BaseField::QSqrt13 ? "Q(sqrt13)" : "K"; }

BaseField parse_base_field(std::string_view text) {
    if (text == "Q(sqrt13)" || text == "Q(sqrt(13))") return BaseField::QSqrt13;
    if (text == "K") return BaseField::CubicK;
    throw ParseError("unknown base field '" + std::string(text) + "'");
}

FiniteField::FiniteField(u64 q, zm::Poly modulus) : q_(q), modulus_(std::move(modulus)) {
    if (q < 3 || !nt::is_prime(q) || q >= (1u << 31)) throw BadPrime("field characteristic must be an odd prime");
    for (auto& c : modulus_) c %= q;
    zm::trim(modulus_);
    n_ = zm::degree(modulus_);
    if (n_ < 1 || n_ > 3 || modulus_.back() != 1) throw std::invalid_argument("field modulus must be monic of degree 1..3");
    if (n_ > 1 && !zm_roots(modulus_, q).empty()) throw BadPrime("field modulus has a root mod " + std::to_string(q));
    size_ = static_cast<u64>(nt::ipow(q, static_cast<unsigned>(n_)));
    tpow_[0] = one();
    if (n_ == 1) {
        tpow_[1] = from_integer(static_cast<long>((q_ - modulus_[0]) % q_));
    } else {
        tpow_[1] = Elem{0, 1, 0};
    }
    tpow_[2] = mul(tpow_[1], tpow_[1]);
}

bool FiniteField::is_inert(BaseField base, u64 q) {
    return zm_roots(base_minimal_polynomial(base, q), q).empty();
}

FiniteField FiniteField::residue_field(BaseField base, u64 q, int prime_index) {
    if (q < 3 || q == 13 || !nt::is_prime(q)) throw BadPrime("q must be an odd prime other than 13");
    const zm::Poly m = base_minimal_polynomial(base, q);
    const auto roots = zm_roots(m, q);
    if (roots.empty()) {
        if (prime_index != 0) throw BadPrime(std::to_string(q) + " is inert; prime index must be 0");
        return FiniteField(q, m);
    }
    if (prime_index < 0 || static_cast<std::size_t>(prime_index) >= roots.size())
        throw BadPrime("prime index " + std::to_string(prime_index) + " out of range for " + std::to_string(q));
    return FiniteField(q, {(q - roots[static_cast<std::size_t>(prime_index)]) % q, 1});
}

FiniteField::Elem FiniteField::from_integer(long v) const { return Elem{static_cast<u64>(mod(v, static_cast<long>(q_))), 0, 0}; }

FiniteField::Elem FiniteField::from_index(u64 index) const {
    Elem e{};
    for (int i = 0; i < n_; ++i) {
        e[static_cast<std::size_t>(i)] = index % q_;
        index /= q_;
    }
    return e;
}

u64 FiniteField::index(const Elem& e) const {
    u64 r = 0;
    for (int i = n_ - 1; i >= 0; --i) r = r * q_ + e[static_cast<std::size_t>(i)];
    return r;
}

FiniteField::Elem FiniteField::add(const Elem& a, const Elem& b) const {
    Elem r{};
    for (std::size_t i = 0; i < 3; ++i) r[i] = (a[i] + b[i]) % q_;
    return r;
}

FiniteField::Elem FiniteField::sub(const Elem& a, const Elem& b) const {
    Elem r{};
    for (std::size_t i = 0; i < 3; ++i) r[i] = (a[i] + q_ - b[i]) % q_;
    return r;
}

FiniteField::Elem FiniteField::mul(const Elem& a, const Elem& b) const {
    std::array<u64, 5> t{};
    const auto n = static_cast<std::size_t>(n_);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t[i + j] = (t[i + j] + a[i] * b[j]) % q_;
    for (std::size_t k = 2 * n - 1; k-- > n;) {
        const u64 c = t[k];
        if (c == 0) continue;
        t[k] = 0;
        for (std::size_t i = 0; i < n; ++i) t[k - n + i] = (t[k - n + i] + q_ - c * modulus_[i] % q_) % q_;
    }
    return Elem{t[0], n > 1 ? t[1] : 0, n > 2 ? t[2] : 0};
}

FiniteField::Elem FiniteField::pow(Elem a, u64 e) const {
    Elem r = one();
    while (e > 0) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

FiniteField::Elem FiniteField::reduce(const std::vector<Rational>& coords) const {
    if (coords.size() > 3) throw std::invalid_argument("too many coordinates for field");
    Elem r{};
    const Integer qz(static_cast<unsigned long>(q_));
    for (std::size_t i = 0; i < coords.size(); ++i) {
        const Integer num = coords[i].get_num() % qz;
        const Integer den = coords[i].get_den() % qz;
        if (den == 0) throw BadReduction("coefficient " + coords[i].get_str() + " is not " + std::to_string(q_) + "-integral");
        const u64 n = static_cast<u64>(mod(num.get_si(), static_cast<long>(q_)));
        const u64 c = nt::mulmod(n, *nt::invmod(den.get_ui(), q_), q_);
        r = add(r, mul(from_integer(static_cast<long>(c)), tpow_[i]));
    }
    return r;
}

// ---------------------------------------------------------------- curves

EllipticCurveNF EllipticCurveNF::over_quadratic(const std::array<QuadNum, 5>& coeffs, std::string label) {
    EllipticCurveNF e;
    e.base = BaseField::QSqrt13;
    e.label = std::move(label);
    for (std::size_t i = 0; i < 5; ++i) e.a[i] = {coeffs[i][0], coeffs[i][1]};
    return e;
}

EllipticCurveNF EllipticCurveNF::over_cubic(const std::array<CubicNum, 5>& coeffs, std::string label) {
    EllipticCurveNF e;
    e.base = BaseField::CubicK;
    e.label = std::move(label);
    for (std::size_t i = 0; i < 5; ++i) e.a[i] = {coeffs[i][0], coeffs[i][1], coeffs[i][2]};
    return e;
}

FiniteField::Elem ReducedCurve::discriminant() const {
    const FiniteField& F = field;
    const auto& [a1, a2, a3, a4, a6] = a;
    auto k = [&](long v) { return F.from_integer(v); };
    const auto b2 = F.add(F.mul(a1, a1), F.mul(k(4), a2));
    const auto b4 = F.add(F.mul(k(2), a4), F.mul(a1, a3));
    const auto b6 = F.add(F.mul(a3, a3), F.mul(k(4), a6));
    auto b8 = F.mul(F.mul(a1, a1), a6);
    b8 = F.add(b8, F.mul(k(4), F.mul(a2, a6)));
    b8 = F.sub(b8, F.mul(a1, F.mul(a3, a4)));
    b8 = F.add(b8, F.mul(a2, F.mul(a3, a3)));
    b8 = F.sub(b8, F.mul(a4, a4));
    auto d = F.sub(F.zero(), F.mul(F.mul(b2, b2), b8));
    d = F.sub(d, F.mul(k(8), F.mul(b4, F.mul(b4, b4))));
    d = F.sub(d, F.mul(k(27), F.mul(b6, b6)));
    d = F.add(d, F.mul(k(9), F.mul(b2, F.mul(b4, b6))));
    return d;
}

ReducedCurve reduce_curve(const EllipticCurveNF& e, u64 q, u64 field_budget, int prime_index) {
    FiniteField F = FiniteField::residue_field(e.base, q, prime_index);
    if (F.size() > field_budget)
        throw FieldTooLarge("residue field of size " + std::to_string(F.size()) + " exceeds budget " +
                            std::to_string(field_budget));
    ReducedCurve r{F, {}};
    for (std::size_t i = 0; i < 5; ++i) r.a[i] = F.reduce(e.a[i]);
    if (F.is_zero(r.discriminant())) throw BadReduction("discriminant vanishes modulo " + std::to_string(q));
    return r;
}

u64 count_points(const ReducedCurve& e) {
    const FiniteField& F = e.field;
    const u64 n = F.size();
    std::vector<std::uint8_t> roots(n, 0);
    for (u64 i = 0; i < n; ++i) {
        const auto y = F.from_index(i);
        ++roots[F.index(F.mul(y, y))];
    }
    const auto& [a1, a2, a3, a4, a6] = e.a;
    const auto four = F.from_integer(4);
    // (2y + a1 x + a3)^2 = 4(x^3 + a2 x^2 + a4 x + a6) + (a1 x + a3)^2
    u64 count = 1;
    for (u64 i = 0; i < n; ++i) {
        const auto x = F.from_index(i);
        auto cubic = F.add(x, a2);
        cubic = F.add(F.mul(cubic, x), a4);
        cubic = F.add(F.mul(cubic, x), a6);
        const auto lin = F.add(F.mul(a1, x), a3);
        count += roots[F.index(F.add(F.mul(four, cubic), F.mul(lin, lin)))];
    }
    return count;
}

long reduce_curve_and_trace(const EllipticCurveNF& e, u64 q, u64 field_budget, int prime_index) {
    const ReducedCurve r = reduce_curve(e, q, field_budget, prime_index);
    const u64 points = count_points(r);
    const long trace = static_cast<long>(r.field.size() + 1) - static_cast<long>(points);
    if (static_cast<double>(trace) * trace > 4.0 * static_cast<double>(r.field.size()))
        throw InternalError("trace " + std::to_string(trace) + " violates the Hasse bound");
    return trace;
}

// ---------------------------------------------------------------- Frey data

EllipticCurveNF FreyData::curve(long a, long b) const {
    if (!curves) throw MissingFreyData("no Frey curve table configured");
    const std::size_t dim = base == BaseField::QSqrt13 ? 2 : 3;
    EllipticCurveNF e;
    e.base = base;
    e.label = "E_{" + std::to_string(a) + "," + std::to_string(b) + "}";
    for (std::size_t i = 0; i < 5; ++i) {
        std::vector<Rational> acc(dim, Rational(0));
        for (const auto& t : (*curves)[i]) {
            Integer mono, bp;
            mpz_pow_ui(mono.get_mpz_t(), Integer(a).get_mpz_t(), t.a_exp);
            mpz_pow_ui(bp.get_mpz_t(), Integer(b).get_mpz_t(), t.b_exp);
            mono *= bp;
            for (std::size_t k = 0; k < dim; ++k) acc[k] += t.coeff[k] * mono;
        }
        e.a[i] = std::move(acc);
    }
    return e;
}

const TraceTarget* FreyData::target_for(u64 q) const {
    for (const auto& t : targets)
        if (t.q == q) return &t;
    return nullptr;
}

FreyData parse_frey_data(const nlohmann::json& j) {
    try {
        FreyData d;
        d.base = parse_base_field(j.at("baseField").get<std::string>());
        if (j.contains("curves") && !j["curves"].is_null()) {
            const auto& c = j["curves"];
            if (!c.is_object()) throw ParseError("'curves' must be an object");
            static const std::array<const char*, 5> names = {"a1", "a2", "a3", "a4", "a6"};
            for (const auto& [key, _] : c.items()) {
                if (std::find_if(names.begin(), names.end(), [&](const char* n) { return key == n; }) == names.end())
                    throw ParseError("unknown curve coefficient '" + key + "'");
            }
            std::array<std::vector<PolyTerm>, 5> table;
            for (std::size_t i = 0; i < 5; ++i) {
                if (!c.contains(names[i])) continue;
                for (const auto& term : c[names[i]]) {
                    PolyTerm t;
                    const auto& coeff = term.at("coeff");
                    const std::string text = coeff.is_string() ? coeff.get<std::string>() : coeff.dump();
                    if (d.base == BaseField::QSqrt13) {
                        const QuadNum v = text.find(',') == std::string::npos ? QuadNum(parse_rational(text)) : QuadNum::parse(text);
                        t.coeff = {v[0], v[1]};
                    } else {
                        const CubicNum v = text.find(',') == std::string::npos ? CubicNum(parse_rational(text)) : CubicNum::parse(text);
                        t.coeff = {v[0], v[1], v[2]};
                    }
                    t.a_exp = term.value("a", 0u);
                    t.b_exp = term.value("b", 0u);
                    table[i].push_back(std::move(t));
                }
            }
            d.curves = std::move(table);
        }
        if (j.contains("targets")) {
            for (const auto& t : j["targets"])
                d.targets.push_back({t.at("q").get<u64>(), t.value("prime", 0), t.at("residues").get<std::vector<long>>()});
        }
        return d;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed Frey data: ") + e.what());
    }
}

FreyData load_frey_data(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MissingFreyData("cannot open Frey data file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("Frey data file '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_frey_data(j);
}

std::optional<std::string> frey_data_path_from_env() {
    const char* v = std::getenv("GFE_FREY_DATA");
    if (v == nullptr || *v == '\0') return std::nullopt;
    return std::string(v);
}

// ---------------------------------------------------------------- elimination

std::string to_string(Verdict v) { return v == Verdict::Eliminated ? "ELIMINATED" : "UNRESOLVED"; }

nlohmann::json EliminationReport::to_json() const {
    nlohmann::json j;
    j["p"] = p;
    j["q"] = q;
    j["trivialSieve"] = trivial_sieve;
    j["targets"] = targets;
    j["pairs"] = nlohmann::json::array();
    for (const auto& t : traces) {
        nlohmann::json row = {{"a", t.pair.alpha}, {"b", t.pair.beta}};
        row["trace"] = t.trace ? nlohmann::json(*t.trace) : nlohmann::json(nullptr);
        if (t.trace) row["traceModP"] = mod(*t.trace, static_cast<long>(p));
        if (!t.note.empty()) row["note"] = t.note;
        j["pairs"].push_back(std::move(row));
    }
    j["unresolved"] = nlohmann::json::array();
    for (const auto& pr : unresolved) j["unresolved"].push_back({pr.alpha, pr.beta});
    j["verdict"] = to_string(verdict);
    return j;
}

EliminationReport eliminate_extraneous(u64 p, u64 q, const FreyData* data, unsigned threads) {
    if (data == nullptr || !data->has_curves()) throw MissingFreyData("no Frey curve table configured");
    const TraceTarget* target = data->target_for(q);
    if (target == nullptr) throw MissingFreyData("no trace targets configured for q = " + std::to_string(q));

    const long pl = static_cast<long>(p);
    const PairList list = mod_q_pair_list(p, q, extraneous_unit(p).mu);

    EliminationReport report;
    report.p = p;
    report.q = q;
    report.trivial_sieve = list.trivial_sieve;
    for (long t : target->residues) report.targets.push_back(mod(t, pl));
    std::sort(report.targets.begin(), report.targets.end());
    report.targets.erase(std::unique(report.targets.begin(), report.targets.end()), report.targets.end());

    report.traces.resize(list.pairs.size());
    detail::parallel_for(list.pairs.size(), threads, [&](std::size_t i) {
        const CandidatePair pr = list.pairs[i];
        PairTrace& out = report.traces[i];
        out.pair = pr;
        try {
            out.trace = reduce_curve_and_trace(data->curve(pr.alpha, pr.beta), q, kDefaultFieldBudget, target->prime);
        } catch (const BadReduction& e) {
            out.note = e.what();
        }
    });

    for (const auto& t : report.traces) {
        const bool ruled_out =
            t.trace && std::find(report.targets.begin(), report.targets.end(), mod(*t.trace, pl)) == report.targets.end();
        if (!ruled_out) report.unresolved.push_back(t.pair);
    }
    report.verdict = report.unresolved.empty() ? Verdict::Eliminated : Verdict::Unresolved;
    return report;
}

}  // namespace gfe
