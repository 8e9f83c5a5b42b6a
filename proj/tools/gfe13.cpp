// gfe13: command-line driver for the sieve, modular sieve, curve and search
// computations.
//
// Exit codes: 0 success, 1 mismatch against --expect-paper (or a point not on
// the curve), 2 usage error, 3 missing external data.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gfe/brute_oracle.hpp"
#include "gfe/descent_curves.hpp"
#include "gfe/errors.hpp"
#include "gfe/frey_filter.hpp"
#include "gfe/unit_sieve.hpp"

using nlohmann::json;
using namespace gfe;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kUsage = 2, kMissingData = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Output {
    json report;
    std::string csv;
    std::string human;
    int exit_code = kOk;
};

struct Common {
    std::string format = "json";
    std::string out;
    unsigned threads = 0;
    bool expect = false;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv", "human"}));
    cmd->add_option("--out", c.out, "Write the report to this path instead of stdout");
    cmd->add_option("--threads", c.threads, "Worker thread cap (0: all cores)");
    cmd->add_flag("--expect-paper", c.expect, "Compare against the published outcomes; exit 1 on mismatch");
}

void emit(const Output& o, const Common& c) {
    std::string text;
    if (c.format == "json")
        text = o.report.dump(2) + "\n";
    else if (c.format == "csv")
        text = o.csv;
    else
        text = o.human;
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out);
    if (!f) throw UsageError("cannot write " + c.out);
    f << text;
}

std::string exps_to_string(const std::vector<u64>& e) {
    std::string s = "(";
    for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
    return s + ")";
}

// ---------------------------------------------------------------- sieve

struct SieveArgs {
    Common common;
    u64 p = 0;
    std::string sieve_case = "both";
    bool timing = false;
};

std::optional<std::size_t> expected_survivors(u64 p, SieveCase c) {
    if (c == SieveCase::CaseI) {
        if (p >= 5 && p <= 43 && p != 13) return 2;
        return std::nullopt;
    }
    if (p >= 5 && p <= 47 && p != 13) return p == 17 ? 2 : 1;
    return std::nullopt;
}

std::optional<std::size_t> expected_candidates(u64 p, SieveCase c) {
    if (c != SieveCase::CaseI) return std::nullopt;
    if (p == 5) return 62;
    if (p == 7) return 171;
    return std::nullopt;
}

Output cmd_sieve(const SieveArgs& a) {
    std::vector<SieveCase> cases;
    if (a.sieve_case == "both") {
        cases = {SieveCase::CaseI, SieveCase::CaseII};
    } else {
        cases = {parse_sieve_case(a.sieve_case)};
    }
    const UnitClassGroup group(a.p);

    Output o;
    o.report["command"] = "sieve";
    o.report["config"] = {{"p", a.p}, {"case", a.sieve_case}, {"threads", a.common.threads},
                          {"expectPaper", a.common.expect}};
    o.report["reports"] = json::array();
    std::ostringstream csv, human;
    csv << "p,case,candidates,survivor,exponents,representative,witnesses\n";
    bool mismatch = false;
    for (SieveCase c : cases) {
        SieveOptions opts;
        opts.threads = a.common.threads;
        const SieveReport r = run_sieve(group, c, opts);
        json j = r.to_json();
        if (!a.timing) j.erase("elapsedMs");
        if (a.common.expect) {
            json e = json::object();
            const auto surv = expected_survivors(a.p, c);
            const auto cand = expected_candidates(a.p, c);
            e["survivors"] = surv ? json(*surv) : json(nullptr);
            e["candidateCount"] = cand ? json(*cand) : json(nullptr);
            bool ok = true;
            if (surv && *surv != r.survivors.size()) ok = false;
            if (cand && *cand != r.candidate_count) ok = false;
            e["status"] = !surv && !cand ? "NO_PUBLISHED_EXPECTATION" : ok ? "MATCH" : "MISMATCH";
            mismatch = mismatch || !ok;
            j["expectation"] = e;
        }
        o.report["reports"].push_back(j);

        human << "p = " << a.p << ", " << (c == SieveCase::CaseI ? "Case I" : "Case II") << ": "
              << r.candidate_count << " candidate pairs (a, b) mod p^2, " << r.survivors.size()
              << (r.survivors.size() == 1 ? " surviving unit class" : " surviving unit classes") << "\n";
        for (std::size_t i = 0; i < r.survivors.size(); ++i) {
            const auto& s = r.survivors[i];
            human << "  eps" << i << " = " << s.representative.pretty() << "   exponents " << exps_to_string(s.exponents)
                  << ", " << s.witnesses.size() << " pairs\n";
            csv << a.p << ',' << to_string(c) << ',' << r.candidate_count << ',' << i << ',' << '"'
                << exps_to_string(s.exponents) << '"' << ',' << '"' << s.representative.to_string() << '"' << ','
                << s.witnesses.size() << '\n';
        }
        if (j.contains("expectation")) human << "  expectation: " << j["expectation"]["status"].get<std::string>() << "\n";
    }
    o.report["status"] = mismatch ? "MISMATCH" : "OK";
    o.csv = csv.str();
    o.human = human.str();
    o.exit_code = mismatch ? kMismatch : kOk;
    return o;
}

// ---------------------------------------------------------------- modular sieve

struct ModularArgs {
    Common common;
    u64 p = 0;
    std::optional<u64> q;
    std::string frey_data;
};

Output cmd_modular_sieve(const ModularArgs& a) {
    require_sieve_prime(a.p);
    u64 q = 0;
    if (a.q) {
        q = *a.q;
    } else if (auto d = default_auxiliary_prime(a.p)) {
        q = *d;
    } else {
        throw UsageError("no default auxiliary prime for p = " + std::to_string(a.p) + "; pass --q");
    }

    std::string path = a.frey_data;
    bool explicit_path = !path.empty();
    if (!explicit_path)
        if (auto env = frey_data_path_from_env()) path = *env, explicit_path = true;

    Output o;
    o.report["command"] = "modular-sieve";
    o.report["config"] = {{"p", a.p}, {"q", q}, {"freyData", path.empty() ? json(nullptr) : json(path)},
                          {"threads", a.common.threads}, {"expectPaper", a.common.expect}};

    const PairList list = mod_q_pair_list(a.p, q, extraneous_unit(a.p).mu);
    json pairs = json::array();
    std::ostringstream csv, human;
    csv << "a,b,trace,trace_mod_p\n";
    for (const auto& pr : list.pairs) pairs.push_back({pr.alpha, pr.beta});
    o.report["pairList"] = pairs;
    o.report["trivialSieve"] = list.trivial_sieve;
    human << "p = " << a.p << ", q = " << q << ": " << list.pairs.size() << " pairs (a, b) mod q for the extraneous unit";
    human << (list.trivial_sieve ? " (sieve trivial at q)" : "") << "\n  L = {";
    for (std::size_t i = 0; i < list.pairs.size(); ++i)
        human << (i ? ", " : "") << "(" << list.pairs[i].alpha << ", " << list.pairs[i].beta << ")";
    human << "}\n";

    bool mismatch = false;
    if (a.common.expect && q == 19 && (a.p == 5 || a.p == 7)) {
        std::vector<CandidatePair> expected;
        for (long x = 1; x <= 9; ++x) expected.push_back({x, 19 - x});
        const bool ok = list.pairs == expected;
        o.report["pairListExpectation"] = ok ? "MATCH" : "MISMATCH";
        mismatch = !ok;
    }

    std::optional<FreyData> data;
    if (!path.empty()) data = load_frey_data(path);  // MissingFreyData when unreadable
    const bool usable = data && data->has_curves() && data->target_for(q) != nullptr;
    std::string status;
    if (!usable) {
        status = "SKIPPED_NO_FREY_DATA";
        for (const auto& pr : list.pairs) csv << pr.alpha << ',' << pr.beta << ",,\n";
        human << "  trace elimination: SKIPPED (no Frey curve data for q = " << q << ")\n";
    } else {
        const EliminationReport r = eliminate_extraneous(a.p, q, &*data, a.common.threads);
        o.report["elimination"] = r.to_json();
        status = to_string(r.verdict);
        for (const auto& t : r.traces) {
            csv << t.pair.alpha << ',' << t.pair.beta << ',';
            if (t.trace) csv << *t.trace << ',' << ((*t.trace % static_cast<long>(a.p)) + static_cast<long>(a.p)) % static_cast<long>(a.p);
            else csv << ',';
            csv << '\n';
        }
        human << "  trace elimination: " << status << "\n";
        if (a.common.expect && r.verdict != Verdict::Eliminated) mismatch = true;
    }
    o.report["status"] = status;
    if (mismatch) o.report["expectation"] = "MISMATCH";
    o.csv = csv.str();
    o.human = human.str();
    o.exit_code = mismatch ? kMismatch : kOk;
    return o;
}

// ---------------------------------------------------------------- curves

struct CurveArgs {
    Common common;
    long p = 0;
    std::string e = "1";
    std::string kind = "C_INT";
    bool known = false;
    std::string x;
    std::string y;
    bool no_shortcut = false;
};

CurveKind parse_kind(const std::string& s) {
    if (s == "C_PRIME") return CurveKind::CPrime;
    if (s == "C_INT") return CurveKind::CInt;
    if (s == "D_PRIME") return CurveKind::DPrime;
    throw UsageError("unknown curve kind '" + s + "'");
}

CubicNum parse_unit(const std::string& s) {
    if (s.find(',') == std::string::npos) return CubicNum(parse_rational(s));
    return CubicNum::parse(s);
}

json point_json(const CurvePoint& pt, const CurveModel& m, const PointTestOptions& opts) {
    json j;
    j["point"] = pt.at_infinity ? json("INF") : json({{"x", pt.x.to_string()}, {"y", pt.y.to_string()}});
    const bool on = is_on_curve(pt, m);
    j["onCurve"] = on;
    if (!on) return j;
    const PointTestResult r = point_to_solution_test(pt, m, opts);
    j["verdict"] = to_string(r.verdict);
    j["ratio"] = r.ratio.to_string();
    json roots = json::array();
    for (const auto& [a, b] : r.roots) roots.push_back({a.get_str(), b.get_str()});
    j["rationalRoots"] = roots;
    if (r.candidate) {
        j["candidate"] = {r.candidate->first.get_str(), r.candidate->second.get_str()};
        j["candidateIsPthPower"] = r.candidate_is_pth_power;
    }
    return j;
}

std::string point_human(const json& j) {
    std::string s = j["point"].is_string() ? std::string("INF") : "(" + j["point"]["x"].get<std::string>() + "; " +
                                                                      j["point"]["y"].get<std::string>() + ")";
    s += j["onCurve"].get<bool>() ? "  on curve" : "  NOT on curve";
    if (j.contains("verdict")) s += ", " + j["verdict"].get<std::string>();
    return s;
}

Output cmd_curves(const CurveArgs& a) {
    const CurveModel m = make_curve(a.p, parse_unit(a.e), parse_kind(a.kind));
    PointTestOptions opts;
    opts.gcd_shortcut = !a.no_shortcut;
    Output o;
    o.report["command"] = "curves";
    o.report["config"] = {{"p", a.p}, {"e", a.e}, {"kind", a.kind}, {"knownPoints", a.known}};
    o.report["model"] = {{"kind", to_string(m.kind)}, {"genus", m.genus()}, {"equation", m.equation()},
                         {"lhs", m.lhs.to_string()}, {"rhsX", m.rhs_x.to_string()}, {"rhsC", m.rhs_c.to_string()}};
    std::ostringstream csv, human;
    human << to_string(m.kind) << ", p = " << a.p << ", genus " << m.genus() << ":\n  " << m.equation() << "\n";
    csv << "x,y,on_curve,verdict\n";
    if (a.known) {
        std::vector<CurvePoint> pts;
        try {
            pts = known_points(a.p);
        } catch (const UnknownPointSet& e) {
            o.report["status"] = "UNKNOWN_POINT_SET";
            human << "  no complete point list known for p = " << a.p << "\n";
            o.csv = csv.str();
            o.human = human.str();
            o.exit_code = kMissingData;
            return o;
        }
        if (m.kind != CurveKind::CInt || !(m.e == CubicNum(1)))
            throw UsageError("--known-points lists points of C_p (kind C_INT, e = 1)");
        json list = json::array();
        for (const auto& pt : pts) {
            json j = point_json(pt, m, opts);
            human << "  " << point_human(j) << "\n";
            csv << (pt.at_infinity ? "INF" : '"' + pt.x.to_string() + '"') << ','
                << (pt.at_infinity ? "" : '"' + pt.y.to_string() + '"') << ',' << j["onCurve"].get<bool>() << ','
                << j.value("verdict", "") << '\n';
            list.push_back(std::move(j));
        }
        o.report["points"] = list;
        o.report["pointCount"] = pts.size();
        human << "  " << pts.size() << " points\n";
        if (a.common.expect) {
            const std::size_t want = a.p == 5 ? 5 : 3;
            bool ok = pts.size() == want;
            for (const auto& j : list) ok = ok && j["onCurve"].get<bool>() && j["verdict"] != "CANDIDATE";
            o.report["expectation"] = ok ? "MATCH" : "MISMATCH";
            o.exit_code = ok ? kOk : kMismatch;
        }
    }
    o.report["status"] = o.exit_code == kOk ? "OK" : "MISMATCH";
    o.csv = csv.str();
    o.human = human.str();
    return o;
}

Output cmd_verify_point(const CurveArgs& a) {
    const CurveModel m = make_curve(a.p, parse_unit(a.e), parse_kind(a.kind));
    if (a.x.empty()) throw UsageError("--x is required (use INF for the point at infinity)");
    const CurvePoint pt = a.x == "INF" ? CurvePoint::infinity() : CurvePoint::parse(a.x, a.y.empty() ? "" : a.y);
    if (!pt.at_infinity && a.y.empty() && a.x.find(';') == std::string::npos) throw UsageError("--y is required");
    PointTestOptions opts;
    opts.gcd_shortcut = !a.no_shortcut;
    Output o;
    o.report["command"] = "verify-point";
    o.report["config"] = {{"p", a.p}, {"e", a.e}, {"kind", a.kind}, {"x", a.x}, {"y", a.y},
                          {"gcdShortcut", opts.gcd_shortcut}};
    json j = point_json(pt, m, opts);
    o.report["result"] = j;
    o.human = point_human(j) + "\n";
    o.csv = "on_curve,verdict\n" + std::string(j["onCurve"].get<bool>() ? "true" : "false") + "," +
            j.value("verdict", "") + "\n";
    bool ok = j["onCurve"].get<bool>();
    if (a.common.expect && j.value("verdict", "") == "CANDIDATE") ok = false;
    o.report["status"] = ok ? "OK" : "MISMATCH";
    o.exit_code = ok ? kOk : kMismatch;
    return o;
}

// ---------------------------------------------------------------- search

struct SearchArgs {
    Common common;
    long bound = 50;
    std::vector<unsigned> n;
    unsigned max_n = 0;
};

Output cmd_search(const SearchArgs& a) {
    SearchConfig cfg;
    cfg.bound = a.bound;
    cfg.exponents = a.n;
    for (unsigned n = 2; n <= a.max_n; ++n) cfg.exponents.push_back(n);
    if (cfg.exponents.empty()) throw UsageError("give --n or --max-n");
    cfg.threads = a.common.threads;
    if (cfg.bound < 1) throw UsageError("--bound must be at least 1");
    for (unsigned n : cfg.exponents)
        if (n < 2) throw UsageError("--n must be at least 2");
    const auto sols = search(cfg);

    Output o;
    o.report["command"] = "search";
    o.report["config"] = {{"bound", cfg.bound}, {"exponents", cfg.exponents}, {"threads", a.common.threads}};
    json list = json::array();
    std::size_t nontrivial = 0;
    for (const auto& s : sols) {
        list.push_back({{"a", s.a.get_str()}, {"b", s.b.get_str()}, {"c", s.c.get_str()}, {"n", s.n},
                        {"primitive", s.primitive}, {"trivial", s.is_trivial()}});
        if (!s.is_trivial()) ++nontrivial;
    }
    o.report["solutions"] = list;
    o.report["nontrivialCount"] = nontrivial;
    o.csv = to_csv(sols);
    std::ostringstream human;
    human << "x^13 + y^13 = z^n, |x|, |y| <= " << cfg.bound << ": " << sols.size() << " solutions, " << nontrivial
          << " non-trivial\n";
    for (const auto& s : sols) human << "  n = " << s.n << ": (" << s.a << ", " << s.b << ", " << s.c << ")\n";
    o.human = human.str();
    const bool ok = !a.common.expect || nontrivial == 0;
    o.report["status"] = ok ? "OK" : "MISMATCH";
    o.exit_code = ok ? kOk : kMismatch;
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unit sieve, modular sieve, descent curves and brute-force search for x^13 + y^13 = z^p"};
    app.require_subcommand(1);

    SieveArgs sieve;
    auto* s = app.add_subcommand("sieve", "Run the unit sieve modulo p^2");
    s->add_option("--p", sieve.p, "Exponent prime")->required();
    s->add_option("--case", sieve.sieve_case, "I, II or both")->check(CLI::IsMember({"I", "II", "both"}));
    s->add_flag("--timing", sieve.timing, "Include wall-clock time in the report");
    add_common(s, sieve.common);

    ModularArgs modular;
    auto* m = app.add_subcommand("modular-sieve", "Pair list at an auxiliary prime q and Frey trace elimination");
    m->add_option("--p", modular.p, "Exponent prime")->required();
    m->add_option("--q", modular.q, "Auxiliary prime (default from the built-in table)");
    m->add_option("--frey-data", modular.frey_data, "Frey curve data file (fallback: GFE_FREY_DATA)");
    add_common(m, modular.common);

    CurveArgs curves;
    auto* c = app.add_subcommand("curves", "Describe the hyperelliptic model and its known points");
    c->add_option("--p", curves.p, "Exponent prime")->required();
    c->add_option("--e", curves.e, "Unit e as c0,c1,c2 in the basis 1, rho, rho^2");
    c->add_option("--kind", curves.kind, "C_PRIME, C_INT or D_PRIME")
        ->check(CLI::IsMember({"C_PRIME", "C_INT", "D_PRIME"}));
    c->add_flag("--known-points", curves.known, "List the proven complete point set (p = 5, 7)");
    c->add_flag("--no-gcd-shortcut", curves.no_shortcut, "Always run the full norm-form root search");
    add_common(c, curves.common);

    CurveArgs verify;
    auto* v = app.add_subcommand("verify-point", "Check a point and map it back to a candidate (a, b)");
    v->add_option("--p", verify.p, "Exponent prime")->required();
    v->add_option("--x", verify.x, "X coordinate (c0,c1,c2) or INF");
    v->add_option("--y", verify.y, "Y coordinate (c0,c1,c2)");
    v->add_option("--e", verify.e, "Unit e as c0,c1,c2");
    v->add_option("--kind", verify.kind, "C_PRIME, C_INT or D_PRIME")
        ->check(CLI::IsMember({"C_PRIME", "C_INT", "D_PRIME"}));
    v->add_flag("--no-gcd-shortcut", verify.no_shortcut, "Always run the full norm-form root search");
    add_common(v, verify.common);

    SearchArgs search_args;
    auto* b = app.add_subcommand("search", "Exhaustive search for x^13 + y^13 = z^n");
    b->add_option("--bound", search_args.bound, "Bound on |x| and |y|");
    b->add_option("--n", search_args.n, "Exponent(s) n >= 2")->delimiter(',');
    b->add_option("--max-n", search_args.max_n, "Search every n from 2 to this value");
    add_common(b, search_args.common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        Output o;
        const Common* common = nullptr;
        if (*s) {
            o = cmd_sieve(sieve);
            common = &sieve.common;
        } else if (*m) {
            o = cmd_modular_sieve(modular);
            common = &modular.common;
        } else if (*c) {
            o = cmd_curves(curves);
            common = &curves.common;
        } else if (*v) {
            o = cmd_verify_point(verify);
            common = &verify.common;
        } else {
            o = cmd_search(search_args);
            common = &search_args.common;
        }
        emit(o, *common);
        return o.exit_code;
    } catch (const MissingFreyData& e) {
        std::cerr << "gfe13: " << e.what() << "\n";
        return kMissingData;
    } catch (const UsageError& e) {
        std::cerr << "gfe13: " << e.what() << "\n";
        return kUsage;
    } catch (const UnsupportedPrime& e) {
        std::cerr << "gfe13: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "gfe13: " << e.what() << "\n";
        return kUsage;
    } catch (const BadPrime& e) {
        std::cerr << "gfe13: " << e.what() << "\n";
        return kUsage;
    } catch (const NotAUnit& e) {
        std::cerr << "gfe13: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "gfe13: internal error: " << e.what() << "\n";
        return kMismatch;
    }
}
