#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "gfe/brute_oracle.hpp"
#include "gfe/descent_curves.hpp"
#include "gfe/errors.hpp"
#include "gfe/frey_filter.hpp"
#include "gfe/unit_sieve.hpp"

namespace py = pybind11;
using namespace gfe;

namespace {

CurveKind kind_from(const std::string& s) {
    if (s == "C_PRIME") return CurveKind::CPrime;
    if (s == "C_INT") return CurveKind::CInt;
    if (s == "D_PRIME") return CurveKind::DPrime;
    throw ParseError("unknown curve kind '" + s + "'");
}

CurvePoint point_from(const std::string& x, const std::string& y) {
    return x == "INF" ? CurvePoint::infinity() : CurvePoint::parse(x, y);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Native core of gfe13";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<UnsupportedPrime>(m, "UnsupportedPrime", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<NotAUnit>(m, "NotAUnit", base.ptr());
    py::register_exception<BadPrime>(m, "BadPrime", base.ptr());
    py::register_exception<NotCoprime>(m, "NotCoprime", base.ptr());
    py::register_exception<UnknownPointSet>(m, "UnknownPointSet", base.ptr());
    py::register_exception<MissingFreyData>(m, "MissingFreyData", base.ptr());

    m.def(
        "sieve_json",
        [](u64 p, const std::string& c, unsigned threads) {
            SieveOptions opts;
            opts.threads = threads;
            py::gil_scoped_release release;
            return run_sieve(p, parse_sieve_case(c), opts).to_json().dump();
        },
        py::arg("p"), py::arg("case") = "I", py::arg("threads") = 0);

    m.def("extraneous_unit", [](u64 p) {
        const auto e = extraneous_unit(p);
        return py::dict(py::arg("mu") = e.mu.to_string(), py::arg("gamma0") = e.gamma0.to_string(),
                        py::arg("k") = e.k);
    });

    m.def("mod_q_pair_list", [](u64 p, u64 q) {
        std::vector<std::pair<long, long>> out;
        for (const auto& pr : mod_q_pair_list(p, q, extraneous_unit(p).mu).pairs) out.emplace_back(pr.alpha, pr.beta);
        return out;
    });
    m.def("default_auxiliary_prime", &default_auxiliary_prime);

    m.def("verify_cyclotomic_factorization", &verify_cyclotomic_factorization);
    m.def("descent_identity_holds", [] {
        const auto& s = standard_forms();  // throws IdentityCheckFailed otherwise
        return ((CubicNum(1) + s.d) * s.H.pow(2) - s.F - s.d * s.G.pow(4)).is_zero();
    });

    m.def(
        "is_on_curve",
        [](long p, const std::string& x, const std::string& y, const std::string& kind, const std::string& e) {
            return is_on_curve(point_from(x, y), make_curve(p, CubicNum::parse(e), kind_from(kind)));
        },
        py::arg("p"), py::arg("x"), py::arg("y") = "", py::arg("kind") = "C_INT", py::arg("e") = "1,0,0");

    m.def(
        "point_verdict",
        [](long p, const std::string& x, const std::string& y, const std::string& kind, const std::string& e) {
            return to_string(
                point_to_solution_test(point_from(x, y), make_curve(p, CubicNum::parse(e), kind_from(kind))).verdict);
        },
        py::arg("p"), py::arg("x"), py::arg("y") = "", py::arg("kind") = "C_INT", py::arg("e") = "1,0,0");

    m.def("known_points", [](long p) {
        std::vector<std::string> out;
        for (const auto& pt : known_points(p)) out.push_back(pt.to_string());
        return out;
    });

    m.def(
        "search",
        [](long bound, std::vector<unsigned> exponents, unsigned threads) {
            SearchConfig cfg;
            cfg.bound = bound;
            cfg.exponents = std::move(exponents);
            cfg.threads = threads;
            std::vector<Solution> sols;
            {
                py::gil_scoped_release release;
                sols = search(cfg);
            }
            py::list out;
            for (const auto& s : sols)
                out.append(py::make_tuple(py::int_(py::str(s.a.get_str())), py::int_(py::str(s.b.get_str())),
                                          py::int_(py::str(s.c.get_str())), s.n));
            return out;
        },
        py::arg("bound"), py::arg("exponents"), py::arg("threads") = 0);

    m.def("gcd_facts", [](long a, long b) {
        const auto f = gcd_facts(a, b);
        return py::dict(py::arg("gcd") = py::int_(py::str(f.gcd.get_str())),
                        py::arg("phi") = py::int_(py::str(f.phi.get_str())), py::arg("v13_phi") = f.v13_phi,
                        py::arg("thirteen_divides_sum") = f.thirteen_divides_sum);
    });
}
