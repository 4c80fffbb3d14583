#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "twist/incidence.hpp"
#include "twist/run.hpp"

namespace py = pybind11;

namespace {

py::object to_py(const tw::Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

tw::RunConfig make_config(const std::vector<std::string>& suites, const std::string& mode,
                          const std::vector<uint32_t>& primes, uint64_t seed, int cutoff, int jobs, bool dump) {
    tw::RunConfig c;
    c.suites = suites;
    c.mode = mode;
    c.primes = primes;
    c.seed = seed;
    c.cutoff = cutoff;
    c.jobs = jobs;
    c.dump_modules = dump;
    return c;
}

std::vector<std::string> pt_strings(const tw::Pt<tw::Fp2>& p) {
    std::vector<std::string> r;
    for (auto& x : p) r.push_back(x.str());
    return r;
}

} // namespace

PYBIND11_MODULE(_twistlab, m) {
    m.doc() = "exact verification of the twisted four-dimensional Sklyanin algebra";
    py::register_exception<tw::ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.def(
        "run",
        [](const std::vector<std::string>& suites, const std::string& mode, const std::vector<uint32_t>& primes,
           uint64_t seed, int cutoff, int jobs, bool dump_modules) {
            tw::RunReport r;
            {
                py::gil_scoped_release rel;
                r = tw::run(make_config(suites, mode, primes, seed, cutoff, jobs, dump_modules));
            }
            return py::make_tuple(to_py(r.json()), r.markdown());
        },
        py::arg("suites") = std::vector<std::string>{"all"}, py::arg("mode") = "full",
        py::arg("primes") = std::vector<uint32_t>{29, 37}, py::arg("seed") = 1, py::arg("cutoff") = 7,
        py::arg("jobs") = 1, py::arg("dump_modules") = false, "run suites; returns (report dict, markdown)");

    m.def(
        "validate",
        [](const std::vector<std::string>& suites, const std::string& mode, const std::vector<uint32_t>& primes,
           int cutoff) {
            return tw::validate(make_config(suites, mode, primes, 1, cutoff, 1, false)).suites;
        },
        py::arg("suites"), py::arg("mode") = "full", py::arg("primes") = std::vector<uint32_t>{29, 37},
        py::arg("cutoff") = 7);

    m.def("resolve_primes", [](const std::vector<uint32_t>& primes, uint64_t seed) {
        std::vector<std::pair<uint32_t, uint32_t>> r;
        for (auto& c : tw::resolve_primes(primes, seed)) r.emplace_back(c.requested, c.used);
        return r;
    }, py::arg("primes"), py::arg("seed") = 1);

    m.def("tower_reduce", [](const std::string& e) { return tw::tower_reduce(e).str(); }, py::arg("expr"));

    m.def(
        "hilbert",
        [](uint32_t p, uint64_t seed, const std::string& algebra, int cutoff) {
            auto sp = tw::specialize_params(p, seed, true);
            auto z = sp.field.zero(), o = sp.field.one();
            auto pres = algebra == "S" ? tw::presentation_S(sp.par, z, o) : tw::presentation_A(sp.par, z, o);
            tw::GradedAlgebra<tw::Fp2> G(pres, cutoff);
            std::vector<size_t> d;
            for (int n = 0; n <= cutoff; ++n) d.push_back(G.dim(n));
            return d;
        },
        py::arg("p"), py::arg("seed") = 1, py::arg("algebra") = "A", py::arg("cutoff") = 5);

    m.def(
        "point_table",
        [](uint32_t p, uint64_t seed) {
            auto sp = tw::specialize_params(p, seed, true);
            auto T = tw::point_table(sp.par, sp.field.zero(), sp.field.one());
            std::vector<std::vector<std::string>> r;
            for (auto& f : T)
                for (auto& x : f) r.push_back(pt_strings(x));
            return r;
        },
        py::arg("p"), py::arg("seed") = 1);

    m.def(
        "incidence_counts",
        [](uint32_t p, uint64_t seed) {
            tw::IncidenceContext X(p, seed, 3, 1);
            auto I = tw::point_incidence(X);
            std::vector<std::vector<size_t>> r;
            for (auto& row : I.counts) r.emplace_back(row.begin(), row.end());
            return r;
        },
        py::arg("p"), py::arg("seed") = 1, "lines of C0..C3, E1..E3 through each of the twenty points");
}
