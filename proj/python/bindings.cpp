#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gtzw/rmt.hpp"
#include "gtzw/spectral.hpp"
#include "gtzw/verify.hpp"
#include "gtzw/zw_measure.hpp"

namespace py = pybind11;
using namespace gtzw;

namespace {

Signature sig(const std::vector<std::int64_t>& v) { return Signature(v); }

std::vector<std::int64_t> vec(const Signature& s) { return {s.entries().begin(), s.entries().end()}; }

SampleMethod method(const std::string& m) {
  if (m == "enumerate") return SampleMethod::enumerate;
  if (m == "mcmc") return SampleMethod::mcmc;
  throw DomainError("unknown method '" + m + "'");
}

}  // namespace

PYBIND11_MODULE(_gtzw, m) {
  m.doc() = "zw-measures on the Gelfand-Tsetlin graph";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::class_<ZwParams>(m, "ZwParams")
      .def(py::init([](Complex z, Complex zp, Complex w, Complex wp) { return ZwParams{z, zp, w, wp}; }),
           py::arg("z"), py::arg("zp"), py::arg("w"), py::arg("wp"))
      .def_static("principal", &ZwParams::principal, py::arg("z"), py::arg("w"))
      .def_readwrite("z", &ZwParams::z)
      .def_readwrite("zp", &ZwParams::zp)
      .def_readwrite("w", &ZwParams::w)
      .def_readwrite("wp", &ZwParams::wp)
      .def("__repr__", &ZwParams::to_string);

  m.def("is_admissible", &is_admissible);
  m.def("log_p_prime", [](const std::vector<std::int64_t>& la, const ZwParams& p) { return log_p_prime(sig(la), p); });
  m.def("log_s_n", &log_s_n, py::arg("n"), py::arg("params"));
  m.def("weyl_dim", [](const std::vector<std::int64_t>& la) { return py::int_(py::str(weyl_dim_big(sig(la)).str())); });

  m.def(
      "tabulate",
      [](std::size_t n, const ZwParams& p, double mass_tol) {
        TableOptions opt;
        opt.mass_tolerance = mass_tol;
        const ZwTable t = build_table(n, p, opt);
        std::vector<std::pair<std::vector<std::int64_t>, double>> rows;
        for (const auto& [la, lw] : t.table.log_masses()) rows.emplace_back(vec(la), std::exp(lw));
        return rows;
      },
      py::arg("n"), py::arg("params"), py::arg("mass_tol") = 1e-8);

  m.def(
      "sample_signatures",
      [](std::size_t n, const ZwParams& p, std::size_t count, std::uint64_t seed, const std::string& m) {
        SamplerOptions opt;
        opt.method = method(m);
        std::vector<std::vector<std::int64_t>> out;
        for (const auto& la : sample_signatures(n, p, count, seed, opt)) out.push_back(vec(la));
        return out;
      },
      py::arg("n"), py::arg("params"), py::arg("count"), py::arg("seed"), py::arg("method") = "enumerate");

  m.def("embed", [](const std::vector<std::int64_t>& la) {
    return to_json(embed(sig(la), la.size()).omega).dump();
  });

  m.def("haar_unitary", [](std::size_t n, std::uint64_t seed) {
    Rng rng = derive_stream(seed, 0);
    return haar_unitary(n, rng).matrix();
  });
  m.def("canonical_projection", [](const CMatrix& u) { return canonical_projection(UnitaryMatrix(u)).matrix(); });
  m.def("cayley", [](const CMatrix& u) { return cayley(UnitaryMatrix(u)).matrix(); });
  m.def("inverse_cayley", [](const CMatrix& x) { return inverse_cayley(HermitianMatrix(x)).matrix(); });

  m.def(
      "sample_hua_pickrell",
      [](std::size_t n, Complex s, std::size_t count, std::uint64_t seed) {
        const auto r = sample_hua_pickrell(n, s, count, seed);
        std::vector<CMatrix> mats;
        for (const auto& u : r.matrices) mats.push_back(u.matrix());
        return py::make_tuple(mats, r.weights, r.ess);
      },
      py::arg("n"), py::arg("s"), py::arg("count"), py::arg("seed"));

  m.def(
      "verify",
      [](const std::vector<std::string>& only, std::uint64_t seed) {
        VerifyConfig cfg;
        cfg.only = only;
        cfg.seed = seed;
        py::gil_scoped_release release;
        return run_verification(cfg).to_json().dump();
      },
      py::arg("only") = std::vector<std::string>{}, py::arg("seed") = VerifyConfig{}.seed);
}
