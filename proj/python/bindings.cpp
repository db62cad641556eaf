// pgk._core: thin layer over the C++ library. Structured results cross as JSON text.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pgk/cli.hpp"
#include "pgk/json_io.hpp"

namespace py = pybind11;
using namespace pgk;

namespace {

py::tuple run_job(const std::string& command, const std::string& op, const std::map<std::string, std::string>& params,
                  int a, i64 N, std::optional<int> L, int threads, std::optional<std::string> cache_dir) {
  JobSpec job;
  job.command = command;
  job.op = op;
  job.params = params;
  job.precision.a = a;
  job.precision.N = N;
  job.precision.L = L;
  job.threads = threads;
  if (cache_dir) job.cache_dir = *cache_dir;
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = run(job, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact p-adic and mod p computations for GL2(Q_p)";

  py::register_exception<Error>(m, "PgkError", PyExc_ValueError);

  m.def("run_job", &run_job, py::arg("command"), py::arg("op") = "", py::arg("params") = std::map<std::string, std::string>{},
        py::arg("a") = 8, py::arg("N") = 64, py::arg("L") = py::none(), py::arg("threads") = 0,
        py::arg("cache_dir") = py::none(), "Run a pgk command; returns (exit_code, stdout, stderr).");

  m.def(
      "reduce_crystalline",
      [](i64 p, i64 k, const std::string& ap) { return encode(reduce_crystalline(p, k, PadicScalar::parse(ap, p))).dump(); },
      py::arg("p"), py::arg("k"), py::arg("ap"));
  m.def(
      "is_admissible_dkap",
      [](i64 p, i64 k, const std::string& ap) { return encode(is_admissible(build_Dkap(p, k, PadicScalar::parse(ap, p)))).dump(); },
      py::arg("p"), py::arg("k"), py::arg("ap"));
  m.def(
      "correspond_ind",
      [](i64 p, i64 h) { return encode_gl2(correspond(ind_decompose(p, h))).dump(); }, py::arg("p"), py::arg("h"));
  m.def(
      "ext_dim",
      [](i64 p, const std::string& d1, const std::string& d2) {
        return ext_dim(decode_character(parse_json(d1), p), decode_character(parse_json(d2), p));
      },
      py::arg("p"), py::arg("d1"), py::arg("d2"));
  m.def("tree_dim", &tree_dim, py::arg("p"), py::arg("r"), py::arg("radius"));
}
