// pgk: command-line front end. Every command prints one JSON document (sweep: CSV or JSON).

#include <cstdlib>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "pgk/cli.hpp"
#include "pgk/error.hpp"

namespace {

struct Sub {
  CLI::App* app;
  std::map<std::string, std::string> values;
  std::string op;
};

void add_params(Sub& s, const std::vector<std::pair<std::string, std::string>>& opts) {
  for (const auto& [name, help] : opts) s.app->add_option("--" + name, s.values[name], help);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations for the p-adic and mod p local Langlands correspondence for GL2(Q_p)"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config;
  int a = -1, L = -1, threads = -1;
  long long N = -1;
  std::string output;
  bool no_cache = false;
  app.add_option("--config", config, "key = value file with defaults for p, a, N, L, threads, cache");
  app.add_option("--a", a, "p-adic digits of series coefficients (default 8)");
  app.add_option("--N", N, "X-adic precision of series (default 64)");
  app.add_option("--L", L, "precision of Gamma units (default a + ceil(log_p N))");
  app.add_option("--threads", threads, "sweep workers (default: all cores)");
  app.add_option("-o,--output", output, "write the result here instead of stdout");
  app.add_flag("--no-cache", no_cache, "ignore PGK_CACHE");

  std::map<std::string, Sub> subs;
  auto sub = [&](const std::string& name, const std::string& help) -> Sub& {
    Sub& s = subs[name];
    s.app = app.add_subcommand(name, help);
    s.app->set_help_flag("--help", "print this help message and exit");
    return s;
  };

  Sub& series = sub("series", "series operations: phi, psi, gamma, add, mul, inverse, valuation, parse");
  series.app->add_option("op", series.op, "operation")->required();
  add_params(series, {{"p", "prime"}, {"f", "series, e.g. \"X^-1 + 3*X\""}, {"g", "second series"}, {"u", "unit for gamma"}});

  Sub& adm = sub("admissible", "weak admissibility of a filtered (phi, N)-module");
  add_params(adm, {{"input", "module JSON (inline or path)"},
                   {"family", "dkap or dkl"},
                   {"p", "prime"},
                   {"k", "weight"},
                   {"ap", "a_p"},
                   {"L", "L-invariant"}});

  Sub& red = sub("reduce", "reduction mod p of V_{k,a_p}");
  add_params(red, {{"p", "prime"}, {"k", "weight"}, {"ap", "a_p, e.g. \"p^(1/2)\" or \"7 + O(p^3)\""}, {"chi", "mod p twist JSON"}});

  Sub& cor = sub("correspond", "semisimple mod p correspondence");
  add_params(cor, {{"input", "Galois representation JSON"}, {"p", "prime"}, {"h", "use ind(omega_2^h)"}});

  Sub& cls = sub("classify-trianguline", "classify a trianguline parameter");
  add_params(cls, {{"p", "prime"}, {"d1", "character JSON"}, {"d2", "character JSON"}, {"L", "L-invariant (omit for infinity)"}});

  Sub& ext = sub("ext-dim", "dimension of Ext^1(R(d2), R(d1))");
  add_params(ext, {{"p", "prime"}, {"d1", "character JSON"}, {"d2", "character JSON or 'same'"}});

  Sub& tree = sub("tree", "compact induction on the tree and P^1 at finite level");
  add_params(tree, {{"op", "T, act, dims, kernel, p1"},
                    {"p", "prime"},
                    {"r", "weight of Sym^r"},
                    {"radius", "radius bound"},
                    {"input", "tree function JSON"},
                    {"g", "matrix a,b,c,d"},
                    {"lambda", "eigenvalue for kernel"},
                    {"n", "level for p1"}});

  Sub& box = sub("box", "sequences in D boxtimes Q_p for the trivial rank-one module");
  box.app->add_option("op", box.op, "show, center, diag-unit, diag-p, unipotent, res-zp, res-zpx, bounded")->required();
  add_params(box, {{"input", "sequence JSON"},
                   {"p", "prime"},
                   {"f", "x^(n0)"},
                   {"n0", "first index"},
                   {"len", "window length"},
                   {"delta", "character JSON"},
                   {"value", "group element parameter"}});

  Sub& sweep = sub("sweep", "parameter sweeps: reduce, admissible");
  sweep.app->add_option("op", sweep.op, "reduce or admissible")->required();
  add_params(sweep, {{"p", "prime"}, {"k", "range lo:hi"}, {"vals", "comma-separated valuations"}, {"format", "csv or json"}});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : pgk::kExitUsage;
  }

  pgk::JobSpec job;
  try {
    if (!config.empty()) pgk::apply_config(job, config);
  } catch (const pgk::Error& e) {
    std::cerr << e.what() << "\n";
    return pgk::kExitUsage;
  }
  if (a > 0) job.precision.a = a;
  if (N >= 0) job.precision.N = N;
  if (L > 0) job.precision.L = L;
  if (threads >= 0) job.threads = threads;
  if (!output.empty()) job.output = output;
  if (const char* env = std::getenv("PGK_CACHE"); env && *env) job.cache_dir = env;
  if (no_cache) job.cache_dir.reset();

  for (auto& [name, s] : subs) {
    if (!s.app->parsed()) continue;
    job.command = name;
    job.op = s.op;
    for (const auto& [key, value] : s.values)
      if (s.app->get_option("--" + key)->count() > 0) job.params[key] = value;
    if (name == "tree") job.op = job.params.count("op") ? job.params["op"] : "T";
  }
  return pgk::run(job, std::cout, std::cerr);
}
