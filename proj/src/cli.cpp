#include "pgk/cli.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "pgk/error.hpp"
#include "pgk/json_io.hpp"

namespace pgk {

namespace {

struct Undecided {
  Json result;
};

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n"), e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

class Params {
 public:
  explicit Params(const JobSpec& job) : job_(job) {}

  bool has(const std::string& k) const { return job_.params.count(k) > 0; }
  std::string str(const std::string& k) const {
    auto it = job_.params.find(k);
    if (it == job_.params.end()) throw Error(Errc::InvalidArgument, "missing --" + k);
    return it->second;
  }
  std::string str(const std::string& k, const std::string& dflt) const { return has(k) ? str(k) : dflt; }
  i64 integer(const std::string& k) const {
    std::string s = str(k);
    size_t used = 0;
    i64 v = std::stoll(s, &used);
    if (used != s.size()) throw Error(Errc::InvalidArgument, "--" + k + " expects an integer, got " + s);
    return v;
  }
  i64 integer(const std::string& k, i64 dflt) const { return has(k) ? integer(k) : dflt; }
  i64 prime() const {
    i64 p = integer("p", job_.default_p);
    if (!is_prime(p)) throw Error(Errc::InvalidArgument, "p = " + std::to_string(p) + " is not prime");
    return p;
  }
  /// Inline JSON (starting with '{' or '[') or a path to a JSON file.
  Json json(const std::string& k) const {
    std::string s = trim(str(k));
    if (!s.empty() && (s[0] == '{' || s[0] == '[')) return parse_json(s);
    std::ifstream in(s);
    if (!in) throw Error(Errc::InvalidArgument, "cannot read " + s);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json(buf.str());
  }

 private:
  const JobSpec& job_;
};

std::string value_text(const LaurentSeries& f) {
  std::string s = f.str();
  auto cut = s.find("O(X^");
  if (cut == std::string::npos) return s;
  s = trim(s.substr(0, cut));
  if (s.size() >= 1 && s.back() == '+') s = trim(s.substr(0, s.size() - 1));
  return s.empty() ? "0" : s;
}

Json precision_json(const LaurentSeries& f) {
  return f.precision() >= LaurentSeries::kExact ? Json("exact") : Json(f.precision());
}

int gamma_L(const JobSpec& job, i64 p) { return job.precision.L ? *job.precision.L : gamma_precision(p, job.precision.a, job.precision.N); }

// ---- commands ----

Json cmd_series(const JobSpec& job) {
  Params P(job);
  const i64 p = P.prime();
  const int a = job.precision.a;
  const i64 N = job.precision.N;
  auto series = [&](const std::string& key) { return LaurentSeries::parse(P.str(key), p, a, N); };
  const std::string& op = job.op;
  Json out{{"op", op}};
  if (op == "valuation") {
    auto v = series("f").gauss_valuation();
    out["value"] = v ? Json(*v) : Json(nullptr);
    return out;
  }
  LaurentSeries r = [&] {
    if (op == "phi") return frobenius(series("f"));
    if (op == "psi") return psi(series("f"));
    if (op == "gamma") return gamma_act(P.integer("u"), gamma_L(job, p), series("f"));
    if (op == "add") return series("f") + series("g");
    if (op == "mul") return series("f") * series("g");
    if (op == "inverse") return series("f").inverse();
    if (op == "parse") return series("f");
    throw Error(Errc::InvalidArgument, "unknown series operation '" + op + "' (phi, psi, gamma, add, mul, inverse, valuation, parse)");
  }();
  out["value"] = value_text(r);
  out["precision"] = precision_json(r);
  out["series"] = encode(r);
  return out;
}

Json cmd_admissible(const JobSpec& job) {
  Params P(job);
  FilteredPhiNModule D = [&] {
    if (P.has("input")) return decode<FilteredPhiNModule>(P.json("input"));
    const i64 p = P.prime();
    std::string family = P.str("family", "dkap");
    if (family == "dkap") return build_Dkap(p, P.integer("k"), PadicScalar::parse(P.str("ap"), p));
    if (family == "dkl") return build_DkL(p, P.integer("k"), PadicScalar::parse(P.str("L"), p));
    throw Error(Errc::InvalidArgument, "unknown family '" + family + "' (dkap, dkl)");
  }();
  AdmissibilityResult r = is_admissible(D);
  Json out = encode(r);
  try {
    out["t_H"] = t_H(D);
    out["t_N"] = t_N(D).str();
  } catch (const Error&) {
    // t_N may need more precision than the verdict did
  }
  out["module"] = encode(D);
  if (r.verdict == Admissibility::Undecided) throw Undecided{out};
  return out;
}

// Smallest h in [1, p^2 - 1) with ind(omega_2^h) equal to w, if any.
std::optional<i64> ind_exponent(const GaloisSS& w) {
  const i64 p = w.prime();
  for (i64 h = 1; h < p * p - 1; ++h)
    if (ind_decompose(p, h) == w) return h;
  return std::nullopt;
}

Json galois_summary(const GaloisSS& w) {
  Json j;
  if (w.kind == GaloisSS::Kind::Irred) {
    if (auto h = ind_exponent(w)) {
      j["kind"] = "irred_ind";
      j["h"] = *h;
    } else {
      j["kind"] = "irred";
    }
    j["atoms"] = Json::array({encode(w)});
  } else {
    j["kind"] = "split";
    j["atoms"] = Json::array({encode(w.eta1), encode(w.eta2)});
  }
  j["text"] = w.str();
  return j;
}

Json cmd_reduce(const JobSpec& job) {
  Params P(job);
  const i64 p = P.prime();
  const i64 k = P.integer("k");
  PadicScalar ap = PadicScalar::parse(P.str("ap"), p);
  std::optional<CharModP> chi;
  if (P.has("chi")) {
    Json c = P.json("chi");
    if (!c.contains("p")) c["p"] = p;
    chi = decode<CharModP>(c);
  }
  Reduction r = reduce_crystalline(p, k, ap, chi);
  Json out;
  switch (r.kind) {
    case Reduction::Kind::Decided: out = galois_summary(*r.value); break;
    case Reduction::Kind::Ambiguous:
      out["kind"] = "ambiguous";
      out["atoms"] = Json::array({encode(*r.value)});
      out["split_base"] = encode(*r.split_base);
      break;
    case Reduction::Kind::Unknown:
      out["kind"] = "unknown";
      out["atoms"] = Json::array();
      break;
  }
  out["certificate"] = {{"branch", r.branch},
                        {"reducible_ind", r.reducible_ind},
                        {"buzzard", buzzard_name(buzzard_monitor(p, k, ap, r))}};
  out["reduction"] = encode(r);
  if (r.kind != Reduction::Kind::Decided) throw Undecided{out};
  return out;
}

Json cmd_correspond(const JobSpec& job) {
  Params P(job);
  GaloisSS w = P.has("input") ? decode<GaloisSS>(P.json("input")) : ind_decompose(P.prime(), P.integer("h"));
  GL2SS s = correspond(w);
  Json atoms = Json::array();
  for (const auto& a : s) atoms.push_back(encode(a));
  auto cc = central_character(s);
  CharModP expected = CharModP::omega(w.prime(), -1) * w.det();
  return {{"kind", "gl2_ss"},
          {"input", encode(w)},
          {"atoms", atoms},
          {"text", gl2_str(s)},
          {"certificate",
           {{"central_character", cc ? encode(*cc) : Json("mixed")}, {"matches_omega_inv_det", cc && *cc == expected}}}};
}

TriParam tri_param(const Params& P, i64 p) {
  TriParam s{decode_character(P.json("d1"), p), decode_character(P.json("d2"), p), std::nullopt};
  if (P.has("L") && P.str("L") != "inf") s.L = PadicScalar::parse(P.str("L"), p);
  s.validate();
  return s;
}

Json cmd_classify(const JobSpec& job) {
  Params P(job);
  const i64 p = P.prime();
  TriParam s = tri_param(P, p);
  TriClass c = classify(s);
  auto hn = hn_verdict(TriangularPhiModule::from_param(s));
  Json out{{"class", tri_class_name(c)},
           {"in_s_irr", in_s_irr(c)},
           {"weight", weight(s.d1 / s.d2).str()},
           {"slopes", {slope(s.d1).str(), slope(s.d2).str()}},
           {"ext_dim", ext_dim(s.d1, s.d2)},
           {"hn", encode(hn)},
           {"param", encode(s)}};
  if (c == TriClass::Cris) out["involution"] = encode(involution(s));
  return out;
}

Json cmd_ext_dim(const JobSpec& job) {
  Params P(job);
  const i64 p = P.prime();
  CharacterP d1 = decode_character(P.json("d1"), p);
  std::string d2text = P.str("d2");
  CharacterP d2 = trim(d2text) == "same" ? d1 : decode_character(P.json("d2"), p);
  return {{"ext_dim", ext_dim(d1, d2)}, {"special", special_name(is_special_pair(d1 / d2))}};
}

Mat2 parse_mat2(const std::string& text) {
  std::vector<Rational> e;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) e.push_back(Rational::parse(trim(item)));
  if (e.size() != 4) throw Error(Errc::InvalidArgument, "matrix must be given as a,b,c,d");
  return {e[0], e[1], e[2], e[3]};
}

Json cmd_tree(const JobSpec& job) {
  Params P(job);
  const i64 p = P.prime();
  const int r = static_cast<int>(P.integer("r", 0));
  const int R = static_cast<int>(P.integer("radius", 1));
  auto input = [&] {
    if (P.has("input")) return decode<TreeFunction>(P.json("input"));
    TreeFunction f(p, r, R);
    std::vector<Fp2> e(static_cast<size_t>(r + 1), Fp2(p, 0));
    e[0] = Fp2(p, 1);
    f.add({}, e);
    return f;
  };
  const std::string& op = job.op;
  if (op == "T") return encode(hecke_T(input()));
  if (op == "act") return encode(tree_g_act(parse_mat2(P.str("g")), input()));
  if (op == "dims") return {{"tree_dim", tree_dim(p, r, R)}, {"vertices", tree_dim(p, 0, R)}};
  if (op == "kernel") {
    Fp2 lam = Fp2::parse(P.str("lambda", "0"), p);
    auto M = hecke_matrix(p, r, R, job.cache_dir);
    auto kc = t_minus_lambda_dims(M, lam);
    return {{"p", p},
            {"r", r},
            {"radius", R},
            {"lambda", lam.str()},
            {"kernel", kc.kernel},
            {"cokernel", kc.cokernel},
            {"non_conclusive", true},
            {"note", "T - lambda from the radius-R ball to the radius-(R+1) ball; exploratory, not the quotient"}};
  }
  if (op == "p1") {
    int n = static_cast<int>(P.integer("n", 1));
    return {{"p1_dim", p1_dim(p, n)}, {"sp_dim", sp_dim(p, n)}};
  }
  throw Error(Errc::InvalidArgument, "unknown tree operation '" + op + "' (T, act, dims, kernel, p1)");
}

Json vec_json(const SeriesVec& v) {
  Json out = Json::array();
  for (const auto& f : v) out.push_back(encode(f));
  return out;
}

Json cmd_box(const JobSpec& job) {
  Params P(job);
  auto box = [&] {
    if (P.has("input")) return decode<BoxSeq>(P.json("input"));
    const i64 p = P.prime();
    auto D = std::make_shared<const PhiGammaModule>(PhiGammaModule::trivial(p, job.precision.a, 1));
    SeriesVec x0{LaurentSeries::parse(P.str("f"), p, job.precision.a, job.precision.N)};
    CharacterP delta = P.has("delta") ? decode_character(P.json("delta"), p) : CharacterP::trivial(p);
    return BoxSeq::from_phi_iterates(static_cast<int>(P.integer("n0", 0)), static_cast<int>(P.integer("len", 3)), x0, delta, D);
  }();
  const std::string& op = job.op;
  auto value = [&] { return Rational::parse(P.str("value")); };
  if (op == "show") return encode(box);
  if (op == "center") return encode(box_center(value(), box));
  if (op == "diag-unit") return encode(box_diag_unit(value(), box));
  if (op == "diag-p") return encode(box_diag_p(P.integer("value"), box));
  if (op == "unipotent") return encode(box_unipotent(value(), box));
  if (op == "res-zp") return {{"res_zp", vec_json(res_zp(box))}};
  if (op == "res-zpx") return {{"res_zpx", vec_json(res_zpx(res_zp(box), box.module()))}};
  if (op == "bounded") return {{"bounded", is_bounded_sharp(box)}};
  throw Error(Errc::InvalidArgument,
              "unknown box operation '" + op + "' (show, center, diag-unit, diag-p, unipotent, res-zp, res-zpx, bounded)");
}

std::pair<i64, i64> parse_range(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) {
    i64 v = std::stoll(s);
    return {v, v};
  }
  return {std::stoll(s.substr(0, colon)), std::stoll(s.substr(colon + 1))};
}

std::vector<Rational> parse_list(const std::string& s) {
  std::vector<Rational> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!trim(item).empty()) out.push_back(Rational::parse(trim(item)));
  return out;
}

std::string cmd_sweep(const JobSpec& job) {
  Params P(job);
  const i64 p = P.prime();
  auto [lo, hi] = parse_range(P.str("k", "2:12"));
  auto vals = parse_list(P.str("vals", "1/2,1,2"));
  SweepTable t;
  if (job.op == "reduce" || job.op.empty())
    t = reduction_sweep(p, lo, hi, vals, job.threads);
  else if (job.op == "admissible")
    t = admissibility_sweep(p, lo, hi, vals, job.threads);
  else
    throw Error(Errc::InvalidArgument, "unknown sweep '" + job.op + "' (reduce, admissible)");
  std::string format = P.str("format", "csv");
  if (format == "csv") return to_csv(t);
  if (format == "json") return to_json_text(t);
  throw Error(Errc::InvalidArgument, "unknown format '" + format + "' (csv, json)");
}

int exit_for(Errc c) {
  switch (c) {
    case Errc::InsufficientPrecision:
    case Errc::ZeroWithinPrecision: return kExitPrecision;
    case Errc::NeedsFieldExtension:
    case Errc::IrrationalEigenline: return kExitUndecided;
    default: return kExitUsage;
  }
}

template <class F>
void parallel_for(size_t n, int threads, F f) {
  size_t workers = threads > 0 ? static_cast<size_t>(threads) : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<size_t>(n, 1));
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (size_t i = next++; i < n; i = next++) f(i);
    });
  for (auto& t : pool) t.join();
}

template <class RowFn>
SweepTable grid_sweep(std::string command, std::vector<std::string> columns, i64 p, i64 lo, i64 hi,
                      const std::vector<Rational>& vals, int threads, RowFn fn) {
  SweepTable t{std::move(command), std::move(columns), {}};
  std::vector<std::pair<i64, Rational>> points;
  for (i64 k = lo; k <= hi; ++k)
    for (const auto& v : vals) points.emplace_back(k, v);
  t.rows.resize(points.size());
  parallel_for(points.size(), threads, [&](size_t i) {
    auto [k, v] = points[i];
    SweepRow& row = t.rows[i];
    row.cells = {std::to_string(p), std::to_string(k), v.str()};
    try {
      PadicScalar ap = PadicScalar::pi_power(p, v.num(), static_cast<int>(v.den()));
      for (auto& c : fn(k, ap)) row.cells.push_back(std::move(c));
    } catch (const Error& e) {
      row.error = std::string(errc_name(e.code()));
    }
    row.cells.resize(t.columns.size());
  });
  return t;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace

void write_atomically(const std::filesystem::path& file, const std::string& text) {
  auto tmp = file;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary);
    out << text;
    if (!out) throw Error(Errc::InvalidArgument, "cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, file);
}

void apply_config(JobSpec& job, const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(Errc::InvalidArgument, "cannot read config " + file.string());
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(Errc::Parse, "config line without '=': " + line);
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key == "p")
      job.default_p = std::stoll(val);
    else if (key == "a")
      job.precision.a = std::stoi(val);
    else if (key == "N")
      job.precision.N = std::stoll(val);
    else if (key == "L")
      job.precision.L = std::stoi(val);
    else if (key == "threads")
      job.threads = std::stoi(val);
    else if (key == "cache")
      job.cache_dir = val;
    else
      throw Error(Errc::Parse, "unknown config key " + key);
  }
}

SweepTable reduction_sweep(i64 p, i64 k_lo, i64 k_hi, const std::vector<Rational>& vals, int threads) {
  return grid_sweep("reduce", {"p", "k", "val", "kind", "branch", "value", "buzzard"}, p, k_lo, k_hi, vals, threads,
                    [p](i64 k, const PadicScalar& ap) {
                      Reduction r = reduce_crystalline(p, k, ap);
                      std::string value = r.value ? r.value->str() : "";
                      return std::vector<std::string>{reduction_kind_name(r.kind), r.branch, value,
                                                      buzzard_name(buzzard_monitor(p, k, ap, r))};
                    });
}

SweepTable admissibility_sweep(i64 p, i64 k_lo, i64 k_hi, const std::vector<Rational>& vals, int threads) {
  return grid_sweep("admissible", {"p", "k", "val", "verdict", "t_H", "t_N"}, p, k_lo, k_hi, vals, threads,
                    [p](i64 k, const PadicScalar& ap) {
                      auto D = build_Dkap(p, k, ap);
                      auto r = is_admissible(D);
                      return std::vector<std::string>{admissibility_name(r.verdict), std::to_string(t_H(D)), t_N(D).str()};
                    });
}

std::string to_csv(const SweepTable& t) {
  std::string out;
  for (size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += ",error\n";
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.cells.size(); ++i) out += (i ? "," : "") + csv_cell(row.cells[i]);
    out += "," + csv_cell(row.error) + "\n";
  }
  return out;
}

std::string to_json_text(const SweepTable& t) {
  Json rows = Json::array();
  for (const auto& row : t.rows) {
    Json r = Json::object();
    for (size_t i = 0; i < t.columns.size(); ++i) r[t.columns[i]] = row.cells[i];
    r["error"] = row.error.empty() ? Json(nullptr) : Json(row.error);
    rows.push_back(r);
  }
  Json j{{"schema", "pgk.sweep/1"}, {"command", t.command}, {"columns", t.columns}, {"rows", rows}};
  return j.dump(2) + "\n";
}

int run(const JobSpec& job, std::ostream& out, std::ostream& err) {
  int code = kExitDecided;
  std::string text;
  try {
    try {
      Json result;
      const std::string& c = job.command;
      if (c == "sweep") {
        text = cmd_sweep(job);
      } else {
        if (c == "series")
          result = cmd_series(job);
        else if (c == "admissible")
          result = cmd_admissible(job);
        else if (c == "reduce")
          result = cmd_reduce(job);
        else if (c == "correspond")
          result = cmd_correspond(job);
        else if (c == "classify-trianguline")
          result = cmd_classify(job);
        else if (c == "ext-dim")
          result = cmd_ext_dim(job);
        else if (c == "tree")
          result = cmd_tree(job);
        else if (c == "box")
          result = cmd_box(job);
        else
          throw Error(Errc::InvalidArgument, "unknown command '" + c + "'");
        text = result.dump(2) + "\n";
      }
    } catch (Undecided& u) {
      text = u.result.dump(2) + "\n";
      code = kExitUndecided;
    }
  } catch (const Error& e) {
    err << Json{{"error", std::string(errc_name(e.code()))}, {"message", e.what()}}.dump() << "\n";
    return exit_for(e.code());
  } catch (const std::invalid_argument& e) {
    err << Json{{"error", "InvalidArgument"}, {"message", e.what()}}.dump() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << Json{{"error", "InvalidArgument"}, {"message", e.what()}}.dump() << "\n";
    return kExitUsage;
  }
  if (job.output)
    write_atomically(*job.output, text);
  else
    out << text;
  return code;
}

}  // namespace pgk
