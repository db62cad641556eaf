#include "pgk/json_io.hpp"

#include <functional>

#include "pgk/error.hpp"

namespace pgk {

namespace {

constexpr const char* kSeries = "pgk.series/1";
constexpr const char* kScalar = "pgk.scalar/1";
constexpr const char* kCharacter = "pgk.character/1";
constexpr const char* kPhiGamma = "pgk.phi_gamma_module/1";
constexpr const char* kBox = "pgk.box_seq/1";
constexpr const char* kTriParam = "pgk.tri_param/1";
constexpr const char* kTriModule = "pgk.triangular_module/1";
constexpr const char* kHn = "pgk.hn_verdict/1";
constexpr const char* kFiltered = "pgk.filtered_module/1";
constexpr const char* kAdmissibility = "pgk.admissibility/1";
constexpr const char* kModpChar = "pgk.modp_character/1";
constexpr const char* kGalois = "pgk.galois_ss/1";
constexpr const char* kAtom = "pgk.gl2_atom/1";
constexpr const char* kGl2 = "pgk.gl2_ss/1";
constexpr const char* kReduction = "pgk.reduction/1";
constexpr const char* kTree = "pgk.tree_function/1";
constexpr const char* kP1 = "pgk.p1_function/1";

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Parse, std::string(what) + ": " + e.what());
  } catch (const std::logic_error& e) {
    throw Error(Errc::Parse, std::string(what) + ": " + e.what());
  }
}

void expect_schema(const Json& j, const char* schema) {
  if (!j.is_object()) throw Error(Errc::Parse, std::string("expected an object with schema ") + schema);
  if (j.contains("schema") && j.at("schema").get<std::string>() != schema)
    throw Error(Errc::Parse, "schema " + j.at("schema").get<std::string>() + " where " + schema + " was expected");
}

template <class E, class NameFn>
E parse_enum(const std::string& s, std::initializer_list<E> values, NameFn name) {
  for (E v : values)
    if (s == name(v)) return v;
  throw Error(Errc::Parse, "unknown name " + s);
}

std::string rat(const Rational& q) { return q.str(); }
Rational rat(const Json& j) { return j.is_number_integer() ? Rational(j.get<i64>()) : Rational::parse(j.get<std::string>()); }

Json fp2(const Fp2& x) { return Json::array({x.a(), x.b()}); }
Fp2 fp2(const Json& j, i64 p) {
  if (j.is_number_integer()) return Fp2(p, j.get<i64>());
  if (j.is_string()) return Fp2::parse(j.get<std::string>(), p);
  return Fp2(p, j.at(0).get<i64>(), j.at(1).get<i64>());
}

template <class T, class F>
Json array_of(const std::vector<T>& v, F f) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(f(x));
  return out;
}

Json series_mat(const SeriesMat& M) {
  return array_of(M, [](const SeriesVec& row) { return array_of(row, [](const LaurentSeries& f) { return encode(f); }); });
}

SeriesVec series_vec(const Json& j) {
  SeriesVec out;
  for (const auto& x : j) out.push_back(decode<LaurentSeries>(x));
  return out;
}

SeriesMat series_mat(const Json& j) {
  SeriesMat out;
  for (const auto& row : j) out.push_back(series_vec(row));
  return out;
}

Json scalar_vec(const PVec& v) {
  return array_of(v, [](const PadicScalar& x) { return encode(x); });
}

PVec scalar_vec(const Json& j, i64 p) {
  PVec out;
  for (const auto& x : j) out.push_back(decode_scalar(x, p));
  return out;
}

const char* scalar_kind(PadicScalar::Kind k) {
  switch (k) {
    case PadicScalar::Kind::ExactZero: return "exact_zero";
    case PadicScalar::Kind::ZeroTo: return "zero_to";
    case PadicScalar::Kind::Nonzero: return "nonzero";
  }
  return "nonzero";
}

const char* galois_kind(GaloisSS::Kind k) { return k == GaloisSS::Kind::Irred ? "irred" : "split"; }

const char* atom_kind(GL2Atom::Kind k) {
  switch (k) {
    case GL2Atom::Kind::OneDim: return "one_dim";
    case GL2Atom::Kind::Special: return "special";
    case GL2Atom::Kind::Pi: return "pi";
  }
  return "pi";
}

template <class T>
Json optional_json(const std::optional<T>& x) {
  return x ? encode(*x) : Json(nullptr);
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Parse, std::string("malformed JSON: ") + e.what());
  }
}

// ---- series and scalars ----

Json encode(const LaurentSeries& f) {
  Json terms = Json::array();
  for (auto [d, c] : f.terms()) terms.push_back({d, c});
  return {{"schema", kSeries}, {"p", f.prime()}, {"a", f.digits()}, {"e", 1},
          {"N", f.precision()}, {"ring", ring_name(f.ring())}, {"terms", terms}};
}

template <>
LaurentSeries decode<LaurentSeries>(const Json& j) {
  return guarded("series", [&] {
    expect_schema(j, kSeries);
    if (j.value("e", 1) != 1) throw Error(Errc::Parse, "series coefficients must be unramified (e = 1)");
    std::vector<std::pair<i64, i64>> terms;
    for (const auto& t : j.at("terms")) terms.emplace_back(t.at(0).get<i64>(), t.at(1).get<i64>());
    return LaurentSeries::from_terms(j.at("p").get<i64>(), j.at("a").get<int>(), j.at("N").get<i64>(), terms,
                                     parse_ring(j.value("ring", std::string(ring_name(LaurentSeries::Ring::E)))));
  });
}

Json encode(const PadicScalar& x) {
  Json j{{"schema", kScalar}, {"p", x.prime()}, {"e", x.ram()}, {"kind", scalar_kind(x.kind())}};
  if (x.kind() == PadicScalar::Kind::ExactZero) return j;
  j["vnum"] = x.vnum();
  if (x.kind() == PadicScalar::Kind::ZeroTo) return j;
  if (auto u = x.exact_unit()) {
    j["unit"] = rat(*u);
  } else {
    int prec = *x.rel_precision();
    j["unit_residue"] = x.unit_residue(prec);
    j["prec"] = prec;
  }
  return j;
}

template <>
PadicScalar decode<PadicScalar>(const Json& j) {
  return guarded("scalar", [&] {
    expect_schema(j, kScalar);
    i64 p = j.at("p").get<i64>();
    int e = j.value("e", 1);
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "exact_zero") return PadicScalar::zero(p, e);
    i64 vnum = j.at("vnum").get<i64>();
    if (kind == "zero_to") return PadicScalar::zero_to(p, Rational(vnum, e), e);
    if (kind != "nonzero") throw Error(Errc::Parse, "unknown scalar kind " + kind);
    if (j.contains("unit")) return PadicScalar::pi_power(p, vnum, e) * PadicScalar::from_rational(p, rat(j.at("unit")), e);
    return PadicScalar::from_unit_residue(p, vnum, j.at("unit_residue").get<i64>(), j.at("prec").get<int>(), e);
  });
}

PadicScalar decode_scalar(const Json& j, i64 p) {
  return guarded("scalar", [&] {
    if (j.is_number_integer()) return PadicScalar::from_integer(p, j.get<i64>());
    if (j.is_string()) return PadicScalar::parse(j.get<std::string>(), p);
    PadicScalar x = decode<PadicScalar>(j);
    if (x.prime() != p) throw Error(Errc::PrimeMismatch, "scalar over another prime");
    return x;
  });
}

// ---- characters and (phi, Gamma)-modules ----

Json encode(const CharacterP& d) {
  return {{"schema", kCharacter}, {"c_p", encode(d.c_p)}, {"j", d.j}, {"s", encode(d.s)}};
}

template <>
CharacterP decode<CharacterP>(const Json& j) {
  return guarded("character", [&] {
    expect_schema(j, kCharacter);
    PadicScalar c = decode<PadicScalar>(j.at("c_p"));
    return CharacterP(c, j.at("j").get<i64>(), decode_scalar(j.at("s"), c.prime()));
  });
}

CharacterP decode_character(const Json& j, i64 p) {
  return guarded("character", [&] {
    expect_schema(j, kCharacter);
    return CharacterP(decode_scalar(j.at("c_p"), p), j.value("j", i64{0}), decode_scalar(j.value("s", Json(0)), p));
  });
}

Json encode(const PhiGammaModule& D) {
  return {{"schema", kPhiGamma},
          {"p", D.p},
          {"a", D.a},
          {"rank", D.rank()},
          {"mat_phi", series_mat(D.mat_phi)},
          {"mat_gamma_tame", series_mat(D.mat_gamma_tame)},
          {"mat_gamma_wild", series_mat(D.mat_gamma_wild)},
          {"labels", D.labels}};
}

template <>
PhiGammaModule decode<PhiGammaModule>(const Json& j) {
  return guarded("phi-Gamma module", [&] {
    expect_schema(j, kPhiGamma);
    PhiGammaModule D;
    D.p = j.at("p").get<i64>();
    D.a = j.at("a").get<int>();
    D.mat_phi = series_mat(j.at("mat_phi"));
    D.mat_gamma_tame = series_mat(j.at("mat_gamma_tame"));
    D.mat_gamma_wild = series_mat(j.at("mat_gamma_wild"));
    if (j.contains("labels")) D.labels = j.at("labels").get<std::vector<std::string>>();
    if (j.contains("rank") && j.at("rank").get<int>() != D.rank()) throw Error(Errc::InvalidModule, "rank disagrees with mat_phi");
    D.validate();
    return D;
  });
}

Json encode(const BoxSeq& x) {
  Json entries = Json::array();
  for (const auto& e : x.entries()) entries.push_back(array_of(e, [](const LaurentSeries& f) { return encode(f); }));
  return {{"schema", kBox},       {"window", {x.n0(), x.n1()}}, {"entries", entries},
          {"delta", encode(x.delta())}, {"module", encode(x.module())}};
}

template <>
BoxSeq decode<BoxSeq>(const Json& j) {
  return guarded("box sequence", [&] {
    expect_schema(j, kBox);
    std::vector<SeriesVec> entries;
    for (const auto& e : j.at("entries")) entries.push_back(series_vec(e));
    int n0 = j.at("window").at(0).get<int>();
    if (j.at("window").at(1).get<int>() != n0 + static_cast<int>(entries.size()) - 1)
      throw Error(Errc::Parse, "window does not match the number of entries");
    auto D = std::make_shared<const PhiGammaModule>(decode<PhiGammaModule>(j.at("module")));
    return BoxSeq(n0, std::move(entries), decode<CharacterP>(j.at("delta")), D);
  });
}

// ---- trianguline and slopes ----

Json encode(const TriParam& s) {
  return {{"schema", kTriParam}, {"d1", encode(s.d1)}, {"d2", encode(s.d2)}, {"L", optional_json(s.L)}};
}

template <>
TriParam decode<TriParam>(const Json& j) {
  return guarded("trianguline parameter", [&] {
    expect_schema(j, kTriParam);
    CharacterP d1 = decode<CharacterP>(j.at("d1"));
    TriParam s{d1, decode_character(j.at("d2"), d1.prime()), std::nullopt};
    if (j.contains("L") && !j.at("L").is_null()) s.L = decode_scalar(j.at("L"), d1.prime());
    s.validate();
    return s;
  });
}

Json encode(const TriangularPhiModule& m) {
  return {{"schema", kTriModule}, {"rank", m.rank},           {"l1", encode(m.l1)},
          {"l2", encode(m.l2)},   {"off", optional_json(m.off)}, {"param", optional_json(m.param)}};
}

template <>
TriangularPhiModule decode<TriangularPhiModule>(const Json& j) {
  return guarded("triangular module", [&] {
    expect_schema(j, kTriModule);
    TriangularPhiModule m;
    m.rank = j.at("rank").get<int>();
    m.l1 = decode<PadicScalar>(j.at("l1"));
    m.l2 = decode<PadicScalar>(j.at("l2"));
    if (j.contains("off") && !j.at("off").is_null()) m.off = decode<LaurentSeries>(j.at("off"));
    if (j.contains("param") && !j.at("param").is_null()) m.param = decode<TriParam>(j.at("param"));
    m.validate();
    return m;
  });
}

Json encode(const HnVerdict& v) {
  return {{"schema", kHn},
          {"slopes", {rat(v.slopes.first), rat(v.slopes.second)}},
          {"filtration", filtration_name(v.filtration)},
          {"etale", tribool_name(v.etale)}};
}

template <>
HnVerdict decode<HnVerdict>(const Json& j) {
  return guarded("HN verdict", [&] {
    expect_schema(j, kHn);
    HnVerdict v;
    v.slopes = {rat(j.at("slopes").at(0)), rat(j.at("slopes").at(1))};
    v.filtration = parse_enum(j.at("filtration").get<std::string>(),
                              {Filtration::Explicit, Filtration::ExchangeNeeded, Filtration::Isocline}, filtration_name);
    v.etale = parse_enum(j.at("etale").get<std::string>(), {Tribool::False, Tribool::True, Tribool::Undetermined}, tribool_name);
    return v;
  });
}

// ---- filtered modules ----

Json encode(const FilteredPhiNModule& D) {
  Json fil = Json::array();
  for (const auto& step : D.fil) fil.push_back({step.h, array_of(step.span, [](const PVec& v) { return scalar_vec(v); })});
  Json phi = array_of(D.phi, [](const PVec& r) { return scalar_vec(r); });
  Json N = array_of(D.N, [](const PVec& r) { return scalar_vec(r); });
  return {{"schema", kFiltered}, {"p", D.p}, {"dim", D.dim}, {"mat_phi", phi}, {"mat_N", N}, {"filtration", fil}, {"label", D.label}};
}

template <>
FilteredPhiNModule decode<FilteredPhiNModule>(const Json& j) {
  return guarded("filtered module", [&] {
    expect_schema(j, kFiltered);
    FilteredPhiNModule D;
    D.p = j.at("p").get<i64>();
    D.dim = j.at("dim").get<int>();
    for (const auto& r : j.at("mat_phi")) D.phi.push_back(scalar_vec(r, D.p));
    if (j.contains("mat_N")) {
      for (const auto& r : j.at("mat_N")) D.N.push_back(scalar_vec(r, D.p));
    } else {
      D.N.assign(static_cast<size_t>(D.dim), PVec(static_cast<size_t>(D.dim), PadicScalar::zero(D.p)));
    }
    for (const auto& step : j.at("filtration")) {
      FilStep s{step.at(0).get<i64>(), {}};
      for (const auto& v : step.at(1)) s.span.push_back(scalar_vec(v, D.p));
      D.fil.push_back(std::move(s));
    }
    D.label = j.value("label", std::string());
    D.validate();
    return D;
  });
}

Json encode(const AdmissibilityResult& r) {
  Json cert = Json::array();
  for (const auto& c : r.certificate)
    cert.push_back({{"what", c.what}, {"t_H", c.t_H}, {"t_N", rat(c.t_N)}, {"t_N_lower_bound", c.t_N_lower_bound}, {"ok", c.ok}});
  return {{"schema", kAdmissibility}, {"verdict", admissibility_name(r.verdict)}, {"certificate", cert}, {"note", r.note}};
}

template <>
AdmissibilityResult decode<AdmissibilityResult>(const Json& j) {
  return guarded("admissibility result", [&] {
    expect_schema(j, kAdmissibility);
    AdmissibilityResult r;
    r.verdict = parse_enum(j.at("verdict").get<std::string>(),
                           {Admissibility::Admissible, Admissibility::NotAdmissible, Admissibility::Undecided}, admissibility_name);
    for (const auto& c : j.at("certificate"))
      r.certificate.push_back({c.at("what").get<std::string>(), c.at("t_H").get<i64>(), rat(c.at("t_N")),
                               c.at("t_N_lower_bound").get<bool>(), c.at("ok").get<bool>()});
    r.note = j.value("note", std::string());
    return r;
  });
}

// ---- mod p ----

Json encode(const CharModP& c) { return {{"schema", kModpChar}, {"p", c.p}, {"t", c.t}, {"lambda", fp2(c.lam)}}; }

template <>
CharModP decode<CharModP>(const Json& j) {
  return guarded("mod p character", [&] {
    expect_schema(j, kModpChar);
    i64 p = j.at("p").get<i64>();
    return CharModP(fp2(j.value("lambda", Json(1)), p), j.value("t", i64{0}));
  });
}

Json encode(const GaloisSS& w) {
  Json j{{"schema", kGalois}, {"p", w.prime()}, {"kind", galois_kind(w.kind)}};
  if (w.kind == GaloisSS::Kind::Irred) {
    j["r"] = w.r;
    j["chi"] = encode(w.chi);
  } else {
    j["eta"] = {encode(w.eta1), encode(w.eta2)};
  }
  return j;
}

template <>
GaloisSS decode<GaloisSS>(const Json& j) {
  return guarded("Galois representation", [&] {
    expect_schema(j, kGalois);
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "irred") return GaloisSS::irred(j.at("r").get<i64>(), decode<CharModP>(j.at("chi")));
    if (kind == "split") return GaloisSS::split(decode<CharModP>(j.at("eta").at(0)), decode<CharModP>(j.at("eta").at(1)));
    throw Error(Errc::Parse, "unknown Galois kind " + kind);
  });
}

Json encode(const GL2Atom& a) {
  Json j{{"schema", kAtom}, {"kind", atom_kind(a.kind)}};
  if (a.kind == GL2Atom::Kind::Pi) {
    j["r"] = a.r;
    j["lambda"] = fp2(a.lam);
    j["chi"] = encode(a.chi);
  } else {
    j["eta"] = encode(a.eta);
  }
  return j;
}

template <>
GL2Atom decode<GL2Atom>(const Json& j) {
  return guarded("GL2 atom", [&] {
    expect_schema(j, kAtom);
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "one_dim") return GL2Atom::one_dim(decode<CharModP>(j.at("eta")));
    if (kind == "special") return GL2Atom::special(decode<CharModP>(j.at("eta")));
    if (kind != "pi") throw Error(Errc::Parse, "unknown atom kind " + kind);
    CharModP chi = decode<CharModP>(j.at("chi"));
    return GL2Atom::pi(j.at("r").get<i64>(), fp2(j.at("lambda"), chi.p), chi);
  });
}

Json encode_gl2(const GL2SS& s) {
  return {{"schema", kGl2}, {"atoms", array_of(s, [](const GL2Atom& a) { return encode(a); })}};
}

template <>
GL2SS decode<GL2SS>(const Json& j) {
  return guarded("GL2 semisimple representation", [&] {
    expect_schema(j, kGl2);
    GL2SS s;
    for (const auto& a : j.at("atoms")) s.push_back(decode<GL2Atom>(a));
    return canonical(s);
  });
}

Json encode(const Reduction& r) {
  return {{"schema", kReduction},
          {"kind", reduction_kind_name(r.kind)},
          {"branch", r.branch},
          {"value", optional_json(r.value)},
          {"split_base", optional_json(r.split_base)},
          {"reducible_ind", r.reducible_ind}};
}

template <>
Reduction decode<Reduction>(const Json& j) {
  return guarded("reduction", [&] {
    expect_schema(j, kReduction);
    Reduction r;
    r.kind = parse_enum(j.at("kind").get<std::string>(),
                        {Reduction::Kind::Decided, Reduction::Kind::Ambiguous, Reduction::Kind::Unknown}, reduction_kind_name);
    r.branch = j.value("branch", std::string());
    if (j.contains("value") && !j.at("value").is_null()) r.value = decode<GaloisSS>(j.at("value"));
    if (j.contains("split_base") && !j.at("split_base").is_null()) r.split_base = decode<CharModP>(j.at("split_base"));
    r.reducible_ind = j.value("reducible_ind", false);
    return r;
  });
}

// ---- smooth representations ----

Json encode(const TreeFunction& f) {
  Json support = Json::array();
  for (const auto& [v, c] : f.support) support.push_back({v, array_of(c, [](const Fp2& x) { return fp2(x); })});
  return {{"schema", kTree}, {"p", f.p}, {"r", f.r}, {"radius", f.radius}, {"support", support}};
}

template <>
TreeFunction decode<TreeFunction>(const Json& j) {
  return guarded("tree function", [&] {
    expect_schema(j, kTree);
    TreeFunction f(j.at("p").get<i64>(), j.at("r").get<int>(), j.at("radius").get<int>());
    for (const auto& entry : j.at("support")) {
      std::vector<Fp2> c;
      for (const auto& x : entry.at(1)) c.push_back(fp2(x, f.p));
      f.add(entry.at(0).get<Vertex>(), c);
    }
    f.validate();
    return f;
  });
}

Json encode(const P1Function& f) {
  return {{"schema", kP1}, {"p", f.p}, {"n", f.n}, {"values", array_of(f.values, [](const Fp2& x) { return fp2(x); })}};
}

template <>
P1Function decode<P1Function>(const Json& j) {
  return guarded("P1 function", [&] {
    expect_schema(j, kP1);
    P1Function f(j.at("p").get<i64>(), j.at("n").get<int>());
    const auto& vals = j.at("values");
    if (vals.size() != f.values.size()) throw Error(Errc::Parse, "P1 function needs p^n + p^(n-1) values");
    for (size_t i = 0; i < vals.size(); ++i) f.values[i] = fp2(vals[i], f.p);
    return f;
  });
}

}  // namespace pgk
