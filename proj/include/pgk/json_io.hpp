#pragma once

// Self-describing JSON for every object. Each encoded object carries "schema": "pgk.<type>/1";
// decode<T> checks it and accepts a few shorthand forms for hand-written input.

#include "json.hpp"
#include "pgk/filtered_phi_n.hpp"
#include "pgk/modp_corr.hpp"
#include "pgk/phi_gamma.hpp"
#include "pgk/slopes.hpp"
#include "pgk/smooth_gl2.hpp"
#include "pgk/trianguline.hpp"

namespace pgk {

using Json = nlohmann::ordered_json;

Json encode(const LaurentSeries& f);
Json encode(const PadicScalar& x);
Json encode(const CharacterP& d);
Json encode(const PhiGammaModule& D);
Json encode(const BoxSeq& x);
Json encode(const TriParam& s);
Json encode(const TriangularPhiModule& m);
Json encode(const HnVerdict& v);
Json encode(const FilteredPhiNModule& D);
Json encode(const AdmissibilityResult& r);
Json encode(const CharModP& c);
Json encode(const GaloisSS& w);
Json encode(const GL2Atom& a);
Json encode_gl2(const GL2SS& s);
Json encode(const Reduction& r);
Json encode(const TreeFunction& f);
Json encode(const P1Function& f);

template <class T>
T decode(const Json& j);

template <> LaurentSeries decode<LaurentSeries>(const Json& j);
template <> PadicScalar decode<PadicScalar>(const Json& j);
template <> CharacterP decode<CharacterP>(const Json& j);
template <> PhiGammaModule decode<PhiGammaModule>(const Json& j);
template <> BoxSeq decode<BoxSeq>(const Json& j);
template <> TriParam decode<TriParam>(const Json& j);
template <> TriangularPhiModule decode<TriangularPhiModule>(const Json& j);
template <> HnVerdict decode<HnVerdict>(const Json& j);
template <> FilteredPhiNModule decode<FilteredPhiNModule>(const Json& j);
template <> AdmissibilityResult decode<AdmissibilityResult>(const Json& j);
template <> CharModP decode<CharModP>(const Json& j);
template <> GaloisSS decode<GaloisSS>(const Json& j);
template <> GL2Atom decode<GL2Atom>(const Json& j);
template <> GL2SS decode<GL2SS>(const Json& j);
template <> Reduction decode<Reduction>(const Json& j);
template <> TreeFunction decode<TreeFunction>(const Json& j);
template <> P1Function decode<P1Function>(const Json& j);

/// Scalar from an encoded object, a string in the scalar syntax, or an integer.
PadicScalar decode_scalar(const Json& j, i64 p);
/// Character from an encoded object or the short form {"c_p": "...", "j": n, "s": "..."}; p is
/// needed for the short form.
CharacterP decode_character(const Json& j, i64 p);

/// Parses text, raising Parse on malformed JSON.
Json parse_json(const std::string& text);

}  // namespace pgk
