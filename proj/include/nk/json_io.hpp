#pragma once

#include <string>

#include "json.hpp"
#include "nk/hilb.hpp"
#include "nk/liealg.hpp"
#include "nk/moduli.hpp"
#include "nk/nahm.hpp"
#include "nk/poly.hpp"
#include "nk/spectral.hpp"

// Wire format: a complex number is [re, im], a polynomial an array of
// complex numbers in ascending degree, a matrix a row-major nested array of
// complex numbers. Parsers throw nk::Error(kMalformedInput).
namespace nk::json_io {

using Json = nlohmann::json;

// Sorted keys, doubles printed with 17 significant digits, no whitespace.
std::string canonical_dump(const Json& j);

Json to_json(Complex c);
Json to_json(const Poly& p);
Json to_json(const Matrix& m);
Json to_json(const BasedRationalMap& m);
Json to_json(const D1Point& d);
Json to_json(const D0Point& d);
Json to_json(const CurvePoly& c);
Json to_json(const BiPoly& s);  // {"eta_coeffs": [...]}
Json to_json(const NahmState& s);
Json to_json(const MembershipReport& r);
Json to_json(const FlowReport& r);
Json to_json(const Fiber& f);
Json to_json(const SymmetricPairSpec& s);
Json to_json(const ZeroSectionReport& r);
Json to_json(const SbarResult& r);
Json to_json(const CoverRecipeComparison& c);

Complex complex_from_json(const Json& j);
Poly poly_from_json(const Json& j);
Matrix matrix_from_json(const Json& j);
BasedRationalMap map_from_json(const Json& j, const ToleranceContext& tol = {});
// The (p, q) pair of a map document, checked only for deg q == k.
std::pair<Poly, Poly> map_polys_from_json(const Json& j);
// Reads "surface" and dispatches; the wrong surface throws.
D1Point d1_from_json(const Json& j, const ToleranceContext& tol = {});
D0Point d0_from_json(const Json& j, const ToleranceContext& tol = {});
CurvePoly curve_from_json(const Json& j);
BiPoly bipoly_from_json(const Json& j);
NahmState nahm_state_from_json(const Json& j);

}  // namespace nk::json_io
