#include "nk/json_io.hpp"

#include <cstdio>
#include <sstream>

#include "nk/error.hpp"

namespace nk::json_io {

namespace {

[[noreturn]] void malformed(const std::string& what, const Json& j) {
  std::string ctx = j.dump();
  if (ctx.size() > 80) ctx = ctx.substr(0, 77) + "...";
  throw Error(ErrorCode::kMalformedInput, what, ctx);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'", j);
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) malformed(std::string("field '") + key + "' must be an integer", v);
  return v.get<int>();
}

void dump_into(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        dump_into(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump_into(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
      out += buf;
      break;
    }
    default: out += j.dump();
  }
}

template <Surface S>
Json point_to_json(const TransversePoint<S>& d) {
  return {{"surface", std::string(to_string(S))},
          {"x", to_json(d.x())},
          {"y", to_json(d.y())},
          {"r", to_json(d.r())}};
}

template <Surface S>
TransversePoint<S> point_from_json(const Json& j, const ToleranceContext& tol) {
  const Json& surface = field(j, "surface");
  if (!surface.is_string() || surface.get<std::string>() != to_string(S))
    malformed(std::string("expected surface ") + std::string(to_string(S)), surface);
  return TransversePoint<S>(poly_from_json(field(j, "x")), poly_from_json(field(j, "y")),
                            poly_from_json(field(j, "r")), tol);
}

Json checkpoint_summary(const Checkpoint& cp) { return to_json(cp.state); }

}  // namespace

std::string canonical_dump(const Json& j) {
  std::string out;
  dump_into(j, out);
  return out;
}

Json to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Json to_json(const Poly& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(to_json(c));
  return a;
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const BasedRationalMap& m) {
  return {{"k", m.k()}, {"p", to_json(m.p())}, {"q", to_json(m.q())}};
}

Json to_json(const D1Point& d) { return point_to_json(d); }
Json to_json(const D0Point& d) { return point_to_json(d); }

Json to_json(const CurvePoly& c) {
  Json a = Json::array();
  for (const auto& ai : c.a()) a.push_back(to_json(ai));
  return {{"n", c.n()}, {"a", std::move(a)}};
}

Json to_json(const BiPoly& s) {
  Json a = Json::array();
  for (const auto& c : s.coeffs()) a.push_back(to_json(c));
  return {{"eta_coeffs", std::move(a)}};
}

Json to_json(const NahmState& s) {
  Json t = Json::array();
  for (const auto& m : s.T) t.push_back(to_json(m));
  return {{"t", s.t}, {"T", std::move(t)}};
}

Json to_json(const MembershipReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back(
        {{"name", c.name}, {"residual", c.residual}, {"threshold", c.threshold}, {"pass", c.pass}});
  return {{"member", r.member}, {"checks", std::move(checks)}};
}

Json to_json(const FlowReport& r) {
  Json times = Json::array();
  for (const auto& cp : r.trajectory) times.push_back(cp.state.t);
  return {{"final_state", to_json(r.final_state)},
          {"initial_state", checkpoint_summary(r.trajectory.front())},
          {"checkpoint_times", std::move(times)},
          {"max_anti_hermitian_drift", r.max_anti_hermitian_drift},
          {"beta_spectrum_drift", r.beta_spectrum_drift},
          {"beta_charpoly_drift", r.beta_charpoly_drift},
          {"sigma_residuals", r.sigma_residuals},
          {"stats",
           {{"accepted", r.stats.accepted},
            {"rejected", r.stats.rejected},
            {"rhs_evaluations", r.stats.rhs_evaluations},
            {"min_step", r.stats.min_step},
            {"max_step", r.stats.max_step}}},
          {"normalization", r.normalization}};
}

Json to_json(const Fiber& f) {
  Json points = Json::array();
  for (const auto& p : f.points) points.push_back(to_json(p));
  Json roots = Json::array();
  for (const auto& r : f.roots) roots.push_back(to_json(r));
  Json orbits = Json::array();
  for (const auto& [a, b] : f.orbits) orbits.push_back(Json::array({a, b}));
  return {{"count", f.points.size()},
          {"preimages", std::move(points)},
          {"roots", std::move(roots)},
          {"orbits", std::move(orbits)}};
}

Json to_json(const SymmetricPairSpec& s) {
  return {{"k", s.k},
          {"n", s.n},
          {"case", to_string(s.tag)},
          {"G", s.group},
          {"K", s.subgroup},
          {"dim_G", s.dim_group},
          {"dim_K", s.dim_subgroup},
          {"dim_quotient", s.quotient_dimension()},
          {"dim_Nk", s.nk_dimension()}};
}

Json to_json(const ZeroSectionReport& r) {
  Json samples = Json::array();
  for (const auto& s : r.samples)
    samples.push_back({{"zeta", to_json(s.zeta)},
                       {"value", to_json(s.value)},
                       {"on_curve", s.on_curve},
                       {"plus_minus_one", s.plus_minus_one}});
  return {{"samples", std::move(samples)},
          {"on_curve_pm_one", r.on_curve_pm_one},
          {"all_pm_one", r.all_pm_one},
          {"notes", r.notes}};
}

Json to_json(const SbarResult& r) {
  Json j = to_json(r.sbar);
  j["residual_mod_p"] = r.residual_mod_p;
  j["residual_mod_eta"] = r.residual_mod_eta;
  return j;
}

Json to_json(const CoverRecipeComparison& c) {
  return {{"literal", to_json(c.literal)},
          {"surface", to_json(c.surface)},
          {"difference_mod_q", c.difference_mod_q},
          {"literal_at_zero", to_json(c.literal_at_zero)},
          {"surface_at_zero", to_json(c.surface_at_zero)},
          {"coefficient_difference", c.coefficient_difference}};
}

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    malformed("complex number must be [re, im]", j);
  return {j[0].get<double>(), j[1].get<double>()};
}

Poly poly_from_json(const Json& j) {
  if (!j.is_array()) malformed("polynomial must be an array of [re, im] pairs", j);
  std::vector<Complex> c;
  c.reserve(j.size());
  for (const auto& e : j) c.push_back(complex_from_json(e));
  try {
    return Poly(std::move(c));
  } catch (const Error& e) {
    malformed(e.what(), j);
  }
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) malformed("matrix must be a non-empty array of rows", j);
  const auto rows = static_cast<Eigen::Index>(j.size());
  Matrix m(rows, rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows)
      malformed("matrix must be square", j);
    for (Eigen::Index c = 0; c < rows; ++c) m(i, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

std::pair<Poly, Poly> map_polys_from_json(const Json& j) {
  const int k = int_field(j, "k");
  Poly p = poly_from_json(field(j, "p"));
  Poly q = poly_from_json(field(j, "q"));
  if (q.degree() != k) malformed("deg q does not match k", j);
  return {std::move(p), std::move(q)};
}

BasedRationalMap map_from_json(const Json& j, const ToleranceContext& tol) {
  auto [p, q] = map_polys_from_json(j);
  return BasedRationalMap(std::move(p), std::move(q), tol);
}

D1Point d1_from_json(const Json& j, const ToleranceContext& tol) {
  return point_from_json<Surface::kD1>(j, tol);
}

D0Point d0_from_json(const Json& j, const ToleranceContext& tol) {
  return point_from_json<Surface::kD0>(j, tol);
}

CurvePoly curve_from_json(const Json& j) {
  const int n = int_field(j, "n");
  const Json& a = field(j, "a");
  if (!a.is_array()) malformed("field 'a' must be an array of polynomials", a);
  std::vector<Poly> coeffs;
  for (const auto& e : a) coeffs.push_back(poly_from_json(e));
  return CurvePoly(n, std::move(coeffs));
}

BiPoly bipoly_from_json(const Json& j) {
  const Json& a = field(j, "eta_coeffs");
  if (!a.is_array()) malformed("field 'eta_coeffs' must be an array of polynomials", a);
  std::vector<Poly> coeffs;
  for (const auto& e : a) coeffs.push_back(poly_from_json(e));
  return BiPoly(std::move(coeffs));
}

NahmState nahm_state_from_json(const Json& j) {
  NahmState s;
  const Json& t = field(j, "t");
  if (!t.is_number()) malformed("field 't' must be a number", t);
  s.t = t.get<double>();
  const Json& mats = field(j, "T");
  if (!mats.is_array() || mats.size() != 4) malformed("field 'T' must hold four matrices", mats);
  for (std::size_t i = 0; i < 4; ++i) s.T[i] = matrix_from_json(mats[i]);
  return s;
}

}  // namespace nk::json_io
