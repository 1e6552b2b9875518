#include "nk/moduli.hpp"

#include <cmath>
#include <sstream>

#include "nk/error.hpp"
#include "nk/random.hpp"

namespace nk {

BasedRationalMap::BasedRationalMap(Poly p, Poly q, const ToleranceContext& tol)
    : p_(std::move(p)), q_(std::move(q)) {
  std::ostringstream os;
  if (q_.degree() < 1 || !q_.is_monic(tol.eq_tol)) {
    os << "deg q = " << q_.degree() << ", leading coefficient " << q_.leading();
    throw Error(ErrorCode::kInvariantViolation, "denominator must be monic of degree >= 1",
                os.str());
  }
  if (p_.degree() >= q_.degree()) {
    os << "deg p = " << p_.degree() << ", deg q = " << q_.degree();
    throw Error(ErrorCode::kInvariantViolation, "map is not based (deg p >= deg q)", os.str());
  }
  Complex res = poly_resultant(q_, p_);
  if (!(std::abs(res) > tol.eq_tol)) {
    os << "|Res(q,p)| = " << std::abs(res);
    throw Error(ErrorCode::kNotCoprime, "p and q are not coprime", os.str());
  }
}

namespace {

MembershipCheck make_check(std::string name, double residual, double threshold) {
  return {std::move(name), residual, threshold, residual < threshold};
}

MembershipReport finish(std::vector<MembershipCheck> checks) {
  MembershipReport r;
  r.member = true;
  for (const auto& c : checks) r.member = r.member && c.pass;
  r.checks = std::move(checks);
  return r;
}

}  // namespace

MembershipReport strongly_centred_report(const BasedRationalMap& m, double tol) {
  const int k = m.k();
  std::vector<MembershipCheck> checks;
  checks.push_back(make_check("pole_sum", std::abs(m.q()[k - 1]), tol));
  checks.push_back(
      make_check("total_phase", std::abs(poly_resultant(m.q(), m.p()) - 1.0), tol));
  return finish(std::move(checks));
}

bool is_strongly_centred(const BasedRationalMap& m, double tol) {
  return strongly_centred_report(m, tol).member;
}

MembershipReport nk_membership_report(const BasedRationalMap& m, double tol) {
  const int k = m.k();
  const Poly& q = m.q();
  std::vector<MembershipCheck> checks;
  if (k % 2 == 0) {
    double odd = 0.0;
    for (int i = 1; i <= k; i += 2) odd = std::max(odd, std::abs(q[i]));
    checks.push_back(make_check("q_even", odd, tol));
  } else {
    checks.push_back(make_check("q_vanishes_at_zero", std::abs(q[0]), tol));
    double even = 0.0;
    for (int i = 2; i <= k; i += 2) even = std::max(even, std::abs(q[i]));
    checks.push_back(make_check("q_over_z_even", even, tol));
    checks.push_back(make_check("p_at_zero", std::abs(m.p()(0.0) - 1.0), tol));
  }
  const Poly product = m.p() * m.p().reflected();
  const Poly reduced = poly_mod(product, q);
  const double residual = distance(reduced, Poly::constant(1.0));
  checks.push_back(make_check("congruence", residual, tol * (1.0 + product.norm())));
  return finish(std::move(checks));
}

bool is_Nk_member(const BasedRationalMap& m, double tol) {
  return nk_membership_report(m, tol).member;
}

namespace {

template <typename F>
MembershipReport raw_report(const Poly& p, const Poly& q, F&& report) {
  try {
    return report(BasedRationalMap(p, q));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNotCoprime) throw;
    MembershipReport r;
    r.checks.push_back({"coprime", std::abs(poly_resultant(q, p)), ToleranceContext{}.eq_tol, false});
    return r;
  }
}

}  // namespace

MembershipReport nk_membership_report(const Poly& p, const Poly& q, double tol) {
  return raw_report(p, q, [tol](const BasedRationalMap& m) { return nk_membership_report(m, tol); });
}

MembershipReport strongly_centred_report(const Poly& p, const Poly& q, double tol) {
  return raw_report(p, q, [tol](const BasedRationalMap& m) { return strongly_centred_report(m, tol); });
}

bool is_Nk_member(const Poly& p, const Poly& q, double tol) {
  return nk_membership_report(p, q, tol).member;
}

NkSample sample_Nk(int k, std::uint64_t seed) {
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "sample_Nk needs k >= 2");
  const int n = k / 2;
  const bool odd = (k % 2) == 1;
  Rng rng(seed);
  constexpr int kMaxRetries = 64;
  constexpr double kMinSeparation = 0.25;

  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    std::vector<Complex> w2(static_cast<std::size_t>(n));
    std::vector<Complex> c(static_cast<std::size_t>(n));
    std::vector<double> params;
    params.reserve(static_cast<std::size_t>(4 * n));
    for (int j = 0; j < n; ++j) {
      w2[static_cast<std::size_t>(j)] = rng.polar(0.5, 2.0);
      c[static_cast<std::size_t>(j)] = rng.polar(0.5, 2.0);
      params.push_back(w2[static_cast<std::size_t>(j)].real());
      params.push_back(w2[static_cast<std::size_t>(j)].imag());
      params.push_back(c[static_cast<std::size_t>(j)].real());
      params.push_back(c[static_cast<std::size_t>(j)].imag());
    }
    bool separated = true;
    for (int i = 0; i < n && separated; ++i)
      for (int j = i + 1; j < n; ++j)
        if (std::abs(w2[static_cast<std::size_t>(i)] - w2[static_cast<std::size_t>(j)]) <
            kMinSeparation) {
          separated = false;
          break;
        }
    if (!separated) continue;

    std::vector<InterpolationNode> nodes;
    std::vector<Complex> poles;
    for (int j = 0; j < n; ++j) {
      const Complex w = std::sqrt(w2[static_cast<std::size_t>(j)]);
      const Complex cj = c[static_cast<std::size_t>(j)];
      nodes.push_back({w, cj});
      nodes.push_back({-w, 1.0 / cj});
      poles.push_back(w);
      poles.push_back(-w);
    }
    if (odd) {
      nodes.push_back({0.0, 1.0});
      poles.push_back(0.0);
    }
    Poly p = poly_interpolate(nodes);
    // Build q from its even factors so odd coefficients vanish exactly.
    Poly q = Poly::constant(1.0);
    for (const auto& v : w2) q = q * Poly{-v, 0.0, 1.0};
    if (odd) q = q.times_monomial(1);
    return {BasedRationalMap(std::move(p), std::move(q)), std::move(params)};
  }
  throw Error(ErrorCode::kNoConvergence, "could not draw well-separated poles",
              "seed " + std::to_string(seed));
}

Matrix companion_S(const Poly& q) {
  const int k = q.degree();
  if (k < 1 || !q.is_monic(ToleranceContext{}.eq_tol))
    throw Error(ErrorCode::kInvalidArgument, "companion_S needs a monic polynomial of degree >= 1");
  Matrix s = Matrix::Zero(k, k);
  for (int i = 1; i < k; ++i) s(i, i - 1) = 1.0;
  // Row i holds -a_i, so the bottom entry s_1 is minus the trace term.
  for (int i = 0; i < k; ++i) s(i, k - 1) = -q[i];
  return s;
}

void CompanionData::validate(double tol) const {
  const int k = static_cast<int>(s.rows());
  if (s.cols() != k || u.rows() != k || u.cols() != k || k < 1)
    throw Error(ErrorCode::kInvariantViolation, "S and u must be square of equal size");
  for (int i = 0; i < k; ++i)
    for (int j = 0; j + 1 < k; ++j) {
      const Complex expected = (i == j + 1) ? Complex{1.0} : Complex{};
      if (s(i, j) != expected) {
        std::ostringstream os;
        os << "entry (" << i << "," << j << ")";
        throw Error(ErrorCode::kInvariantViolation, "S does not have companion shape", os.str());
      }
    }
  const double defect = max_abs(commutator(s, u));
  if (!(defect < tol * (1.0 + max_abs(u)))) {
    std::ostringstream os;
    os << "||Su - uS|| = " << defect;
    throw Error(ErrorCode::kNotCommuting, "u does not commute with S", os.str());
  }
}

FaddeevLeVerrier faddeev_leverrier(const Matrix& a) {
  const int k = static_cast<int>(a.rows());
  std::vector<Complex> c(static_cast<std::size_t>(k) + 1, Complex{});
  c[static_cast<std::size_t>(k)] = 1.0;
  std::vector<Matrix> adj;
  Matrix m = Matrix::Zero(k, k);
  const Matrix id = Matrix::Identity(k, k);
  for (int step = 1; step <= k; ++step) {
    m = a * m + c[static_cast<std::size_t>(k - step + 1)] * id;
    adj.push_back(m);
    c[static_cast<std::size_t>(k - step)] = -(a * m).trace() / static_cast<double>(step);
  }
  return {Poly(std::move(c)), std::move(adj)};
}

BasedRationalMap rational_map_from_Su(const CompanionData& c, const ToleranceContext& tol) {
  c.validate(tol.eq_tol);
  const int k = static_cast<int>(c.s.rows());
  auto fl = faddeev_leverrier(c.s);
  std::vector<Complex> p(static_cast<std::size_t>(k), Complex{});
  for (int step = 1; step <= k; ++step)
    p[static_cast<std::size_t>(k - step)] =
        (c.u * fl.adjugate_coeffs[static_cast<std::size_t>(step - 1)]).trace();
  return BasedRationalMap(Poly(std::move(p)), std::move(fl.characteristic), tol);
}

}  // namespace nk
