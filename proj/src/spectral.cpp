#include "nk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nk/error.hpp"

namespace nk {

const Poly BiPoly::kZero{};

BiPoly::BiPoly(std::vector<Poly> eta_coeffs) : coeffs_(std::move(eta_coeffs)) {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

const Poly& BiPoly::operator[](int j) const {
  if (j < 0 || j > eta_degree()) return kZero;
  return coeffs_[static_cast<std::size_t>(j)];
}

double BiPoly::norm() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, c.norm());
  return m;
}

BiPoly BiPoly::eta_reflected() const {
  std::vector<Poly> c = coeffs_;
  for (std::size_t j = 1; j < c.size(); j += 2) c[j] = -c[j];
  return BiPoly(std::move(c));
}

Complex BiPoly::operator()(Complex zeta, Complex eta) const {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * eta + (*it)(zeta);
  return acc;
}

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
  std::vector<Poly> c(static_cast<std::size_t>(std::max(a.eta_degree(), b.eta_degree()) + 1));
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = a[static_cast<int>(j)] + b[static_cast<int>(j)];
  return BiPoly(std::move(c));
}

BiPoly operator-(const BiPoly& a, const BiPoly& b) {
  std::vector<Poly> c(static_cast<std::size_t>(std::max(a.eta_degree(), b.eta_degree()) + 1));
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = a[static_cast<int>(j)] - b[static_cast<int>(j)];
  return BiPoly(std::move(c));
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Poly> c(static_cast<std::size_t>(a.eta_degree() + b.eta_degree() + 1));
  for (int i = 0; i <= a.eta_degree(); ++i)
    for (int j = 0; j <= b.eta_degree(); ++j) c[static_cast<std::size_t>(i + j)] += a[i] * b[j];
  return BiPoly(std::move(c));
}

CurvePoly::CurvePoly(int n, std::vector<Poly> a) : n_(n), a_(std::move(a)) {
  std::ostringstream os;
  if (n < 1 || static_cast<int>(a_.size()) != n) {
    os << "n = " << n << ", " << a_.size() << " coefficients";
    throw Error(ErrorCode::kInvariantViolation, "curve needs exactly n coefficient polynomials",
                os.str());
  }
  for (int i = 1; i <= n; ++i)
    if (a_[static_cast<std::size_t>(i - 1)].degree() > 4 * i) {
      os << "deg a_" << i << " = " << a_[static_cast<std::size_t>(i - 1)].degree();
      throw Error(ErrorCode::kInvariantViolation, "coefficient exceeds degree 4i", os.str());
    }
}

BiPoly CurvePoly::as_bipoly() const {
  std::vector<Poly> c(static_cast<std::size_t>(2 * n_ + 1));
  c.back() = Poly::constant(1.0);
  for (int i = 1; i <= n_; ++i) c[static_cast<std::size_t>(2 * n_ - 2 * i)] = a_[static_cast<std::size_t>(i - 1)];
  return BiPoly(std::move(c));
}

BiPoly reduce_mod_monic(const BiPoly& s, const BiPoly& modulus) {
  const int d = modulus.eta_degree();
  if (d < 0 || !(modulus[d] == Poly::constant(1.0)))
    throw Error(ErrorCode::kInvalidArgument, "modulus must be monic in eta");
  std::vector<Poly> c = s.coeffs();
  for (int top = static_cast<int>(c.size()) - 1; top >= d; --top) {
    const Poly lead = c[static_cast<std::size_t>(top)];
    if (lead.is_zero()) continue;
    for (int j = 0; j < d; ++j) c[static_cast<std::size_t>(top - d + j)] -= lead * modulus[j];
    c[static_cast<std::size_t>(top)] = Poly{};
  }
  if (static_cast<int>(c.size()) > d) c.resize(static_cast<std::size_t>(d));
  return BiPoly(std::move(c));
}

SpectralSection::SpectralSection(BiPoly s, const CurvePoly& curve)
    : s_(reduce_mod_monic(s, curve.as_bipoly())) {}

SectionProductResult section_product(const SpectralSection& s, const CurvePoly& curve, double tol) {
  const BiPoly product = s.s() * s.s().eta_reflected();
  SectionProductResult out;
  out.reduced = reduce_mod_monic(product - BiPoly({Poly::constant(1.0)}), curve.as_bipoly());
  out.residual = out.reduced.norm();
  out.pass = out.residual < tol * (1.0 + product.norm());
  return out;
}

bool section_product_check(const SpectralSection& s, const CurvePoly& curve, double tol) {
  return section_product(s, curve, tol).pass;
}

ZeroSectionReport eval_on_zero_section(const SpectralSection& s, const CurvePoly& curve,
                                       std::span<const Complex> grid, double tol) {
  ZeroSectionReport out;
  const Poly& a_n = curve.a().back();
  const Poly s0 = s.s().at_eta_zero();
  auto sample = [&](Complex zeta, bool on_curve) {
    ZeroSectionSample z;
    z.zeta = zeta;
    z.value = s0(zeta);
    z.on_curve = on_curve;
    z.plus_minus_one = std::min(std::abs(z.value - 1.0), std::abs(z.value + 1.0)) < tol;
    out.on_curve_pm_one = out.on_curve_pm_one && (!on_curve || z.plus_minus_one);
    out.all_pm_one = out.all_pm_one && z.plus_minus_one;
    out.samples.push_back(z);
  };
  if (a_n.is_zero()) {
    out.notes.push_back("a_n vanishes identically: the curve contains eta = 0");
  } else if (a_n.degree() == 0) {
    out.notes.push_back("a_n is a nonzero constant: the curve does not meet eta = 0");
  } else {
    for (const auto& root : poly_roots(a_n)) sample(root, true);
  }
  const double scale = 1.0 + a_n.norm();
  for (const auto& zeta : grid) {
    const bool on_curve = std::abs(a_n(zeta)) < tol * scale;
    if (on_curve) {
      std::ostringstream os;
      os << "grid point " << zeta << " lies on the curve";
      out.notes.push_back(os.str());
    }
    sample(zeta, on_curve);
  }
  return out;
}

SbarResult build_sbar(const SpectralSection& s, const CurvePoly& curve, const ToleranceContext& tol) {
  const Poly& a_n = curve.a().back();
  if (a_n.is_zero())
    throw Error(ErrorCode::kNotCoprime, "eta and P share a factor: a_n vanishes identically");
  const BiPoly p = curve.as_bipoly();
  const BiPoly square = reduce_mod_monic(s.s() * s.s(), p);
  // sbar = square + g(zeta) P with g = (1 - square(zeta, 0)) / a_n.
  const Poly defect = Poly::constant(1.0) - square.at_eta_zero();
  auto [g, rem] = poly_divmod(defect, a_n);
  const double scale = 1.0 + square.norm();
  if (!(rem.norm() < tol.eq_tol * scale)) {
    std::ostringstream os;
    os << "remainder norm " << rem.norm();
    throw Error(ErrorCode::kInvariantViolation, "1 - s(zeta,0)^2 is not divisible by a_n",
                os.str());
  }
  SbarResult out;
  out.sbar = square + BiPoly({g}) * p;
  out.residual_mod_p = reduce_mod_monic(out.sbar - square, p).norm();
  out.residual_mod_eta = distance(out.sbar.at_eta_zero(), Poly::constant(1.0));
  return out;
}

CurvePoly rescale_curve(const CurvePoly& curve, Complex lambda) {
  if (lambda == Complex{}) throw Error(ErrorCode::kInvalidArgument, "rescale factor must be nonzero");
  std::vector<Poly> a = curve.a();
  const Complex l2 = lambda * lambda;
  Complex factor = 1.0;
  for (auto& ai : a) {
    factor *= l2;
    ai = ai * factor;
  }
  return CurvePoly(curve.n(), std::move(a));
}

}  // namespace nk
