#pragma once

#include <span>
#include <string>
#include <vector>

#include "nk/poly.hpp"

namespace nk {

// Polynomial in eta whose coefficients are polynomials in zeta, ascending
// in eta.
class BiPoly {
 public:
  BiPoly() = default;
  explicit BiPoly(std::vector<Poly> eta_coeffs);

  int eta_degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const Poly& operator[](int j) const;
  const std::vector<Poly>& coeffs() const { return coeffs_; }
  double norm() const;

  // s(zeta, -eta).
  BiPoly eta_reflected() const;
  Poly at_eta_zero() const { return (*this)[0]; }
  Complex operator()(Complex zeta, Complex eta) const;

  friend BiPoly operator+(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator-(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);

 private:
  std::vector<Poly> coeffs_;
  static const Poly kZero;
};

// P(zeta, eta) = eta^{2n} + sum_i a_i(zeta) eta^{2n - 2i}, with deg a_i <= 4i.
class CurvePoly {
 public:
  // Throws kInvariantViolation if a.size() != n or a degree bound fails.
  CurvePoly(int n, std::vector<Poly> a);

  int n() const { return n_; }
  const std::vector<Poly>& a() const { return a_; }
  BiPoly as_bipoly() const;

 private:
  int n_;
  std::vector<Poly> a_;
};

// Division by a polynomial monic in eta; exact over the zeta-coefficient
// ring.
BiPoly reduce_mod_monic(const BiPoly& s, const BiPoly& modulus);

// A section represented by its canonical residue mod P (eta-degree < 2n).
class SpectralSection {
 public:
  SpectralSection(BiPoly s, const CurvePoly& curve);
  const BiPoly& s() const { return s_; }

 private:
  BiPoly s_;
};

struct SectionProductResult {
  bool pass = false;
  double residual = 0.0;
  BiPoly reduced;  // s(eta) s(-eta) - 1 mod P
};

// Tests s(zeta, eta) s(zeta, -eta) = 1 mod P coefficientwise; the residual
// is compared against tol * (1 + ||s(eta) s(-eta)||).
SectionProductResult section_product(const SpectralSection& s, const CurvePoly& curve, double tol);
bool section_product_check(const SpectralSection& s, const CurvePoly& curve, double tol);

struct ZeroSectionSample {
  Complex zeta;
  Complex value;        // s(zeta, 0)
  bool on_curve = false;  // P(zeta, 0) = a_n(zeta) vanishes
  bool plus_minus_one = false;
};

struct ZeroSectionReport {
  // Curve points on eta = 0 (roots of a_n), then the requested grid.
  std::vector<ZeroSectionSample> samples;
  // Every on-curve sample is +-1.
  bool on_curve_pm_one = true;
  // Every sample, on the curve or not, is +-1.
  bool all_pm_one = true;
  std::vector<std::string> notes;
};

// Evaluates s(zeta, 0) at the points of the curve on eta = 0 and at the
// given grid, flagging which values are +-1. The product congruence forces
// s(zeta, 0)^2 = 1 exactly where a_n(zeta) = 0.
ZeroSectionReport eval_on_zero_section(const SpectralSection& s, const CurvePoly& curve,
                                       std::span<const Complex> grid, double tol);

struct SbarResult {
  BiPoly sbar;           // eta-degree <= 2n
  double residual_mod_p = 0.0;    // ||(sbar - s^2) mod P||
  double residual_mod_eta = 0.0;  // ||sbar(zeta, 0) - 1||
};

// The unique sbar of eta-degree < 2n + 1 with sbar = s^2 mod P and
// sbar = 1 mod eta. Throws kNotCoprime if a_n vanishes identically, or
// kInvariantViolation if 1 - s(zeta,0)^2 is not divisible by a_n (the
// product congruence fails).
SbarResult build_sbar(const SpectralSection& s, const CurvePoly& curve, const ToleranceContext& tol = {});

// eta -> eta / lambda, renormalised to a monic top term: a_i -> lambda^{2i} a_i.
CurvePoly rescale_curve(const CurvePoly& curve, Complex lambda);

}  // namespace nk
