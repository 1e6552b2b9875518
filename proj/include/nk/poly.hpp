#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace nk {

using Complex = std::complex<double>;

struct ToleranceContext {
  double eq_tol = 1e-9;
  double trim_tol = 1e-12;

  // Throws kInvalidArgument unless 0 < trim_tol <= eq_tol.
  void validate() const;
};

// Dense univariate polynomial over C, coefficients in ascending degree.
//
// Trailing coefficients whose magnitude is at most trim_tol times the
// largest coefficient are dropped on construction, so the leading
// coefficient is always significant. The zero polynomial has no
// coefficients and degree -1.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Complex> coeffs, double trim_tol = ToleranceContext{}.trim_tol);
  Poly(std::initializer_list<Complex> coeffs);

  static Poly constant(Complex c);
  static Poly monomial(int degree, Complex c = 1.0);
  // Monic polynomial with the given roots.
  static Poly from_roots(std::span<const Complex> roots);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  // Coefficient of z^i; zero beyond the degree.
  Complex operator[](int i) const;
  Complex leading() const { return coeffs_.empty() ? Complex{} : coeffs_.back(); }
  const std::vector<Complex>& coeffs() const { return coeffs_; }

  // Max-magnitude coefficient.
  double norm() const;
  Complex operator()(Complex z) const;

  Poly derivative() const;
  // p(-z).
  Poly reflected() const;
  // p(z^2).
  Poly composed_with_square() const;
  Poly times_monomial(int shift) const;
  Poly monic() const;
  // Drops trailing coefficients with magnitude <= abs_threshold.
  Poly trimmed(double abs_threshold) const;
  bool is_monic(double tol) const;

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(Complex c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, Complex c) { return a *= c; }
  friend Poly operator*(Complex c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<Complex> coeffs_;
};

// Max-magnitude coefficient of a - b.
double distance(const Poly& a, const Poly& b);

struct DivMod {
  Poly quotient;
  Poly remainder;
};

// Long division; remainder has degree < deg b. Throws kDivisionByZero.
DivMod poly_divmod(const Poly& a, const Poly& b);
Poly poly_mod(const Poly& a, const Poly& b);

// h with deg h < deg q and p h = 1 mod q, by the extended Euclidean
// algorithm followed by one Newton refinement step. Throws kNotCoprime.
Poly poly_modinv(const Poly& p, const Poly& q, const ToleranceContext& tol = {});

// Res(q, p) from the Sylvester determinant. For monic q this is the product
// of p over the roots of q counted with multiplicity.
Complex poly_resultant(const Poly& q, const Poly& p);

// Aberth-Ehrlich simultaneous iteration. Starting points lie on a circle
// sized from the coefficient bound, with phases jittered by `seed`. Roots
// are returned sorted by (real, imag). Throws kNoConvergence.
std::vector<Complex> poly_roots(const Poly& q, std::uint64_t seed = 0);

struct EvenOddParts {
  Poly even;  // x with p(u) = x(u^2) + u y(u^2)
  Poly odd;   // y
};

EvenOddParts even_odd_split(const Poly& p);
// x(u^2) + u y(u^2).
Poly even_odd_join(const Poly& even, const Poly& odd);

struct InterpolationNode {
  Complex node;
  Complex value;
};

// Newton divided differences expanded into the monomial basis.
// Throws kCoincidentNodes when two nodes are closer than eq_tol.
Poly poly_interpolate(std::span<const InterpolationNode> points,
                      const ToleranceContext& tol = {});

}  // namespace nk
