#pragma once

#include <string_view>
#include <vector>

#include "nk/moduli.hpp"
#include "nk/poly.hpp"

namespace nk {

enum class Surface {
  kD0,  // x^2 - z y^2 - y = 0
  kD1,  // x^2 - z y^2 = 1
};

std::string_view to_string(Surface s);

// A point of the transverse Hilbert scheme of n points on a D-surface:
// polynomials (x, y, r) with r monic of degree n, deg x, deg y <= n - 1 and
// the surface equation holding modulo r.
template <Surface S>
class TransversePoint {
 public:
  // Throws kInvariantViolation if the invariants fail.
  TransversePoint(Poly x, Poly y, Poly r, const ToleranceContext& tol = {});

  static constexpr Surface surface() { return S; }
  const Poly& x() const { return x_; }
  const Poly& y() const { return y_; }
  const Poly& r() const { return r_; }
  int n() const { return r_.degree(); }

  // The surface equation reduced mod r.
  Poly equation_mod_r() const;
  // ||equation mod r|| / (1 + ||equation||).
  double relative_residual() const;

 private:
  Poly x_, y_, r_;
};

using D1Point = TransversePoint<Surface::kD1>;
using D0Point = TransversePoint<Surface::kD0>;

extern template class TransversePoint<Surface::kD1>;
extern template class TransversePoint<Surface::kD0>;

// p(u) = x(u^2) + u y(u^2), q(u) = r(u^2).
BasedRationalMap d1_to_map(const D1Point& d);
D1Point map_to_d1(const BasedRationalMap& m, const ToleranceContext& tol = {});

// p(u) = 1 + 2u x(u^2) + 2u^2 y(u^2), q(u) = u r(u^2). The factor 2 maps
// x^2 - z y^2 - y = 0 onto the relation p(u) p(-u) = 1 mod q(u).
BasedRationalMap d0_to_map(const D0Point& d);
D0Point map_to_d0(const BasedRationalMap& m, const ToleranceContext& tol = {});

// (p, q) -> (-p, q), i.e. (x, y) -> (-x, -y) on the D1 side.
BasedRationalMap z2_act(const BasedRationalMap& m, const ToleranceContext& tol = {});
D1Point z2_act(const D1Point& d);

// (x, y, r) -> (x y mod r, y^2 mod r, r).
D0Point quotient_map(const D1Point& d);

struct Fiber {
  // Ordered lexicographically in the sign choices at the roots of r (sorted
  // by real then imaginary part), '+' (principal square root) first.
  std::vector<D1Point> points;
  std::vector<Complex> roots;
  // Pairs (i, j) with points[j] = z2_act(points[i]).
  std::vector<std::pair<int, int>> orbits;
};

// All preimages of target under quotient_map. Requires r to have pairwise
// distinct nonzero roots; otherwise throws kDegenerateStratum.
Fiber fiber(const D0Point& target, const ToleranceContext& tol = {});

// d0_to_map(quotient_map(map_to_d1(m))).
BasedRationalMap cover_map_on_maps(const BasedRationalMap& m, const ToleranceContext& tol = {});

// The literal numerator p(z)^2 mod z q(z) set against the surface route.
struct CoverRecipeComparison {
  Poly literal;   // p^2 mod z q
  Poly surface;   // numerator of cover_map_on_maps
  double difference_mod_q = 0.0;   // ||(literal - surface) mod q||
  Complex literal_at_zero;         // p(0)^2
  Complex surface_at_zero;         // 1
  double coefficient_difference = 0.0;
};
CoverRecipeComparison compare_cover_recipes(const BasedRationalMap& m,
                                            const ToleranceContext& tol = {});

}  // namespace nk
