#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nk/liealg.hpp"
#include "nk/poly.hpp"

namespace nk {

// Based rational map p(z)/q(z) of degree k: q monic of degree k,
// deg p <= k - 1, and Res(q, p) nonzero.
class BasedRationalMap {
 public:
  // Throws kInvariantViolation if the invariants fail.
  BasedRationalMap(Poly p, Poly q, const ToleranceContext& tol = {});

  const Poly& p() const { return p_; }
  const Poly& q() const { return q_; }
  int k() const { return q_.degree(); }
  Complex operator()(Complex z) const { return p_(z) / q_(z); }

 private:
  Poly p_;
  Poly q_;
};

struct MembershipCheck {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct MembershipReport {
  bool member = false;
  std::vector<MembershipCheck> checks;
};

// Sum of poles zero and total phase Res(q, p) equal to one.
MembershipReport strongly_centred_report(const BasedRationalMap& m, double tol);
bool is_strongly_centred(const BasedRationalMap& m, double tol);

// Parity of q (q(z) = q~(z^2), or z q~(z^2) with p(0) = 1 for odd k) and
// the congruence p(z) p(-z) = 1 mod q. The congruence residual is compared
// against tol * (1 + ||p(z) p(-z)||); parity and normalization checks are
// absolute.
MembershipReport nk_membership_report(const BasedRationalMap& m, double tol);
bool is_Nk_member(const BasedRationalMap& m, double tol);

// The same reports for a raw pair (p, q). A pair with a common root is
// reported as a non-member through a failing "coprime" check; other
// invariant failures still throw.
MembershipReport nk_membership_report(const Poly& p, const Poly& q, double tol);
MembershipReport strongly_centred_report(const Poly& p, const Poly& q, double tol);
bool is_Nk_member(const Poly& p, const Poly& q, double tol);

struct NkSample {
  BasedRationalMap map;
  // The real parameters drawn: (Re, Im) of w_j^2 and of c_j for each j.
  std::vector<double> parameters;
};

// Draws a point of the distinct-pole stratum of N_k: floor(k/2) squared
// poles w_j^2 and nonzero values c_j = p(w_j) = 1 / p(-w_j).
NkSample sample_Nk(int k, std::uint64_t seed);

// Companion matrix with unit subdiagonal and last column (s_k, ..., s_1)
// read top to bottom; its characteristic polynomial is q.
Matrix companion_S(const Poly& q);

struct CompanionData {
  Matrix s;
  Matrix u;

  // Throws kInvariantViolation unless s has the companion sparsity
  // pattern, and kNotCommuting unless ||su - us|| < tol (1 + ||u||).
  void validate(double tol = ToleranceContext{}.eq_tol) const;
};

// det(zI - A) together with tr(B adj(zI - A)), both by the
// Faddeev-LeVerrier recurrence.
struct FaddeevLeVerrier {
  Poly characteristic;
  std::vector<Matrix> adjugate_coeffs;  // adj(zI - A) = sum_m M_m z^{k-m}, m = 1..k
};
FaddeevLeVerrier faddeev_leverrier(const Matrix& a);

// The rational map tr(u (z - S)^{-1}).
BasedRationalMap rational_map_from_Su(const CompanionData& c, const ToleranceContext& tol = {});

}  // namespace nk
