#pragma once

// Shared generators and independent oracles for the test suites. Nothing
// here calls into the code path it is used to check.

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "nk/liealg.hpp"
#include "nk/poly.hpp"
#include "nk/random.hpp"
#include "nk/spectral.hpp"

namespace nk::testing {

inline Poly random_poly(Rng& rng, int degree, double half_width = 1.0) {
  std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
  for (auto& v : c) v = rng.uniform_box(half_width);
  if (std::abs(c.back()) < 0.1) c.back() += 0.5;
  return Poly(std::move(c));
}

inline Poly random_monic(Rng& rng, int degree, double half_width = 1.0) {
  std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
  for (auto& v : c) v = rng.uniform_box(half_width);
  c.back() = 1.0;
  return Poly(std::move(c));
}

inline Matrix random_matrix(Rng& rng, int k, double half_width = 1.0) {
  Matrix m(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) m(i, j) = rng.uniform_box(half_width);
  return m;
}

// Frobenius companion matrix built directly from the coefficients, used by
// the oracles below.
inline Eigen::MatrixXcd oracle_companion(const Poly& monic_q) {
  const int k = monic_q.degree();
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(k, k);
  for (int i = 1; i < k; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < k; ++i) c(i, k - 1) = -monic_q[i];
  return c;
}

// Roots as eigenvalues of the companion matrix.
inline std::vector<Complex> oracle_roots(const Poly& monic_q) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(oracle_companion(monic_q), false);
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

// Res(q, p) = det p(C_q) for monic q.
inline Complex oracle_resultant(const Poly& monic_q, const Poly& p) {
  const Eigen::MatrixXcd c = oracle_companion(monic_q);
  const int k = monic_q.degree();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(k, k);
  for (int i = p.degree(); i >= 0; --i)
    acc = acc * c + p[i] * Eigen::MatrixXcd::Identity(k, k);
  return acc.determinant();
}

inline double coefficient_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    Complex x = i < a.size() ? a[i] : Complex{};
    Complex y = i < b.size() ? b[i] : Complex{};
    d = std::max(d, std::abs(x - y));
  }
  return d;
}

// A section s = sum_j s_j eta^j (j <= n, deg s_j <= 2(n - j), s_n^2 (-1)^n = 1)
// together with the curve P = s(eta) s(-eta) - 1, which it satisfies by
// construction.
struct PellPair {
  BiPoly s;
  CurvePoly curve;
};

inline PellPair random_pell(Rng& rng, int n, bool unit_at_zero = false) {
  std::vector<Poly> sj;
  for (int j = 0; j <= n; ++j) sj.push_back(random_poly(rng, 2 * (n - j), 0.5));
  sj[static_cast<std::size_t>(n)] = Poly({n % 2 == 0 ? Complex{1.0} : Complex{0.0, 1.0}});
  if (unit_at_zero) sj[0] = Poly({1.0});
  // Expand s(eta) s(-eta) by hand.
  std::vector<Poly> prod(static_cast<std::size_t>(2 * n + 1));
  for (int j = 0; j <= n; ++j)
    for (int l = 0; l <= n; ++l)
      prod[static_cast<std::size_t>(j + l)] =
          prod[static_cast<std::size_t>(j + l)] +
          sj[static_cast<std::size_t>(j)] * sj[static_cast<std::size_t>(l)] * Complex{l % 2 == 0 ? 1.0 : -1.0};
  prod[0] = prod[0] - Poly({1.0});
  std::vector<Poly> a;
  for (int i = 1; i <= n; ++i) a.push_back(prod[static_cast<std::size_t>(2 * n - 2 * i)]);
  return {BiPoly(sj), CurvePoly(n, a)};
}

}  // namespace nk::testing
