#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "nk/error.hpp"
#include "nk/moduli.hpp"
#include "support.hpp"

using namespace nk;
using nk::testing::oracle_resultant;
using nk::testing::random_monic;

namespace {

const double kSqrt2 = std::sqrt(2.0);

BasedRationalMap make(std::vector<Complex> p, std::vector<Complex> q) {
  return BasedRationalMap(Poly(std::move(p)), Poly(std::move(q)));
}

// det(zI - A) by LU, independent of the recurrence under test.
Complex oracle_charpoly(const Matrix& a, Complex z) {
  const int k = static_cast<int>(a.rows());
  return (z * Matrix::Identity(k, k) - a).determinant();
}

// tr(u (zI - S)^{-1}) by direct inversion at a numeric point.
Complex oracle_trace_resolvent(const Matrix& s, const Matrix& u, Complex z) {
  const int k = static_cast<int>(s.rows());
  return (u * (z * Matrix::Identity(k, k) - s).inverse()).trace();
}

const std::vector<Complex> kProbe{{0.3, 0.7}, {-1.1, 0.4}, {2.0, -0.5}, {0.05, -1.9}};

}  // namespace

TEST_CASE("based rational map invariants") {
  CHECK_NOTHROW(make({1.0}, {-1.0, 0.0, 1.0}));
  CHECK_THROWS_AS(make({1.0}, {-1.0, 0.0, 2.0}), Error);               // not monic
  CHECK_THROWS_AS(make({0.0, 0.0, 1.0}, {-1.0, 0.0, 1.0}), Error);     // deg p = k
  CHECK_THROWS_AS(make({-1.0, 1.0}, {-1.0, 0.0, 1.0}), Error);         // common root 1
  CHECK_THROWS_AS(make({0.0}, {-1.0, 0.0, 1.0}), Error);               // p = 0
}

TEST_CASE("strongly centred examples") {
  CHECK(is_strongly_centred(make({1.0}, {-1.0, 0.0, 1.0}), 1e-10));
  CHECK_FALSE(is_strongly_centred(make({1.0}, {1.0, -2.0, 1.0}), 1e-10));
  const auto m = make({0.0, 1.0}, {-1.0, 0.0, 1.0});
  CHECK(std::abs(oracle_resultant(m.q(), m.p()) + 1.0) < 1e-14);
  CHECK_FALSE(is_strongly_centred(m, 1e-10));
}

TEST_CASE("N_k membership examples") {
  CHECK(is_Nk_member(make({kSqrt2, 1.0}, {-1.0, 0.0, 1.0}), 1e-10));
  CHECK(is_Nk_member(make({1.0}, {0.0, -1.0, 0.0, 1.0}), 1e-10));
  // p(1) p(-1) = (1 + sqrt2)(sqrt2 - 1) = 1 and p(0) = 1.
  const auto m = make({1.0, 1.0, kSqrt2 - 1.0}, {0.0, -1.0, 0.0, 1.0});
  CHECK(std::abs(m.p()(1.0) * m.p()(-1.0) - 1.0) < 1e-15);
  CHECK(is_Nk_member(m, 1e-10));
  // p = z + 1 shares the root -1 with q, so (p, q) is not a degree 2 map.
  CHECK_THROWS_AS(make({1.0, 1.0}, {-1.0, 0.0, 1.0}), Error);
  CHECK_FALSE(is_Nk_member(Poly({1.0, 1.0}), Poly({-1.0, 0.0, 1.0}), 1e-10));
  CHECK(nk_membership_report(Poly({1.0, 1.0}), Poly({-1.0, 0.0, 1.0}), 1e-10).checks[0].name ==
        "coprime");
  // Odd k with p(0) != 1 and an odd q.
  CHECK_FALSE(is_Nk_member(make({2.0}, {0.0, -1.0, 0.0, 1.0}), 1e-10));
  CHECK_FALSE(is_Nk_member(make({1.0}, {-1.0, 0.5, 1.0}), 1e-10));
  CHECK_FALSE(is_Nk_member(make({1.0}, {1.0, -1.0, 0.0, 1.0}), 1e-10));
}

TEST_CASE("closure points pass the congruence test") {
  // p = 1, q = z^2 is the double pole at 0; p(z) p(-z) = 1 identically.
  CHECK(is_Nk_member(make({1.0}, {0.0, 0.0, 1.0}), 1e-10));
  // q = (z^2 - 1)^2 = r(z^2) with r = (w - 1)^2. Solve x^2 - w y^2 = 1 mod
  // (w - 1)^2 with x = x0 + x1 (w - 1), y = 1: x0 = sqrt2 and
  // 2 x0 x1 - 1 = 0.
  const Poly x({kSqrt2 - 1.0 / (2.0 * kSqrt2), 1.0 / (2.0 * kSqrt2)});
  const Poly y({1.0});
  const Poly p = x.composed_with_square() + Poly::monomial(1) * y.composed_with_square();
  const Poly q({1.0, 0.0, -2.0, 0.0, 1.0});
  const BasedRationalMap m(p, q);
  CHECK(is_Nk_member(m, 1e-10));
  CHECK(is_strongly_centred(m, 1e-10));
}

TEST_CASE("sample_Nk examples") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto s = sample_Nk(2, seed);
    CHECK(s.map.k() == 2);
    CHECK(std::abs(s.map.q()[1]) < 1e-14);
    CHECK(is_Nk_member(s.map, 1e-8));
  }
  const auto s5 = sample_Nk(5, 7);
  CHECK(s5.map.k() == 5);
  CHECK(std::abs(s5.map.p()(0.0) - 1.0) < 1e-10);
  CHECK(is_Nk_member(s5.map, 1e-8));
  CHECK_THROWS_AS(sample_Nk(1, 0), Error);
}

TEST_CASE("sample_Nk parameter count and determinism") {
  for (int k = 2; k <= 9; ++k) {
    const auto a = sample_Nk(k, 99);
    const auto b = sample_Nk(k, 99);
    CHECK(a.parameters.size() == static_cast<std::size_t>(4 * (k / 2)));
    CHECK(a.parameters == b.parameters);
    CHECK(a.map.p().coeffs() == b.map.p().coeffs());
    CHECK(a.map.q().coeffs() == b.map.q().coeffs());
  }
}

TEST_CASE("samples lie in N_k and in M_k^0") {
  int count = 0;
  for (int k = 2; k <= 9; ++k)
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      CAPTURE(k);
      CAPTURE(seed);
      const auto s = sample_Nk(k, seed);
      CHECK(is_Nk_member(s.map, 1e-8));
      CHECK(is_strongly_centred(s.map, 1e-8));
      CHECK(std::abs(oracle_resultant(s.map.q(), s.map.p()) - 1.0) < 1e-8);
      ++count;
    }
  CHECK(count == 200);
}

TEST_CASE("membership is sharp under perturbation") {
  Rng rng(31);
  for (int k = 2; k <= 9; ++k)
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto s = sample_Nk(k, seed);
      auto coeffs = s.map.p().coeffs();
      coeffs.resize(static_cast<std::size_t>(k), Complex{});
      const auto i = static_cast<std::size_t>(rng.next() % static_cast<std::uint64_t>(k));
      coeffs[i] += 1e-3 * std::polar(1.0, 2.0 * M_PI * rng.unit());
      const BasedRationalMap perturbed(Poly(coeffs), s.map.q());
      CAPTURE(k);
      CAPTURE(i);
      CHECK_FALSE(is_Nk_member(perturbed, 1e-8));
    }
}

TEST_CASE("companion_S examples") {
  const Matrix s0 = companion_S(Poly({0.0, 0.0, 1.0}));
  CHECK(s0(1, 0) == Complex{1.0});
  CHECK(s0(0, 0) == Complex{});
  CHECK(s0(0, 1) == Complex{});
  CHECK(s0(1, 1) == Complex{});
  for (const Poly& q : {Poly({-1.0, 0.0, 1.0}), Poly({0.0, -1.0, 0.0, 1.0})}) {
    const Matrix s = companion_S(q);
    for (Complex z : kProbe) CHECK(std::abs(oracle_charpoly(s, z) - q(z)) < 1e-12);
  }
  CHECK_THROWS_AS(companion_S(Poly({1.0, 2.0})), Error);
}

TEST_CASE("companion_S characteristic polynomial roundtrip") {
  Rng rng(32);
  for (int k = 1; k <= 10; ++k)
    for (int trial = 0; trial < 10; ++trial) {
      const Poly q = random_monic(rng, k);
      const Matrix s = companion_S(q);
      CHECK(distance(faddeev_leverrier(s).characteristic, q) < 1e-9);
      for (Complex z : kProbe)
        CHECK(std::abs(oracle_charpoly(s, z) - q(z)) < 1e-9 * (1.0 + std::abs(q(z))));
    }
}

TEST_CASE("rational_map_from_Su examples") {
  Matrix s(2, 2);
  s << 0.0, 1.0, 1.0, 0.0;
  {
    const auto m = rational_map_from_Su({s, Matrix::Identity(2, 2)});
    CHECK(distance(m.q(), Poly({-1.0, 0.0, 1.0})) < 1e-14);
    CHECK(distance(m.p(), Poly({0.0, 2.0})) < 1e-14);
    for (Complex z : kProbe)
      CHECK(std::abs(m(z) - oracle_trace_resolvent(s, Matrix::Identity(2, 2), z)) < 1e-12);
  }
  {
    const auto m = rational_map_from_Su({s, s});
    CHECK(distance(m.p(), Poly({2.0})) < 1e-14);
    for (Complex z : kProbe) CHECK(std::abs(m(z) - oracle_trace_resolvent(s, s, z)) < 1e-12);
  }
  Matrix u(2, 2);
  u << 1.0, 0.0, 0.0, 2.0;
  CHECK_THROWS_AS(rational_map_from_Su({s, u}), Error);
  Matrix not_companion = s;
  not_companion(0, 0) = 1.0;
  CHECK_THROWS_AS(rational_map_from_Su({not_companion, Matrix::Identity(2, 2)}), Error);
}

TEST_CASE("rational_map_from_Su agrees with the resolvent for polynomial u") {
  Rng rng(33);
  for (int k = 2; k <= 8; ++k)
    for (int trial = 0; trial < 5; ++trial) {
      const Poly q = Poly::from_roots([&] {
        std::vector<Complex> r;
        for (int i = 0; i < k; ++i) r.push_back(rng.uniform_box(1.5));
        return r;
      }());
      const Matrix s = companion_S(q);
      // u = h(S) commutes with S.
      const Poly h = nk::testing::random_poly(rng, k - 1);
      Matrix u = Matrix::Zero(k, k);
      for (int i = h.degree(); i >= 0; --i) u = u * s + h[i] * Matrix::Identity(k, k);
      const auto m = rational_map_from_Su({s, u});
      CHECK(distance(m.q(), q) < 1e-9);
      for (Complex z : kProbe) {
        const Complex expected = oracle_trace_resolvent(s, u, z);
        CHECK(std::abs(m(z) - expected) < 1e-8 * (1.0 + std::abs(expected)));
      }
    }
}

TEST_CASE("u = identity gives p = q'") {
  Rng rng(34);
  for (int k = 1; k <= 10; ++k)
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Complex> roots;
      for (int i = 0; i < k; ++i) roots.push_back(std::polar(1.0 + 0.1 * i, 2.0 * M_PI * rng.unit()));
      const Poly q = Poly::from_roots(roots);
      const auto m = rational_map_from_Su({companion_S(q), Matrix::Identity(k, k)});
      // Oracle: term-by-term derivative of the coefficient list.
      std::vector<Complex> dq;
      for (int i = 1; i <= k; ++i) dq.push_back(static_cast<double>(i) * q[i]);
      CHECK(nk::testing::coefficient_distance(m.p().coeffs(), dq) < 1e-8);
    }
}
