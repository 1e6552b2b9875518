#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "nk/error.hpp"
#include "nk/poly.hpp"
#include "support.hpp"

using namespace nk;
using nk::testing::random_monic;
using nk::testing::random_poly;

namespace {

const Poly kZ{0.0, 1.0};

bool throws_code(ErrorCode code, auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace

TEST_CASE("construction trims negligible leading coefficients") {
  Poly p({1.0, 2.0, 1e-14});
  CHECK(p.degree() == 1);
  CHECK(Poly({0.0, 0.0}).is_zero());
  CHECK(Poly{}.degree() == -1);
  CHECK_THROWS_AS(Poly({1.0, Complex{NAN, 0.0}}), Error);
}

TEST_CASE("divmod examples") {
  SUBCASE("difference of squares") {
    auto [q, r] = poly_divmod(Poly{-1.0, 0.0, 1.0}, Poly{-1.0, 1.0});
    CHECK(distance(q, Poly{1.0, 1.0}) == 0.0);
    CHECK(r.is_zero());
  }
  SUBCASE("identity") {
    auto [q, r] = poly_divmod(Poly::monomial(3), Poly::monomial(3));
    CHECK(distance(q, Poly::constant(1.0)) == 0.0);
    CHECK(r.is_zero());
  }
  SUBCASE("z^3 + 2z + 1 by z^2 + 1") {
    const Poly a{1.0, 2.0, 0.0, 1.0};
    const Poly b{1.0, 0.0, 1.0};
    auto [q, r] = poly_divmod(a, b);
    // Re-multiplication oracle.
    CHECK(distance(b * q + r, a) < 1e-15);
    CHECK(distance(q, kZ) == 0.0);
    CHECK(distance(r, Poly{1.0, 1.0}) == 0.0);
  }
  CHECK(throws_code(ErrorCode::kDivisionByZero, [] { poly_divmod(kZ, Poly{}); }));
}

TEST_CASE("divmod roundtrip property") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int da = static_cast<int>(rng.next() % 13);
    const int db = 1 + static_cast<int>(rng.next() % 12);
    const Poly a = random_poly(rng, da);
    const Poly b = random_poly(rng, db);
    auto [q, r] = poly_divmod(a, b);
    CHECK(r.degree() < b.degree());
    CHECK(distance(b * q + r, a) < 1e-9 * (1.0 + a.norm()));
  }
}

TEST_CASE("modular inverse examples") {
  CHECK(distance(poly_modinv(Poly::constant(1.0), Poly{-1.0, 0.0, 1.0}), Poly::constant(1.0)) <
        1e-15);
  const Poly q{-2.0, 0.0, 1.0};
  const Poly h = poly_modinv(kZ, q);
  CHECK(distance(h, Poly{0.0, 0.5}) < 1e-15);
  // z (z/2) = (z^2 - 2)/2 + 1.
  CHECK(distance(poly_mod(kZ * h, q), Poly::constant(1.0)) < 1e-15);
  CHECK(throws_code(ErrorCode::kNotCoprime, [] { poly_modinv(kZ, Poly::monomial(2)); }));
}

TEST_CASE("modular inverse property") {
  Rng rng(12);
  int tested = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Poly q = random_monic(rng, 1 + static_cast<int>(rng.next() % 10));
    const Poly p = random_poly(rng, static_cast<int>(rng.next() % 10));
    if (std::abs(poly_resultant(q, p)) <= 1e-6) continue;
    ++tested;
    const Poly h = poly_modinv(p, q);
    CHECK(h.degree() < q.degree());
    CHECK(distance(poly_mod(p * h, q), Poly::constant(1.0)) < 1e-9);
  }
  CHECK(tested > 150);
}

TEST_CASE("resultant examples") {
  const Poly q{-1.0, 0.0, 1.0};
  CHECK(std::abs(poly_resultant(q, Poly::constant(1.0)) - 1.0) < 1e-15);
  // Product over roots 1 and -1 of p(z) = z.
  CHECK(std::abs(poly_resultant(q, kZ) - (-1.0)) < 1e-14);
  CHECK(std::abs(nk::testing::oracle_resultant(q, kZ) - (-1.0)) < 1e-14);
  // Repeated root: p(0)^2.
  CHECK(std::abs(poly_resultant(Poly::monomial(2), Poly{1.0, 1.0}) - 1.0) < 1e-14);
  CHECK(poly_resultant(q, Poly{}) == Complex{});
}

TEST_CASE("resultant agrees with products over roots") {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 1 + static_cast<int>(rng.next() % 8);
    // Well-separated roots on a jittered circle.
    std::vector<Complex> roots;
    for (int j = 0; j < k; ++j)
      roots.push_back(std::polar(1.0 + 0.2 * rng.unit(), 2.0 * M_PI * j / k + 0.3 * rng.unit()));
    const Poly q = Poly::from_roots(roots);
    const Poly p = random_poly(rng, static_cast<int>(rng.next() % 7));
    Complex product = 1.0;
    for (const auto& r : roots) product *= p(r);
    CHECK(std::abs(poly_resultant(q, p) - product) < 1e-7);
    CHECK(std::abs(poly_resultant(q, p) - nk::testing::oracle_resultant(q, p)) < 1e-7);
  }
}

TEST_CASE("roots examples") {
  auto near = [](const std::vector<Complex>& got, std::vector<Complex> want) {
    for (const auto& w : want) {
      double best = INFINITY;
      for (const auto& g : got) best = std::min(best, std::abs(g - w));
      if (best > 1e-12) return false;
    }
    return got.size() == want.size();
  };
  CHECK(near(poly_roots(Poly{-1.0, 0.0, 1.0}), {1.0, -1.0}));
  CHECK(near(poly_roots(Poly{1.0, 0.0, 1.0}), {Complex{0, 1}, Complex{0, -1}}));
  CHECK(near(poly_roots(Poly{0.0, -1.0, 0.0, 1.0}), {0.0, 1.0, -1.0}));
  CHECK_THROWS_AS(poly_roots(Poly::constant(2.0)), Error);
}

TEST_CASE("roots reconstruct the polynomial up to degree 20") {
  Rng rng(14);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng.next() % 20);
    const Poly q = random_monic(rng, n);
    const auto roots = poly_roots(q, trial);
    CHECK(distance(Poly::from_roots(roots), q) < 1e-8 * q.norm());
    // Independent eigenvalue oracle.
    for (const auto& r : nk::testing::oracle_roots(q)) {
      double best = INFINITY;
      for (const auto& g : roots) best = std::min(best, std::abs(g - r));
      CHECK(best < 1e-6);
    }
  }
}

TEST_CASE("roots are deterministic for a fixed seed") {
  Rng rng(15);
  const Poly q = random_monic(rng, 9);
  CHECK(poly_roots(q, 3) == poly_roots(q, 3));
}

TEST_CASE("roots of a repeated factor") {
  const Poly q = Poly::from_roots(std::vector<Complex>{0.5, 0.5, -1.0});
  const auto roots = poly_roots(q);
  // A double root is only determined to about sqrt(eps).
  CHECK(distance(Poly::from_roots(roots), q) < 1e-7);
  CHECK(std::abs(roots[1] - 0.5) < 1e-7);
}

TEST_CASE("even/odd split") {
  auto [x1, y1] = even_odd_split(Poly{1.0, 1.0, 1.0});
  CHECK(x1 == Poly({1.0, 1.0}));
  CHECK(y1 == Poly::constant(1.0));
  auto [x2, y2] = even_odd_split(Poly::monomial(3));
  CHECK(x2.is_zero());
  CHECK(y2 == kZ);
  auto [x3, y3] = even_odd_split(Poly::constant(3.0));
  CHECK(x3 == Poly::constant(3.0));
  CHECK(y3.is_zero());

  Rng rng(16);
  for (int trial = 0; trial < 100; ++trial) {
    const Poly p = random_poly(rng, static_cast<int>(rng.next() % 15));
    auto [x, y] = even_odd_split(p);
    CHECK(even_odd_join(x, y) == p);
    const Complex u = rng.uniform_box(1.0);
    CHECK(std::abs(x(u * u) + u * y(u * u) - p(u)) < 1e-12);
  }
}

TEST_CASE("interpolation examples") {
  std::vector<InterpolationNode> a{{1.0, 1.0}, {-1.0, 1.0}};
  CHECK(distance(poly_interpolate(a), Poly::constant(1.0)) < 1e-15);
  std::vector<InterpolationNode> b{{0.0, 1.0}, {1.0, 2.0}};
  CHECK(distance(poly_interpolate(b), Poly{1.0, 1.0}) < 1e-15);
  // 2x2 system: a0 + a1 = 2, a0 - a1 = 1/2.
  std::vector<InterpolationNode> c{{1.0, 2.0}, {-1.0, 0.5}};
  Eigen::Matrix2d v;
  v << 1, 1, 1, -1;
  Eigen::Vector2d sol = v.lu().solve(Eigen::Vector2d(2.0, 0.5));
  CHECK(sol(0) == doctest::Approx(1.25));
  CHECK(sol(1) == doctest::Approx(0.75));
  CHECK(distance(poly_interpolate(c), Poly{1.25, 0.75}) < 1e-15);

  std::vector<InterpolationNode> bad{{1.0, 1.0}, {1.0, 2.0}};
  CHECK(throws_code(ErrorCode::kCoincidentNodes, [&] { poly_interpolate(bad); }));
}

TEST_CASE("interpolation residual at nodes") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.next() % 10);
    std::vector<InterpolationNode> pts;
    for (int j = 0; j < n; ++j)
      pts.push_back({std::polar(1.0, 2.0 * M_PI * (j + 0.3 * rng.unit()) / n), rng.uniform_box(1.0)});
    const Poly p = poly_interpolate(pts);
    CHECK(p.degree() < n);
    for (const auto& pt : pts) CHECK(std::abs(p(pt.node) - pt.value) < 1e-9);
  }
}

TEST_CASE("tolerance context validation") {
  CHECK_NOTHROW(ToleranceContext{}.validate());
  CHECK_THROWS_AS((ToleranceContext{1e-12, 1e-9}.validate()), Error);
  CHECK_THROWS_AS((ToleranceContext{1e-9, 0.0}.validate()), Error);
}
