#include "nk/hilb.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nk/error.hpp"

namespace nk {

std::string_view to_string(Surface s) { return s == Surface::kD0 ? "D0" : "D1"; }

namespace {

const Poly kZ{0.0, 1.0};

template <Surface S>
Poly surface_equation(const Poly& x, const Poly& y) {
  Poly eq = x * x - kZ * y * y;
  if constexpr (S == Surface::kD1) {
    return eq - Poly::constant(1.0);
  } else {
    return eq - y;
  }
}

template <Surface S>
double surface_scale(const Poly& x, const Poly& y) {
  double s = 1.0 + (x * x).norm() + (kZ * y * y).norm();
  if constexpr (S == Surface::kD0) s += y.norm();
  return s;
}

}  // namespace

template <Surface S>
TransversePoint<S>::TransversePoint(Poly x, Poly y, Poly r, const ToleranceContext& tol)
    : x_(std::move(x)), y_(std::move(y)), r_(std::move(r)) {
  std::ostringstream os;
  if (r_.degree() < 0 || !r_.is_monic(tol.eq_tol)) {
    os << "deg r = " << r_.degree();
    throw Error(ErrorCode::kInvariantViolation, "r must be monic", os.str());
  }
  const int n = r_.degree();
  if (x_.degree() > n - 1 || y_.degree() > n - 1) {
    os << "deg x = " << x_.degree() << ", deg y = " << y_.degree() << ", n = " << n;
    throw Error(ErrorCode::kInvariantViolation, "x and y must have degree < deg r", os.str());
  }
  const double residual = relative_residual();
  if (!(residual < tol.eq_tol)) {
    os << to_string(S) << " relative residual " << residual;
    throw Error(ErrorCode::kInvariantViolation, "surface equation fails modulo r", os.str());
  }
}

template <Surface S>
Poly TransversePoint<S>::equation_mod_r() const {
  return poly_mod(surface_equation<S>(x_, y_), r_);
}

template <Surface S>
double TransversePoint<S>::relative_residual() const {
  return equation_mod_r().norm() / surface_scale<S>(x_, y_);
}

template class TransversePoint<Surface::kD1>;
template class TransversePoint<Surface::kD0>;

BasedRationalMap d1_to_map(const D1Point& d) {
  return BasedRationalMap(even_odd_join(d.x(), d.y()), d.r().composed_with_square());
}

namespace {

// r with q(u) = r(u^2), after checking the odd coefficients vanish.
Poly even_root(const Poly& q, double tol, const char* what) {
  auto [even, odd] = even_odd_split(q);
  if (odd.norm() >= tol) {
    std::ostringstream os;
    os << "odd part norm " << odd.norm();
    throw Error(ErrorCode::kInvalidArgument, what, os.str());
  }
  return even;
}

void require_member(const BasedRationalMap& m, const ToleranceContext& tol) {
  auto report = nk_membership_report(m, tol.eq_tol);
  if (!report.member) {
    for (const auto& c : report.checks)
      if (!c.pass) {
        std::ostringstream os;
        os << c.name << " residual " << c.residual;
        throw Error(ErrorCode::kInvalidArgument, "rational map is not in N_k", os.str());
      }
  }
}

}  // namespace

D1Point map_to_d1(const BasedRationalMap& m, const ToleranceContext& tol) {
  if (m.k() % 2 != 0) throw Error(ErrorCode::kInvalidArgument, "map_to_d1 needs even k");
  Poly r = even_root(m.q(), tol.eq_tol, "denominator is not even");
  require_member(m, tol);
  auto [x, y] = even_odd_split(m.p());
  return D1Point(std::move(x), std::move(y), std::move(r), tol);
}

BasedRationalMap d0_to_map(const D0Point& d) {
  Poly f = even_odd_join(d.x() * 2.0, d.y() * 2.0);
  Poly p = Poly::constant(1.0) + f.times_monomial(1);
  return BasedRationalMap(std::move(p), d.r().composed_with_square().times_monomial(1));
}

D0Point map_to_d0(const BasedRationalMap& m, const ToleranceContext& tol) {
  if (m.k() % 2 != 1) throw Error(ErrorCode::kInvalidArgument, "map_to_d0 needs odd k");
  if (std::abs(m.q()[0]) >= tol.eq_tol)
    throw Error(ErrorCode::kInvalidArgument, "denominator does not vanish at 0");
  const Complex p0 = m.p()(0.0);
  if (std::abs(p0 - 1.0) >= tol.eq_tol) {
    std::ostringstream os;
    os << "p(0) = " << p0;
    throw Error(ErrorCode::kInvalidArgument, "numerator is not normalized by p(0) = 1", os.str());
  }
  // q(u) / u.
  std::vector<Complex> qc(m.q().coeffs().begin() + 1, m.q().coeffs().end());
  Poly r = even_root(Poly(std::move(qc)), tol.eq_tol, "q(z)/z is not even");
  require_member(m, tol);
  const Poly p = m.p() * (1.0 / p0);
  std::vector<Complex> fc;
  if (p.degree() >= 1) fc.assign(p.coeffs().begin() + 1, p.coeffs().end());
  auto [a, b] = even_odd_split(Poly(std::move(fc)));
  return D0Point(a * 0.5, b * 0.5, std::move(r), tol);
}

BasedRationalMap z2_act(const BasedRationalMap& m, const ToleranceContext& tol) {
  if (m.k() % 2 != 0) throw Error(ErrorCode::kInvalidArgument, "z2_act needs even k");
  return BasedRationalMap(-m.p(), m.q(), tol);
}

D1Point z2_act(const D1Point& d) { return D1Point(-d.x(), -d.y(), d.r()); }

D0Point quotient_map(const D1Point& d) {
  Poly big_x = poly_mod(d.x() * d.y(), d.r());
  Poly big_y = poly_mod(d.y() * d.y(), d.r());
  return D0Point(std::move(big_x), std::move(big_y), d.r());
}

Fiber fiber(const D0Point& target, const ToleranceContext& tol) {
  const int n = target.n();
  Fiber out;
  if (n == 0) {
    out.points.push_back(D1Point(Poly{}, Poly{}, target.r(), tol));
    return out;
  }
  out.roots = poly_roots(target.r());
  const auto& roots = out.roots;
  const double scale = 1.0 + target.r().norm();
  for (int i = 0; i < n; ++i) {
    if (std::abs(roots[static_cast<std::size_t>(i)]) <= tol.eq_tol * scale) {
      std::ostringstream os;
      os << "root " << roots[static_cast<std::size_t>(i)];
      throw Error(ErrorCode::kDegenerateStratum, "r has a zero root", os.str());
    }
    for (int j = i + 1; j < n; ++j)
      if (std::abs(roots[static_cast<std::size_t>(i)] - roots[static_cast<std::size_t>(j)]) <=
          tol.eq_tol * scale) {
        std::ostringstream os;
        os << "roots " << roots[static_cast<std::size_t>(i)] << " and "
           << roots[static_cast<std::size_t>(j)];
        throw Error(ErrorCode::kDegenerateStratum, "r has a repeated root", os.str());
      }
  }

  // Per root: the '+' choice (x_j, y_j); the '-' choice is its negative.
  std::vector<Complex> base_x(static_cast<std::size_t>(n)), base_y(static_cast<std::size_t>(n));
  const double value_scale = 1.0 + target.x().norm() + target.y().norm();
  for (std::size_t j = 0; j < roots.size(); ++j) {
    const Complex c = roots[j];
    const Complex yy = target.y()(c);
    if (std::abs(yy) <= tol.eq_tol * value_scale) {
      base_x[j] = 1.0;
      base_y[j] = 0.0;
    } else {
      base_y[j] = std::sqrt(yy);
      base_x[j] = target.x()(c) / base_y[j];
    }
  }

  const std::size_t count = std::size_t{1} << n;
  for (std::size_t choice = 0; choice < count; ++choice) {
    std::vector<InterpolationNode> xs, ys;
    for (int j = 0; j < n; ++j) {
      // Root 0 is the most significant sign bit.
      const bool minus = (choice >> (n - 1 - j)) & 1U;
      const double sgn = minus ? -1.0 : 1.0;
      const Complex c = roots[static_cast<std::size_t>(j)];
      xs.push_back({c, sgn * base_x[static_cast<std::size_t>(j)]});
      ys.push_back({c, sgn * base_y[static_cast<std::size_t>(j)]});
    }
    out.points.push_back(D1Point(poly_interpolate(xs, tol), poly_interpolate(ys, tol),
                                 target.r(), tol));
  }
  for (std::size_t choice = 0; choice < count / 2; ++choice)
    out.orbits.emplace_back(static_cast<int>(choice), static_cast<int>(count - 1 - choice));
  return out;
}

BasedRationalMap cover_map_on_maps(const BasedRationalMap& m, const ToleranceContext& tol) {
  return d0_to_map(quotient_map(map_to_d1(m, tol)));
}

CoverRecipeComparison compare_cover_recipes(const BasedRationalMap& m,
                                            const ToleranceContext& tol) {
  CoverRecipeComparison out;
  const BasedRationalMap covered = cover_map_on_maps(m, tol);
  out.surface = covered.p();
  out.literal = poly_mod(m.p() * m.p(), covered.q());
  out.difference_mod_q = poly_mod(out.literal - out.surface, m.q()).norm();
  out.literal_at_zero = out.literal(0.0);
  out.surface_at_zero = out.surface(0.0);
  out.coefficient_difference = distance(out.literal, out.surface);
  return out;
}

}  // namespace nk
