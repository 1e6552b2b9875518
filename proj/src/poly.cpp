#include "nk/poly.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "nk/error.hpp"
#include "nk/random.hpp"

namespace nk {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kDivisionByZero: return "division_by_zero";
    case ErrorCode::kNotCoprime: return "not_coprime";
    case ErrorCode::kNoConvergence: return "no_convergence";
    case ErrorCode::kCoincidentNodes: return "coincident_nodes";
    case ErrorCode::kInvariantViolation: return "invariant_violation";
    case ErrorCode::kDegenerateStratum: return "degenerate_stratum";
    case ErrorCode::kNotCommuting: return "not_commuting";
    case ErrorCode::kStepUnderflow: return "step_underflow";
    case ErrorCode::kContinuityMismatch: return "continuity_mismatch";
    case ErrorCode::kMalformedInput: return "malformed_input";
  }
  return "unknown";
}

void ToleranceContext::validate() const {
  if (!(trim_tol > 0.0) || !(eq_tol > 0.0) || eq_tol < trim_tol || !std::isfinite(eq_tol)) {
    std::ostringstream os;
    os << "eq_tol=" << eq_tol << " trim_tol=" << trim_tol;
    throw Error(ErrorCode::kInvalidArgument, "tolerances must satisfy 0 < trim_tol <= eq_tol",
                os.str());
  }
}

namespace {

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

double max_abs(const std::vector<Complex>& c) {
  double m = 0.0;
  for (const auto& v : c) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

Poly::Poly(std::vector<Complex> coeffs, double trim_tol) : coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) {
    if (!finite(c)) {
      throw Error(ErrorCode::kInvalidArgument, "non-finite polynomial coefficient");
    }
  }
  const double cut = trim_tol * max_abs(coeffs_);
  while (!coeffs_.empty() && std::abs(coeffs_.back()) <= cut) coeffs_.pop_back();
}

Poly::Poly(std::initializer_list<Complex> coeffs) : Poly(std::vector<Complex>(coeffs)) {}

Poly Poly::constant(Complex c) { return Poly({c}); }

Poly Poly::monomial(int degree, Complex c) {
  std::vector<Complex> v(static_cast<std::size_t>(degree) + 1, Complex{});
  v.back() = c;
  return Poly(std::move(v));
}

Poly Poly::from_roots(std::span<const Complex> roots) {
  std::vector<Complex> c{1.0};
  for (const auto& r : roots) {
    std::vector<Complex> next(c.size() + 1, Complex{});
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return Poly(std::move(c));
}

Complex Poly::operator[](int i) const {
  if (i < 0 || i > degree()) return {};
  return coeffs_[static_cast<std::size_t>(i)];
}

double Poly::norm() const { return max_abs(coeffs_); }

Complex Poly::operator()(Complex z) const {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<double>(i);
  return Poly(std::move(d));
}

Poly Poly::reflected() const {
  std::vector<Complex> c = coeffs_;
  for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
  return Poly(std::move(c));
}

Poly Poly::composed_with_square() const {
  if (coeffs_.empty()) return {};
  std::vector<Complex> c(2 * coeffs_.size() - 1, Complex{});
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[2 * i] = coeffs_[i];
  return Poly(std::move(c));
}

Poly Poly::times_monomial(int shift) const {
  if (coeffs_.empty()) return {};
  std::vector<Complex> c(static_cast<std::size_t>(shift), Complex{});
  c.insert(c.end(), coeffs_.begin(), coeffs_.end());
  return Poly(std::move(c));
}

Poly Poly::monic() const {
  if (coeffs_.empty()) throw Error(ErrorCode::kDivisionByZero, "monic() of zero polynomial");
  return *this * (1.0 / coeffs_.back());
}

Poly Poly::trimmed(double abs_threshold) const {
  std::vector<Complex> c = coeffs_;
  while (!c.empty() && std::abs(c.back()) <= abs_threshold) c.pop_back();
  Poly out;
  out.coeffs_ = std::move(c);
  return out;
}

bool Poly::is_monic(double tol) const {
  return !coeffs_.empty() && std::abs(coeffs_.back() - 1.0) <= tol;
}

Poly& Poly::operator+=(const Poly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  *this = Poly(std::move(coeffs_));
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  *this = Poly(std::move(coeffs_));
  return *this;
}

Poly& Poly::operator*=(Complex c) {
  for (auto& v : coeffs_) v *= c;
  *this = Poly(std::move(coeffs_));
  return *this;
}

Poly operator-(const Poly& a) { return a * Complex{-1.0}; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Complex> c(a.coeffs().size() + b.coeffs().size() - 1, Complex{});
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] += a.coeffs()[i] * b.coeffs()[j];
  return Poly(std::move(c));
}

double distance(const Poly& a, const Poly& b) {
  double m = 0.0;
  int d = std::max(a.degree(), b.degree());
  for (int i = 0; i <= d; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

DivMod poly_divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(ErrorCode::kDivisionByZero, "division by the zero polynomial");
  const int db = b.degree();
  if (a.degree() < db) return {Poly{}, a};
  std::vector<Complex> rem = a.coeffs();
  std::vector<Complex> quot(static_cast<std::size_t>(a.degree() - db) + 1, Complex{});
  const Complex lead = b.leading();
  for (int i = a.degree() - db; i >= 0; --i) {
    Complex f = rem[static_cast<std::size_t>(i + db)] / lead;
    quot[static_cast<std::size_t>(i)] = f;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i + j)] -= f * b[j];
    rem[static_cast<std::size_t>(i + db)] = 0.0;
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly poly_mod(const Poly& a, const Poly& b) { return poly_divmod(a, b).remainder; }

Poly poly_modinv(const Poly& p, const Poly& q, const ToleranceContext& tol) {
  if (q.degree() < 1) throw Error(ErrorCode::kInvalidArgument, "modulus must have degree >= 1");
  const double scale = 1.0 + std::max(p.norm(), q.norm());
  const double cut = tol.eq_tol * scale;

  // Invariant: s_i * p = r_i mod q.
  Poly r0 = q;
  Poly r1 = poly_mod(p, q).trimmed(cut);
  Poly s0;
  Poly s1 = Poly::constant(1.0);
  while (r1.degree() > 0) {
    auto [quot, rem] = poly_divmod(r0, r1);
    rem = rem.trimmed(cut);
    Poly s2 = s0 - quot * s1;
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.is_zero()) {
    std::ostringstream os;
    os << "gcd degree " << r0.degree();
    throw Error(ErrorCode::kNotCoprime, "polynomials share a common factor", os.str());
  }
  Poly h = poly_mod(s1 * (1.0 / r1[0]), q);
  // Newton step h <- h (2 - p h) mod q squares the residual.
  Poly ph = poly_mod(p * h, q);
  Poly correction = Poly::constant(2.0) - ph;
  return poly_mod(h * correction, q);
}

Complex poly_resultant(const Poly& q, const Poly& p) {
  if (q.is_zero()) throw Error(ErrorCode::kInvalidArgument, "resultant with zero polynomial");
  if (p.is_zero()) return 0.0;
  const int k = q.degree();
  const int m = p.degree();
  if (k == 0) return std::pow(q[0], m);
  if (m == 0) return std::pow(p[0], k);
  const int size = k + m;
  Eigen::MatrixXcd syl = Eigen::MatrixXcd::Zero(size, size);
  // Rows of q shifted m times, then rows of p shifted k times, descending
  // powers left to right.
  for (int row = 0; row < m; ++row)
    for (int j = 0; j <= k; ++j) syl(row, row + j) = q[k - j];
  for (int row = 0; row < k; ++row)
    for (int j = 0; j <= m; ++j) syl(m + row, row + j) = p[m - j];
  return syl.fullPivLu().determinant();
}

std::vector<Complex> poly_roots(const Poly& q, std::uint64_t seed) {
  const int n = q.degree();
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "poly_roots needs degree >= 1");
  const Poly monic = q.monic();
  const Poly dq = monic.derivative();

  // Fujiwara-style bound, halved: roots lie within twice this radius.
  double radius = 0.0;
  for (int i = 0; i < n; ++i) {
    double a = std::abs(monic[i]);
    if (a > 0.0) radius = std::max(radius, std::pow(a, 1.0 / (n - i)));
  }
  if (radius == 0.0) radius = 1.0;

  Rng rng(seed);
  std::vector<Complex> z(static_cast<std::size_t>(n));
  const double offset = rng.uniform(0.0, 2.0 * std::numbers::pi);
  for (int j = 0; j < n; ++j) {
    double phase = offset + 2.0 * std::numbers::pi * j / n + rng.uniform(-0.1, 0.1);
    z[static_cast<std::size_t>(j)] = std::polar(radius, phase);
  }

  std::vector<double> abs_coeffs(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) abs_coeffs[static_cast<std::size_t>(i)] = std::abs(monic[i]);
  auto rounding_bound = [&](Complex x) {
    double ax = std::abs(x);
    double acc = 0.0;
    for (int i = n; i >= 0; --i) acc = acc * ax + abs_coeffs[static_cast<std::size_t>(i)];
    return 4.0 * (n + 1) * std::numeric_limits<double>::epsilon() * acc;
  };

  std::vector<bool> done(static_cast<std::size_t>(n), false);
  constexpr int kMaxIter = 1000;
  int iter = 0;
  for (; iter < kMaxIter; ++iter) {
    bool all_done = true;
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (done[j]) continue;
      Complex val = monic(z[j]);
      if (std::abs(val) <= rounding_bound(z[j])) {
        done[j] = true;
        continue;
      }
      all_done = false;
      Complex ratio = val / dq(z[j]);
      Complex repulsion{};
      for (std::size_t l = 0; l < z.size(); ++l)
        if (l != j) repulsion += 1.0 / (z[j] - z[l]);
      Complex step = ratio / (1.0 - ratio * repulsion);
      if (!finite(step)) step = ratio;
      if (!finite(step)) step = Complex{1e-8, 1e-8};
      z[j] -= step;
      if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(z[j])))
        done[j] = true;
    }
    if (all_done) break;
  }
  if (iter == kMaxIter) {
    double residual = 0.0;
    for (const auto& r : z) residual = std::max(residual, std::abs(monic(r)));
    std::ostringstream os;
    os << "max |q(root)| = " << residual << " after " << kMaxIter << " iterations";
    throw Error(ErrorCode::kNoConvergence, "Aberth iteration did not converge", os.str());
  }
  std::sort(z.begin(), z.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return z;
}

EvenOddParts even_odd_split(const Poly& p) {
  std::vector<Complex> even, odd;
  for (int i = 0; i <= p.degree(); ++i) (i % 2 == 0 ? even : odd).push_back(p[i]);
  return {Poly(std::move(even)), Poly(std::move(odd))};
}

Poly even_odd_join(const Poly& even, const Poly& odd) {
  int deg = std::max(2 * even.degree(), 2 * odd.degree() + 1);
  if (deg < 0) return {};
  std::vector<Complex> c(static_cast<std::size_t>(deg) + 1, Complex{});
  for (int i = 0; i <= even.degree(); ++i) c[static_cast<std::size_t>(2 * i)] = even[i];
  for (int i = 0; i <= odd.degree(); ++i) c[static_cast<std::size_t>(2 * i + 1)] = odd[i];
  return Poly(std::move(c));
}

Poly poly_interpolate(std::span<const InterpolationNode> points, const ToleranceContext& tol) {
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(points[i].node - points[j].node) <= tol.eq_tol) {
        std::ostringstream os;
        os << "nodes " << i << " and " << j;
        throw Error(ErrorCode::kCoincidentNodes, "interpolation nodes coincide", os.str());
      }
  std::vector<Complex> dd(n);
  for (std::size_t i = 0; i < n; ++i) dd[i] = points[i].value;
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (points[i].node - points[i - level].node);

  // Nested Horner expansion of the Newton form.
  Poly result;
  for (std::size_t i = n; i-- > 0;) {
    result = result * Poly{-points[i].node, 1.0} + Poly::constant(dd[i]);
  }
  return result;
}

}  // namespace nk
