#include "nk/liealg.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "nk/error.hpp"

namespace nk {

namespace {

constexpr Complex kI{0.0, 1.0};

// Orthonormal-ish real basis of su(k): i E_jj - i E_{j+1,j+1}, E_jl - E_lj,
// i (E_jl + E_lj).
std::vector<Matrix> su_basis(int k) {
  std::vector<Matrix> basis;
  for (int j = 0; j + 1 < k; ++j) {
    Matrix m = Matrix::Zero(k, k);
    m(j, j) = kI;
    m(j + 1, j + 1) = -kI;
    basis.push_back(std::move(m));
  }
  for (int j = 0; j < k; ++j)
    for (int l = j + 1; l < k; ++l) {
      Matrix a = Matrix::Zero(k, k);
      a(j, l) = 1.0;
      a(l, j) = -1.0;
      basis.push_back(a);
      Matrix b = Matrix::Zero(k, k);
      b(j, l) = kI;
      b(l, j) = kI;
      basis.push_back(b);
    }
  return basis;
}

// Dimension of the common kernel of the given real-linear maps
// restricted to su(k).
int kernel_dimension(int k, const std::vector<std::function<Matrix(const Matrix&)>>& maps) {
  const auto basis = su_basis(k);
  const int cols = static_cast<int>(basis.size());
  const int rows = 2 * k * k * static_cast<int>(maps.size());
  Eigen::MatrixXd real_map = Eigen::MatrixXd::Zero(rows, cols);
  for (int c = 0; c < cols; ++c) {
    int r = 0;
    for (const auto& f : maps) {
      Matrix image = f(basis[static_cast<std::size_t>(c)]);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
          real_map(r++, c) = image(i, j).real();
          real_map(r++, c) = image(i, j).imag();
        }
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(real_map);
  svd.setThreshold(1e-10);
  return cols - static_cast<int>(svd.rank());
}

}  // namespace

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double anti_hermitian_defect(const Matrix& a) { return max_abs(a + a.adjoint()); }

Matrix anti_hermitian_part(const Matrix& a) { return (a - a.adjoint()) * 0.5; }

std::array<Matrix, 3> ResidueTriple::normalized() const { return {r1 * 0.5, r2, r3}; }

ResidueTriple principal_residues(int k) {
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "principal_residues needs k >= 2");
  ResidueTriple out;
  out.k = k;
  out.r1 = Matrix::Zero(k, k);
  for (int j = 0; j < k; ++j) out.r1(j, j) = kI * static_cast<double>(k - 1 - 2 * j);
  // One-based (i, j) = (j+1, j) entry sqrt(j(k-j)).
  Matrix lowering = Matrix::Zero(k, k);
  for (int j = 1; j < k; ++j) lowering(j, j - 1) = std::sqrt(static_cast<double>(j * (k - j)));
  out.r2 = (lowering - lowering.adjoint()) * 0.5;
  out.r3 = -kI * (lowering + lowering.adjoint()) * 0.5;
  return out;
}

Complex transvectant(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) {
    std::ostringstream os;
    os << a.size() << " vs " << b.size();
    throw Error(ErrorCode::kInvalidArgument, "transvectant arguments differ in length", os.str());
  }
  const std::size_t k = a.size();
  // Terms i and k-1-i are summed as a pair so that swapping the arguments
  // reproduces the same floating point operations up to sign.
  const double parity = (k % 2 == 1) ? 1.0 : -1.0;
  Complex sum{};
  for (std::size_t i = 0; 2 * i + 1 < k; ++i) {
    const Complex pair = a[i] * b[k - 1 - i] + parity * (a[k - 1 - i] * b[i]);
    sum += (i % 2 == 0) ? pair : -pair;
  }
  if (k % 2 == 1) {
    const std::size_t m = k / 2;
    const Complex middle = a[m] * b[m];
    sum += (m % 2 == 0) ? middle : -middle;
  }
  return sum;
}

Matrix form_matrix_J(int k) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "form_matrix_J needs k >= 1");
  Matrix j = Matrix::Zero(k, k);
  for (int i = 0; i < k; ++i) j(i, k - 1 - i) = (i % 2 == 0) ? 1.0 : -1.0;
  return j;
}

Matrix sigma(const Matrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::kInvalidArgument, "sigma needs a square matrix");
  const Matrix j = form_matrix_J(static_cast<int>(a.rows()));
  // J is real orthogonal, so J^{-1} = J^T.
  return -j * a.transpose() * j.transpose();
}

bool is_in_sigma_subalgebra(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  if (a.rows() == 0) return true;
  const Matrix j = form_matrix_J(static_cast<int>(a.rows()));
  return anti_hermitian_defect(a) < tol && std::abs(a.trace()) < tol &&
         max_abs(a * j + j * a.transpose()) < tol;
}

int sigma_fixed_dimension(int k) {
  return kernel_dimension(k, {[](const Matrix& a) { return Matrix(a - sigma(a)); }});
}

int fixed_dimension(int k, const Matrix& h) {
  const Matrix h_inv = h.inverse();
  return kernel_dimension(k, {[](const Matrix& a) { return Matrix(a - sigma(a)); },
                              [&](const Matrix& a) { return Matrix(a - h * a * h_inv); }});
}

}  // namespace nk
