#pragma once

#include <Eigen/Dense>
#include <array>
#include <span>

#include "nk/poly.hpp"

namespace nk {

using Matrix = Eigen::MatrixXcd;

Matrix commutator(const Matrix& a, const Matrix& b);
// Max-magnitude entry.
double max_abs(const Matrix& a);
// ||A + A^dagger||, max entry.
double anti_hermitian_defect(const Matrix& a);
// (A - A^dagger) / 2.
Matrix anti_hermitian_part(const Matrix& a);

// Residues of the principal su(2) -> su(k) embedding. r1 is diagonal,
// r2 + i r3 is the lowering matrix with entries sqrt(j(k-j)).
struct ResidueTriple {
  int k = 0;
  Matrix r1, r2, r3;

  // The same triple rescaled to (r1/2, r2, r3), which satisfies
  // [a_i, a_j] = a_k cyclically.
  std::array<Matrix, 3> normalized() const;
};

ResidueTriple principal_residues(int k);

// Invariant bilinear form on binary forms of degree k-1 in the
// sqrt-binomial basis: sum_i (-1)^i a_{i+1} b_{k-i}.
Complex transvectant(std::span<const Complex> a, std::span<const Complex> b);

// Antidiagonal J with J(i, k-1-i) = (-1)^i (zero-based).
Matrix form_matrix_J(int k);

// -J A^T J^{-1}.
Matrix sigma(const Matrix& a);

// Anti-Hermitian, traceless, and ||A J + J A^T|| < tol.
bool is_in_sigma_subalgebra(const Matrix& a, double tol);

// Real dimension of {A in su(k) : sigma(A) = A}, by numerical rank.
int sigma_fixed_dimension(int k);
// Real dimension of {A in su(k) : sigma(A) = A, h A h^{-1} = A}.
int fixed_dimension(int k, const Matrix& h);

}  // namespace nk
