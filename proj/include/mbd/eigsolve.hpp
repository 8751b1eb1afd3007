#pragma once

#include <optional>
#include <vector>

#include <Eigen/LU>

#include "mbd/types.hpp"

namespace mbd {

// Eigenvectors as unit-norm columns with their eigenvalues.
struct EigResult {
  ComplexMatrix vectors;
  ComplexVector values;
  // Condition number of `vectors` (1-norm estimate); may be +inf.
  double condition_estimate = 1.0;
};

// Unitary eigendecomposition of a hermitean matrix. Values ascend; columns
// are orthonormal. Throws not_hermitean when ||A - A*||_F exceeds
// hermitean_tol * max(1, ||A||_F).
EigResult eig_hermitean(const ComplexMatrix& A, std::optional<double> hermitean_tol = {});

// Ascending eigenvalues of the hermitean part (A + A*)/2, no checks.
Eigen::VectorXd eigenvalues_hermitean(const ComplexMatrix& A);

// Eigenvectors of a general matrix, ordered by (real, imag) of the values.
// Defective inputs are not an error: nearly dependent columns come back with
// a large condition_estimate.
EigResult eig_general(const ComplexMatrix& A);

// Eigenvalues only, same ordering as eig_general.
ComplexVector eigenvalues_general(const ComplexMatrix& A);

// Eigenvalues that rounding cannot tell apart. i and j are linked when
// |lambda_i - lambda_j| <= radius_scale * max(c_i, c_j), where c holds the
// eigenvalue condition numbers; the returned labels are the connected
// components, numbered by first appearance.
std::vector<Index> coalesced_clusters(const ComplexVector& values, const Eigen::VectorXd& conditions,
                                      double radius_scale);

// sep(X, Y) = smallest singular value of Z -> X Z - Z Y; |x - y| for
// scalars. Small when the spectra of X and Y are close or X, Y are far
// from normal.
double sylvester_separation(const ComplexMatrix& X, const ComplexMatrix& Y);

// Complex Schur form A = Q T Q* that can be reordered to extract invariant
// subspaces of eigenvalue clusters (defective ones included, where
// eigenvectors are useless).
class SchurForm {
 public:
  explicit SchurForm(const ComplexMatrix& A);

  const ComplexMatrix& unitary() const { return Q_; }
  const ComplexMatrix& triangular() const { return T_; }

  // Orthonormal basis (n x k) of the invariant subspace for the k diagonal
  // entries of T nearest to `targets` (matched one to one, greedily).
  ComplexMatrix invariant_subspace(const std::vector<Complex>& targets) const;

  // Moves diagonal entry `from` to position `to` <= from by adjacent swaps.
  static void move_up(ComplexMatrix& T, ComplexMatrix& Q, Index from, Index to);

 private:
  ComplexMatrix Q_, T_;
};

// LU factorization of a transform W, reused for repeated W^{-1} * B solves.
class TransformSolver {
 public:
  // Throws exactly_singular when a pivot is exactly zero.
  explicit TransformSolver(const ComplexMatrix& W);

  ComplexMatrix solve(const ComplexMatrix& B) const;

  double condition_estimate() const { return condition_; }
  // condition_estimate() > 1 / (n * eps)
  bool ill_conditioned() const;

 private:
  Eigen::PartialPivLU<ComplexMatrix> lu_;
  double condition_ = 1.0;
};

struct SolveResult {
  ComplexMatrix X;
  double condition_estimate = 1.0;
  bool ill_conditioned = false;
};

// Returns X with W * X = B through an LU factorization of W.
SolveResult solve_right(const ComplexMatrix& W, const ComplexMatrix& B);

}  // namespace mbd
