#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mbd/types.hpp"

namespace mbd {

// How the magnitude cutoff for a spy pattern is chosen.
//
// By default the cutoff is relative: n * eps * max(1, ||M||_F). A relative
// override replaces the n * eps factor; an absolute override ignores the
// matrix norm altogether (this reproduces fixed-threshold breakdowns at large
// norms).
//
// The decomposition pipelines additionally apply an entry-wise rounding model
// (see RoundingModel) unless `model` is false or an absolute cutoff is set.
struct Threshold {
  std::optional<double> relative;
  std::optional<double> absolute;
  bool model = true;

  // n * eps unless overridden
  double factor(Index n) const;
  double resolve(const ComplexMatrix& M) const;
  bool uses_model() const { return model && !absolute; }
};

// First-order rounding model for M = T^{-1} A(t) T where T holds the anchor
// eigenvectors (unit columns), or orthonormal bases of eigenvalue clusters.
// Two effects dominate:
//  - solving with T amplifies rounding in row i by ||row i of T^{-1}||;
//  - columns whose anchor spectra are separated by only `sep` mix by about
//    eps ||A(t_a)|| / sep, which leaks in-block entries into off-block
//    positions.
// The cutoff for entry (i, j) is
//   f max(1, s_i ||A(t)||_F) + (|M| G + G |M|)_ij,
//   G_kl = min(1, f ||A(t_a)||_F / separation(k, l)),
// with f = Threshold::factor(n) and s_i the row scales. separation(k, l) is
// the eigenvalue gap for single columns, the Sylvester separation between
// cluster blocks otherwise, and +inf inside one cluster (or on the diagonal).
struct RoundingModel {
  Eigen::MatrixXd separation;
  double anchor_norm = 0.0;
  Eigen::VectorXd row_scales;

  // Pairwise |lambda_k - lambda_l| with +inf on the diagonal.
  static Eigen::MatrixXd eigenvalue_gaps(const ComplexVector& values);

  // Entry-wise cutoffs for one transformed sample.
  Eigen::MatrixXd cutoffs(const ComplexMatrix& M, double sample_norm, double factor) const;
};

// Boolean n x n matrix of entries whose magnitude exceeds a cutoff.
class PatternMatrix {
 public:
  PatternMatrix() = default;  // empty, size 0

  Index size() const { return n_; }
  double tolerance() const { return tol_; }

  bool operator()(Index i, Index j) const { return bits_[static_cast<std::size_t>(i * n_ + j)] != 0; }

  bool row_all_true(Index i) const;
  Index count() const;
  PatternMatrix transposed() const;
  PatternMatrix symmetrized() const;

  bool operator==(const PatternMatrix& other) const { return n_ == other.n_ && bits_ == other.bits_; }

  friend PatternMatrix threshold_pattern(const ComplexMatrix& M, double tol);
  friend PatternMatrix threshold_pattern(const ComplexMatrix& M, const Eigen::MatrixXd& cutoffs);
  friend PatternMatrix combine_patterns(std::span<const PatternMatrix> patterns);

 private:
  PatternMatrix(Index n, double tol) : n_(n), tol_(tol), bits_(static_cast<std::size_t>(n * n), 0) {}

  Index n_ = 0;
  double tol_ = 0.0;
  std::vector<std::uint8_t> bits_;
};

// bits(i,j) = |M(i,j)| > tol
PatternMatrix threshold_pattern(const ComplexMatrix& M, double tol);

inline PatternMatrix threshold_pattern(const ComplexMatrix& M, const Threshold& threshold) {
  return threshold_pattern(M, threshold.resolve(M));
}

// bits(i,j) = |M(i,j)| > cutoffs(i,j); the recorded tolerance is the
// largest cutoff.
PatternMatrix threshold_pattern(const ComplexMatrix& M, const Eigen::MatrixXd& cutoffs);

// Element-wise OR. The recorded tolerance is the largest input tolerance.
PatternMatrix combine_patterns(std::span<const PatternMatrix> patterns);

}  // namespace mbd
