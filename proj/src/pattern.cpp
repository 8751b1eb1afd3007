#include "mbd/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mbd {

double Threshold::factor(Index n) const {
  return relative ? *relative : static_cast<double>(n) * machine_epsilon;
}

double Threshold::resolve(const ComplexMatrix& M) const {
  if (absolute) return *absolute;
  return factor(M.rows()) * std::max(1.0, M.norm());
}

Eigen::MatrixXd RoundingModel::eigenvalue_gaps(const ComplexVector& values) {
  const Index n = values.size();
  Eigen::MatrixXd gaps(n, n);
  for (Index l = 0; l < n; ++l)
    for (Index k = 0; k < n; ++k)
      gaps(k, l) = k == l ? std::numeric_limits<double>::infinity() : std::abs(values(k) - values(l));
  return gaps;
}

Eigen::MatrixXd RoundingModel::cutoffs(const ComplexMatrix& M, double sample_norm, double factor) const {
  const Index n = M.rows();
  if (separation.rows() != n || separation.cols() != n || row_scales.size() != n)
    throw Error(ErrorCode::size_mismatch, "rounding model and sample sizes differ");

  const double mix = factor * anchor_norm;
  const Eigen::MatrixXd coupling =
      separation.unaryExpr([mix](double sep) { return sep > mix ? mix / sep : 1.0; });
  const Eigen::MatrixXd magnitude = M.cwiseAbs();
  Eigen::MatrixXd out = magnitude * coupling + coupling * magnitude;
  for (Index i = 0; i < n; ++i) out.row(i).array() += factor * std::max(1.0, row_scales(i) * sample_norm);
  return out;
}

bool PatternMatrix::row_all_true(Index i) const {
  const auto* row = bits_.data() + i * n_;
  return std::all_of(row, row + n_, [](std::uint8_t b) { return b != 0; });
}

Index PatternMatrix::count() const {
  return static_cast<Index>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

PatternMatrix PatternMatrix::transposed() const {
  PatternMatrix out(n_, tol_);
  for (Index i = 0; i < n_; ++i)
    for (Index j = 0; j < n_; ++j) out.bits_[static_cast<std::size_t>(j * n_ + i)] = (*this)(i, j);
  return out;
}

PatternMatrix PatternMatrix::symmetrized() const {
  PatternMatrix out(n_, tol_);
  for (Index i = 0; i < n_; ++i)
    for (Index j = 0; j < n_; ++j)
      out.bits_[static_cast<std::size_t>(i * n_ + j)] = (*this)(i, j) || (*this)(j, i);
  return out;
}

PatternMatrix threshold_pattern(const ComplexMatrix& M, double tol) {
  require_square_finite(M, "pattern input");
  if (!(tol >= 0.0)) throw Error(ErrorCode::invalid_config, "threshold must be nonnegative");
  const Index n = M.rows();
  PatternMatrix out(n, tol);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) out.bits_[static_cast<std::size_t>(i * n + j)] = std::abs(M(i, j)) > tol;
  return out;
}

PatternMatrix threshold_pattern(const ComplexMatrix& M, const Eigen::MatrixXd& cutoffs) {
  require_square_finite(M, "pattern input");
  if (cutoffs.rows() != M.rows() || cutoffs.cols() != M.cols())
    throw Error(ErrorCode::size_mismatch, "cutoff matrix and pattern input sizes differ");
  const Index n = M.rows();
  PatternMatrix out(n, cutoffs.maxCoeff());
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      out.bits_[static_cast<std::size_t>(i * n + j)] = std::abs(M(i, j)) > cutoffs(i, j);
  return out;
}

PatternMatrix combine_patterns(std::span<const PatternMatrix> patterns) {
  if (patterns.empty()) throw Error(ErrorCode::invalid_config, "combine_patterns needs at least one pattern");
  PatternMatrix out = patterns.front();
  for (const auto& p : patterns.subspan(1)) {
    if (p.size() != out.size())
      throw Error(ErrorCode::size_mismatch, "patterns of size " + std::to_string(out.size()) + " and " +
                                                std::to_string(p.size()));
    for (std::size_t k = 0; k < out.bits_.size(); ++k) out.bits_[k] |= p.bits_[k];
    out.tol_ = std::max(out.tol_, p.tol_);
  }
  return out;
}

}  // namespace mbd
