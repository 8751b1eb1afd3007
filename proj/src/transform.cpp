#include "mbd/transform.hpp"

namespace mbd {

const char* to_string(TransformKind kind) { return kind == TransformKind::unitary ? "unitary" : "general"; }

Similarity::Similarity(ComplexMatrix T, TransformKind kind) : transform_(std::move(T)), kind_(kind) {
  require_square_finite(transform_, "similarity transform");
  const Index n = transform_.rows();
  if (kind_ == TransformKind::general) {
    solver_ = std::make_shared<const TransformSolver>(transform_);
    row_scales_ = solver_->solve(ComplexMatrix::Identity(n, n)).rowwise().norm();
  } else {
    row_scales_ = Eigen::VectorXd::Ones(n);
  }
}

Similarity Similarity::unitary(ComplexMatrix V) { return Similarity(std::move(V), TransformKind::unitary); }

Similarity Similarity::general(ComplexMatrix W) { return Similarity(std::move(W), TransformKind::general); }

ComplexMatrix Similarity::apply(const ComplexMatrix& M) const {
  if (M.rows() != transform_.rows() || M.cols() != transform_.cols())
    throw Error(ErrorCode::size_mismatch, "sample and transform sizes differ");
  if (kind_ == TransformKind::unitary) return transform_.adjoint() * M * transform_;
  return solver_->solve(M * transform_);
}

double Similarity::condition_estimate() const { return solver_ ? solver_->condition_estimate() : 1.0; }

bool Similarity::ill_conditioned() const { return solver_ && solver_->ill_conditioned(); }

}  // namespace mbd
