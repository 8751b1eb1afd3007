#pragma once

#include <memory>

#include "mbd/eigsolve.hpp"
#include "mbd/types.hpp"

namespace mbd {

enum class TransformKind { unitary, general };

const char* to_string(TransformKind kind);

// A fixed change of basis T applied as T^{-1} M T. Unitary transforms use the
// conjugate transpose; general ones reuse one LU factorization of T.
class Similarity {
 public:
  static Similarity unitary(ComplexMatrix V);
  static Similarity general(ComplexMatrix W);

  ComplexMatrix apply(const ComplexMatrix& M) const;

  const ComplexMatrix& transform() const { return transform_; }
  // Norms of the rows of T^{-1} (all 1 for unitary transforms).
  const Eigen::VectorXd& row_scales() const { return row_scales_; }
  TransformKind kind() const { return kind_; }
  // 1 for unitary transforms.
  double condition_estimate() const;
  bool ill_conditioned() const;

 private:
  Similarity(ComplexMatrix T, TransformKind kind);

  ComplexMatrix transform_;
  TransformKind kind_;
  std::shared_ptr<const TransformSolver> solver_;
  Eigen::VectorXd row_scales_;
};

}  // namespace mbd
