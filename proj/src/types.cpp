#include "mbd/types.hpp"

#include <cmath>

namespace mbd {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::not_square: return "not_square";
    case ErrorCode::non_finite: return "non_finite";
    case ErrorCode::size_mismatch: return "size_mismatch";
    case ErrorCode::not_hermitean: return "not_hermitean";
    case ErrorCode::no_convergence: return "no_convergence";
    case ErrorCode::exactly_singular: return "exactly_singular";
    case ErrorCode::invalid_spec: return "invalid_spec";
    case ErrorCode::invalid_config: return "invalid_config";
    case ErrorCode::sampling_failed: return "sampling_failed";
    case ErrorCode::dims_mismatch: return "dims_mismatch";
    case ErrorCode::io_failure: return "io_failure";
    case ErrorCode::parse_error: return "parse_error";
  }
  return "unknown";
}

void require_square_finite(const ComplexMatrix& M, const char* what) {
  if (M.rows() != M.cols() || M.rows() == 0) {
    throw Error(ErrorCode::not_square, std::string(what) + " is " + std::to_string(M.rows()) + "x" +
                                           std::to_string(M.cols()));
  }
  for (Index j = 0; j < M.cols(); ++j)
    for (Index i = 0; i < M.rows(); ++i)
      if (!std::isfinite(M(i, j).real()) || !std::isfinite(M(i, j).imag()))
        throw Error(ErrorCode::non_finite, std::string(what) + " has a non-finite entry at (" +
                                               std::to_string(i) + "," + std::to_string(j) + ")");
}

bool is_hermitean(const ComplexMatrix& M, double tol) {
  if (M.rows() != M.cols()) return false;
  return (M - M.adjoint()).norm() <= tol * std::max(1.0, M.norm());
}

}  // namespace mbd
