#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mbd {

using Index = Eigen::Index;
using Complex = std::complex<double>;

// Dense n x n complex matrix; the carrier for every flow sample and transform.
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Flow parameter. Real-interval flows use parameters with zero imaginary part.
using Parameter = Complex;

inline constexpr double machine_epsilon = std::numeric_limits<double>::epsilon();

enum class ErrorCode {
  not_square,
  non_finite,
  size_mismatch,
  not_hermitean,
  no_convergence,
  exactly_singular,
  invalid_spec,
  invalid_config,
  sampling_failed,
  dims_mismatch,
  io_failure,
  parse_error,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Throws unless M is square with finite entries.
void require_square_finite(const ComplexMatrix& M, const char* what);

// ||M - M*||_F <= tol * max(1, ||M||_F)
bool is_hermitean(const ComplexMatrix& M, double tol);

// Default tolerances scale with the dimension.
inline double default_hermitean_tol(Index n) { return 1e-10 * static_cast<double>(n); }
inline double default_unitary_tol(Index n) { return 1e-10 * static_cast<double>(n); }
inline double default_eig_tol(Index n) { return 1e-9 * static_cast<double>(n); }

}  // namespace mbd
