#pragma once

#include <vector>

#include "mbd/flow.hpp"
#include "mbd/flowdec.hpp"
#include "mbd/report.hpp"

namespace mbd {

// Hermitean flow t -> cos(t) H + sin(t) K over [0, 2pi) with
// H = (A + A*)/2 and K = (A - A*)/(2i), so that A = H + iK.
MatrixFlow hk_flow(const ComplexMatrix& A);

struct StaticDecomposition {
  DecompositionReport report;
  ComplexMatrix block_diagonal;  // Vc* A Vc
  ComplexMatrix unitary;         // Vc, the report's transform
  std::vector<Index> block_dims;
};

// Defaults for static matrices: one probe. The HK flow lies in the span of
// H and K, so any two samples t_a, t_b with t_b != t_a (mod pi) determine
// every other sample; further probes only add rounding safety.
FlowDecompositionConfig static_config();

// Unitary block decomposition of a single matrix via its HK flow. The
// residual is measured on Vc* A Vc itself.
StaticDecomposition decompose_static(const ComplexMatrix& A, const FlowDecompositionConfig& cfg = static_config());

struct KNormalityProfile {
  Index n = 0;
  Index k = 0;  // largest block
  std::vector<Index> block_dims;
  // floor(n/k) blocks of size k plus smaller blocks summing to n mod k
  bool is_k_normal = false;
  bool normal = false;             // k == 1
  bool commutator_normal = false;  // ||A*A - AA*||_F <= tol ||A||_F^2
  double commutator_residual = 0.0;
};

// True when dims are floor(n/k) blocks of size k = max(dims) and the rest are
// smaller blocks summing to n mod k.
bool satisfies_k_normal(Index n, const std::vector<Index>& dims);

KNormalityProfile classify_k_normal(const ComplexMatrix& A, const FlowDecompositionConfig& cfg = static_config());

// Same, reusing a finished decomposition.
KNormalityProfile classify_k_normal(const ComplexMatrix& A, const StaticDecomposition& dec);

// ||A*A - AA*||_F / max(1, ||A||_F^2)
double normality_residual(const ComplexMatrix& A);

}  // namespace mbd
