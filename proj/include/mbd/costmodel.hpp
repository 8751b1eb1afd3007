#pragma once

#include <vector>

#include "mbd/flowdec.hpp"
#include "mbd/staticdec.hpp"
#include "mbd/types.hpp"

namespace mbd {

// Cubic cost model for eigenanalysis after a block decomposition.
struct SavingsEstimate {
  Index n = 0;
  std::vector<Index> block_dims;
  double dense_cost = 0.0;    // n^3
  double blocked_cost = 0.0;  // sum m_i^3
  double savings_fraction = 0.0;
  // Every block has size <= n/2, the precondition of the three-quarters
  // bound.
  bool all_blocks_at_most_half = false;
};

// Throws dims_mismatch unless the dims are positive and sum to n.
SavingsEstimate savings_estimate(Index n, const std::vector<Index>& block_dims);

struct BenchConfig {
  FlowDecompositionConfig decomposition = static_config();
  int repetitions = 5;
  // Threads for the blockwise eigenvalue kernel; 1 = serial reference.
  int threads = 1;
};

struct BenchResult {
  double t_dense = 0.0;       // median seconds, dense eigenvalues of A
  double t_decomposed = 0.0;  // median seconds, decompose + blockwise eigenvalues
  double eigenvalue_agreement = 0.0;  // Hausdorff distance of the two spectra
  std::vector<Index> block_dims;
  ComplexVector dense_values;
  ComplexVector blocked_values;
  SavingsEstimate model;
};

// Dense whole-matrix eigenvalues versus static decomposition followed by
// eigenvalues of each diagonal block.
BenchResult bench_eigen_divide_conquer(const ComplexMatrix& A, const BenchConfig& cfg = {});

// max(max_a min_b |a - b|, max_b min_a |a - b|)
double hausdorff_distance(const ComplexVector& a, const ComplexVector& b);

}  // namespace mbd
