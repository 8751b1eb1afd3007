#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mbd/partition.hpp"
#include "mbd/pattern.hpp"
#include "mbd/transform.hpp"

namespace mbd::kernels {

// Everything the probe kernel needs besides the samples.
struct ProbeContext {
  const Similarity& sim;
  Threshold threshold;
  // Entry-wise cutoffs are used for `pattern` when set.
  std::optional<RoundingModel> model;
};

// Per-sample output of the probe kernel.
struct ProbeResult {
  ComplexMatrix transformed;  // T^{-1} A(t) T
  PatternMatrix raw_pattern;  // single cutoff Threshold::resolve
  PatternMatrix pattern;      // entry-wise cutoffs (equals raw_pattern without a model)
  Eigen::MatrixXd cutoffs;    // the cutoffs behind `pattern`
  double input_norm = 0.0;    // ||A(t)||_F
};

// One sample; shared by both kernel variants.
ProbeResult probe_one(const ProbeContext& ctx, const ComplexMatrix& sample);

// Serial reference: transform and threshold every sample in order.
std::vector<ProbeResult> probe_serial(const ProbeContext& ctx, std::span<const ComplexMatrix> samples);

// OpenMP version over samples; results are identical to probe_serial.
// threads <= 0 uses the OpenMP default.
std::vector<ProbeResult> probe_parallel(const ProbeContext& ctx, std::span<const ComplexMatrix> samples,
                                        int threads = 0);

inline std::vector<ProbeResult> probe(const ProbeContext& ctx, std::span<const ComplexMatrix> samples,
                                      int threads) {
  return threads == 1 ? probe_serial(ctx, samples) : probe_parallel(ctx, samples, threads);
}

// Eigenvalues of each diagonal block of a block-diagonal matrix already in
// partition order (block k occupies the k-th consecutive index range).
std::vector<ComplexVector> block_eigenvalues_serial(const ComplexMatrix& blocked, const std::vector<Index>& dims);
std::vector<ComplexVector> block_eigenvalues_parallel(const ComplexMatrix& blocked, const std::vector<Index>& dims,
                                                      int threads = 0);

}  // namespace mbd::kernels
