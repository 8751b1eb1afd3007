#include "mbd/kernels.hpp"

#include <exception>

#include <omp.h>

#include "mbd/eigsolve.hpp"

namespace mbd::kernels {

namespace {

std::vector<Index> block_offsets(const std::vector<Index>& dims, Index n) {
  std::vector<Index> offsets{0};
  for (Index d : dims) offsets.push_back(offsets.back() + d);
  if (offsets.back() != n) throw Error(ErrorCode::dims_mismatch, "block dimensions do not sum to the matrix size");
  return offsets;
}

}  // namespace

ProbeResult probe_one(const ProbeContext& ctx, const ComplexMatrix& sample) {
  ProbeResult r;
  r.input_norm = sample.norm();
  r.transformed = ctx.sim.apply(sample);
  r.raw_pattern = threshold_pattern(r.transformed, ctx.threshold);
  if (ctx.model) {
    r.cutoffs = ctx.model->cutoffs(r.transformed, r.input_norm, ctx.threshold.factor(sample.rows()));
    r.pattern = threshold_pattern(r.transformed, r.cutoffs);
  } else {
    r.cutoffs = Eigen::MatrixXd::Constant(r.transformed.rows(), r.transformed.cols(), r.raw_pattern.tolerance());
    r.pattern = r.raw_pattern;
  }
  return r;
}

std::vector<ProbeResult> probe_serial(const ProbeContext& ctx, std::span<const ComplexMatrix> samples) {
  std::vector<ProbeResult> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(probe_one(ctx, s));
  return out;
}

std::vector<ProbeResult> probe_parallel(const ProbeContext& ctx, std::span<const ComplexMatrix> samples,
                                        int threads) {
  const auto count = static_cast<std::ptrdiff_t>(samples.size());
  std::vector<ProbeResult> out(samples.size());
  std::exception_ptr failure;
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(team)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    try {
      out[static_cast<std::size_t>(k)] = probe_one(ctx, samples[static_cast<std::size_t>(k)]);
    } catch (...) {
#pragma omp critical(mbd_probe_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<ComplexVector> block_eigenvalues_serial(const ComplexMatrix& blocked, const std::vector<Index>& dims) {
  const auto offsets = block_offsets(dims, blocked.rows());
  std::vector<ComplexVector> out;
  for (std::size_t k = 0; k < dims.size(); ++k)
    out.push_back(eigenvalues_general(blocked.block(offsets[k], offsets[k], dims[k], dims[k])));
  return out;
}

std::vector<ComplexVector> block_eigenvalues_parallel(const ComplexMatrix& blocked, const std::vector<Index>& dims,
                                                      int threads) {
  const auto offsets = block_offsets(dims, blocked.rows());
  const auto count = static_cast<std::ptrdiff_t>(dims.size());
  std::vector<ComplexVector> out(dims.size());
  std::exception_ptr failure;
  const int team = threads > 0 ? threads : omp_get_max_threads();
  // Largest blocks first keeps the dynamic schedule balanced (dims are sorted
  // in decreasing order by the partition).
#pragma omp parallel for schedule(dynamic, 1) num_threads(team)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const auto u = static_cast<std::size_t>(k);
    try {
      out[u] = eigenvalues_general(blocked.block(offsets[u], offsets[u], dims[u], dims[u]));
    } catch (...) {
#pragma omp critical(mbd_block_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace mbd::kernels
