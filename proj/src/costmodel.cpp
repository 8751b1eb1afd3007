#include "mbd/costmodel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "mbd/eigsolve.hpp"
#include "mbd/kernels.hpp"
#include "mbd/staticdec.hpp"

namespace mbd {

namespace {

double cube(Index m) {
  const auto x = static_cast<double>(m);
  return x * x * x;
}

template <class F>
double median_seconds(int repetitions, F&& body) {
  std::vector<double> times;
  for (int r = 0; r < std::max(repetitions, 1); ++r) {
    const auto start = std::chrono::steady_clock::now();
    body();
    times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

}  // namespace

SavingsEstimate savings_estimate(Index n, const std::vector<Index>& block_dims) {
  if (n < 1 || block_dims.empty()) throw Error(ErrorCode::dims_mismatch, "need n >= 1 and at least one block");
  Index total = 0;
  for (Index d : block_dims) {
    if (d < 1) throw Error(ErrorCode::dims_mismatch, "block dimensions must be positive");
    total += d;
  }
  if (total != n)
    throw Error(ErrorCode::dims_mismatch,
                "block dimensions sum to " + std::to_string(total) + ", expected " + std::to_string(n));

  SavingsEstimate s;
  s.n = n;
  s.block_dims = block_dims;
  s.dense_cost = cube(n);
  for (Index d : block_dims) s.blocked_cost += cube(d);
  s.savings_fraction = 1.0 - s.blocked_cost / s.dense_cost;
  s.all_blocks_at_most_half = std::all_of(block_dims.begin(), block_dims.end(), [n](Index d) { return 2 * d <= n; });
  return s;
}

double hausdorff_distance(const ComplexVector& a, const ComplexVector& b) {
  auto directed = [](const ComplexVector& from, const ComplexVector& to) {
    double worst = 0.0;
    for (Index i = 0; i < from.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (Index j = 0; j < to.size(); ++j) best = std::min(best, std::abs(from(i) - to(j)));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

BenchResult bench_eigen_divide_conquer(const ComplexMatrix& A, const BenchConfig& cfg) {
  require_square_finite(A, "benchmark matrix");
  BenchResult out;

  out.t_dense = median_seconds(cfg.repetitions, [&] { out.dense_values = eigenvalues_general(A); });

  // The spy stage of the anchor is diagnostic output only.
  FlowDecompositionConfig dcfg = cfg.decomposition;
  dcfg.record_anchor_pattern = false;
  out.t_decomposed = median_seconds(cfg.repetitions, [&] {
    const auto dec = decompose_static(A, dcfg);
    const auto per_block = cfg.threads == 1
                               ? kernels::block_eigenvalues_serial(dec.block_diagonal, dec.block_dims)
                               : kernels::block_eigenvalues_parallel(dec.block_diagonal, dec.block_dims, cfg.threads);
    out.blocked_values.resize(A.rows());
    Index k = 0;
    for (const auto& v : per_block) {
      out.blocked_values.segment(k, v.size()) = v;
      k += v.size();
    }
    out.block_dims = dec.block_dims;
  });

  out.eigenvalue_agreement = hausdorff_distance(out.dense_values, out.blocked_values);
  out.model = savings_estimate(A.rows(), out.block_dims);
  return out;
}

}  // namespace mbd
