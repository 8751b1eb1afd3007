// Serial reference kernels versus their OpenMP versions.
//   bench_kernels [--quick] [--threads N]
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include <omp.h>

#include "mbd/gallery.hpp"
#include "mbd/kernels.hpp"
#include "mbd/staticdec.hpp"

namespace {

using namespace mbd;

template <class F>
double median_seconds(int reps, F&& body) {
  std::vector<double> t;
  for (int r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    body();
    t.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

void row(const char* name, Index n, int count, double serial, double parallel, bool same) {
  std::printf("%-20s n=%-5ld items=%-3d serial %9.4f s  parallel %9.4f s  speedup %5.2f  %s\n", name,
              static_cast<long>(n), count, serial, parallel, serial / std::max(parallel, 1e-12),
              same ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = false;
  int threads = 0;
  for (int k = 1; k < argc; ++k) {
    if (!std::strcmp(argv[k], "--quick")) quick = true;
    if (!std::strcmp(argv[k], "--threads") && k + 1 < argc) threads = std::stoi(argv[++k]);
  }
  const int reps = quick ? 1 : 5;
  std::printf("OpenMP threads: %d\n", threads > 0 ? threads : omp_get_max_threads());
  bool all_same = true;

  // Probe kernel: T^{-1} A(t) T plus thresholding for a batch of samples.
  for (Index n : quick ? std::vector<Index>{40} : std::vector<Index>{40, 120, 250}) {
    gallery::FlowSpec spec;
    spec.blocks = {{n / 2, gallery::BlockKind::smooth}, {n - n / 2, gallery::BlockKind::smooth}};
    spec.conjugator = gallery::Conjugator::general;
    const MatrixFlow flow = gallery::make_flow(spec);
    const Similarity sim = Similarity::general(gallery::random_complex(n, 7));
    const kernels::ProbeContext ctx{sim, {}, std::nullopt};
    const int count = quick ? 4 : 16;
    std::vector<ComplexMatrix> samples;
    for (int k = 0; k < count; ++k) samples.push_back(flow.sample(Parameter{0.1 + 0.37 * k}));

    std::vector<kernels::ProbeResult> a, b;
    const double ts = median_seconds(reps, [&] { a = kernels::probe_serial(ctx, samples); });
    const double tp = median_seconds(reps, [&] { b = kernels::probe_parallel(ctx, samples, threads); });
    bool same = a.size() == b.size();
    for (std::size_t k = 0; same && k < a.size(); ++k)
      same = a[k].transformed == b[k].transformed && a[k].pattern == b[k].pattern;
    all_same &= same;
    row("probe", n, count, ts, tp, same);
  }

  // Blockwise eigenvalues after a static decomposition.
  for (Index n : quick ? std::vector<Index>{40} : std::vector<Index>{100, 200, 400}) {
    const auto dec = decompose_static(gallery::make_static(gallery::StaticFamily::clement, n));
    std::vector<ComplexVector> a, b;
    const double ts =
        median_seconds(reps, [&] { a = kernels::block_eigenvalues_serial(dec.block_diagonal, dec.block_dims); });
    const double tp = median_seconds(
        reps, [&] { b = kernels::block_eigenvalues_parallel(dec.block_diagonal, dec.block_dims, threads); });
    bool same = a.size() == b.size();
    for (std::size_t k = 0; same && k < a.size(); ++k) same = a[k] == b[k];
    all_same &= same;
    row("block eigenvalues", n, static_cast<int>(dec.block_dims.size()), ts, tp, same);
  }
  return all_same ? 0 : 1;
}
