#pragma once

#include <algorithm>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "mbd/flow.hpp"
#include "mbd/gallery.hpp"
#include "mbd/partition.hpp"
#include "mbd/pattern.hpp"

namespace mbd::test {

// Pattern from rows of '1'/'0' (or 'T'/'F') characters.
inline PatternMatrix pattern_of(std::initializer_list<const char*> rows) {
  const auto n = static_cast<Index>(rows.size());
  ComplexMatrix M = ComplexMatrix::Zero(n, n);
  Index i = 0;
  for (const char* r : rows) {
    for (Index j = 0; j < n; ++j) M(i, j) = (r[j] == '1' || r[j] == 'T') ? 1.0 : 0.0;
    ++i;
  }
  return threshold_pattern(M, 0.5);
}

inline PatternMatrix pattern_of(const Eigen::MatrixXd& bits) { return threshold_pattern(bits.cast<Complex>(), 0.5); }

inline std::vector<Index> sorted_dims(const BlockPartition& p) {
  auto d = p.dims();
  std::sort(d.begin(), d.end(), std::greater<>());
  return d;
}

inline std::vector<Index> sorted(std::vector<Index> d) {
  std::sort(d.begin(), d.end(), std::greater<>());
  return d;
}

// Dense random hermitean flow H0 + t H1 (generically indecomposable).
inline MatrixFlow generic_hermitean_flow(Index n, std::uint64_t seed) {
  const ComplexMatrix H0 = gallery::random_hermitean(n, seed);
  const ComplexMatrix H1 = gallery::random_hermitean(n, seed + 7919);
  return MatrixFlow(n, FlowKind::hermitean, Interval{0.0, 1.0},
                    [H0, H1](Parameter t) -> ComplexMatrix { return H0 + t.real() * H1; });
}

// Dense random general flow G0 + t G1.
inline MatrixFlow generic_general_flow(Index n, std::uint64_t seed) {
  const ComplexMatrix G0 = gallery::random_complex(n, seed);
  const ComplexMatrix G1 = gallery::random_complex(n, seed + 7919);
  return MatrixFlow(n, FlowKind::general, Interval{0.0, 1.0}, [G0, G1](Parameter t) -> ComplexMatrix { return G0 + t * G1; },
                    true);
}

// Random composition of n into block dims.
inline std::vector<Index> random_dims(Index n, std::mt19937_64& rng) {
  std::vector<Index> dims;
  Index left = n;
  while (left > 0) {
    std::uniform_int_distribution<Index> pick(1, left);
    const Index d = pick(rng);
    dims.push_back(d);
    left -= d;
  }
  return dims;
}

}  // namespace mbd::test
