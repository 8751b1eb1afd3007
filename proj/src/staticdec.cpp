#include "mbd/staticdec.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mbd {

namespace {

constexpr Complex kI{0.0, 1.0};

struct HKParts {
  ComplexMatrix H, K;
};

HKParts split(const ComplexMatrix& A) {
  require_square_finite(A, "static matrix");
  return {(A + A.adjoint()) * 0.5, (A - A.adjoint()) / (2.0 * kI)};
}

}  // namespace

MatrixFlow hk_flow(const ComplexMatrix& A) {
  auto [H, K] = split(A);
  auto sampler = [H = std::move(H), K = std::move(K)](Parameter t) -> ComplexMatrix {
    const double s = t.real();
    ComplexMatrix M = std::cos(s) * H + std::sin(s) * K;
    // Exactly hermitean despite rounding in the sum.
    return (M + M.adjoint()) * 0.5;
  };
  return MatrixFlow(A.rows(), FlowKind::hermitean, Interval{0.0, 2.0 * std::numbers::pi}, std::move(sampler));
}

StaticDecomposition decompose_static(const ComplexMatrix& A, const FlowDecompositionConfig& cfg) {
  const auto [H, K] = split(A);
  const Index n = A.rows();

  // A hermitean A has K = 0 and the HK flow collapses to cos(t) H, which
  // vanishes at t = pi/2. Every nonzero multiple of H shares its eigenvectors,
  // so probe a flow that never vanishes instead.
  const bool hermitean_input = K.norm() <= default_hermitean_tol(n) * std::max(1.0, A.norm());
  MatrixFlow flow = hermitean_input
                        ? MatrixFlow(n, FlowKind::hermitean, Interval{0.0, 2.0 * std::numbers::pi},
                                     [H = H](Parameter t) -> ComplexMatrix { return (2.0 + std::cos(t.real())) * H; })
                        : hk_flow(A);

  // t = 0 and pi sample H alone, whose spectrum is often far better
  // separated than that of a generic mix of H and K.
  FlowDecompositionConfig flow_cfg = cfg;
  flow_cfg.preferred_anchors.insert(flow_cfg.preferred_anchors.end(), {Parameter{0.0}, Parameter{std::numbers::pi}});

  StaticDecomposition out;
  out.report = decompose_hermitean_flow(flow, flow_cfg);
  out.unitary = out.report.transform;
  out.block_diagonal = out.unitary.adjoint() * A * out.unitary;
  out.block_dims = out.report.partition.dims();

  // The report's residual refers to A itself; the permutation is already
  // applied to the transform, so blocks are consecutive index ranges.
  std::vector<std::vector<Index>> ranges;
  Index offset = 0;
  for (Index d : out.block_dims) {
    std::vector<Index> g(static_cast<std::size_t>(d));
    for (Index i = 0; i < d; ++i) g[static_cast<std::size_t>(i)] = offset + i;
    ranges.push_back(std::move(g));
    offset += d;
  }
  const BlockPartition ordered(n, std::move(ranges));
  out.report.residual = offblock_residual(out.block_diagonal, ordered);
  out.report.tolerance = cfg.threshold.resolve(out.block_diagonal);
  out.report.residual_ratio =
      std::max(out.report.residual_ratio, offblock_ratio(out.report, A, out.block_diagonal, cfg.threshold));
  return out;
}

FlowDecompositionConfig static_config() {
  FlowDecompositionConfig cfg;
  cfg.random_probes = 1;
  return cfg;
}

bool satisfies_k_normal(Index n, const std::vector<Index>& dims) {
  if (dims.empty()) return false;
  const Index k = *std::max_element(dims.begin(), dims.end());
  Index full = 0;
  Index rest = 0;
  for (Index d : dims) {
    if (d == k)
      ++full;
    else
      rest += d;
  }
  return full == n / k && rest == n % k && full * k + rest == n;
}

double normality_residual(const ComplexMatrix& A) {
  const ComplexMatrix C = A.adjoint() * A - A * A.adjoint();
  return C.norm() / std::max(1.0, A.squaredNorm());
}

KNormalityProfile classify_k_normal(const ComplexMatrix& A, const StaticDecomposition& dec) {
  KNormalityProfile p;
  p.n = A.rows();
  p.block_dims = dec.block_dims;
  p.k = *std::max_element(p.block_dims.begin(), p.block_dims.end());
  p.is_k_normal = satisfies_k_normal(p.n, p.block_dims);
  p.normal = p.k == 1;
  p.commutator_residual = normality_residual(A);
  p.commutator_normal = p.commutator_residual <= default_unitary_tol(p.n);
  return p;
}

KNormalityProfile classify_k_normal(const ComplexMatrix& A, const FlowDecompositionConfig& cfg) {
  return classify_k_normal(A, decompose_static(A, cfg));
}

}  // namespace mbd
