#include "mbd/flow.hpp"

namespace mbd {

const char* to_string(FlowKind kind) { return kind == FlowKind::hermitean ? "hermitean" : "general"; }

MatrixFlow::MatrixFlow(Index n, FlowKind kind, FlowDomain domain, Sampler sampler, bool accepts_complex)
    : n_(n),
      kind_(kind),
      domain_(std::move(domain)),
      sampler_(std::move(sampler)),
      accepts_complex_(accepts_complex && kind == FlowKind::general),
      hermitean_tol_(default_hermitean_tol(n)) {
  if (n < 1) throw Error(ErrorCode::invalid_config, "flow dimension must be positive");
  if (!sampler_) throw Error(ErrorCode::invalid_config, "flow has no sampler");
  if (const auto* iv = std::get_if<Interval>(&domain_); iv && !(iv->lo < iv->hi))
    throw Error(ErrorCode::invalid_config, "empty flow interval");
  if (const auto* set = std::get_if<std::vector<Parameter>>(&domain_); set && set->empty())
    throw Error(ErrorCode::invalid_config, "empty flow sample set");
}

ComplexMatrix MatrixFlow::sample(Parameter t) const {
  ComplexMatrix M;
  try {
    M = sampler_(t);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::sampling_failed, e.what());
  }
  require_square_finite(M, "flow sample");
  if (M.rows() != n_)
    throw Error(ErrorCode::size_mismatch,
                "flow sample is " + std::to_string(M.rows()) + "x" + std::to_string(M.cols()) + ", expected " +
                    std::to_string(n_));
  if (kind_ == FlowKind::hermitean && !is_hermitean(M, hermitean_tol_))
    throw Error(ErrorCode::not_hermitean, "sample of a hermitean flow is not hermitean");
  return M;
}

}  // namespace mbd
