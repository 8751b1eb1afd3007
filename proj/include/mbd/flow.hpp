#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "mbd/types.hpp"

namespace mbd {

enum class FlowKind { hermitean, general };

const char* to_string(FlowKind kind);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

// Either a real interval or an explicit list of (possibly complex) parameters.
using FlowDomain = std::variant<Interval, std::vector<Parameter>>;

// A 1-parameter family t -> A(t) of n x n matrices.
//
// Samplers may be stateful (blocks redrawn on every call), so one MatrixFlow
// instance must be used from a single thread at a time.
class MatrixFlow {
 public:
  using Sampler = std::function<ComplexMatrix(Parameter)>;

  MatrixFlow(Index n, FlowKind kind, FlowDomain domain, Sampler sampler, bool accepts_complex = false);

  Index dimension() const { return n_; }
  FlowKind kind() const { return kind_; }
  const FlowDomain& domain() const { return domain_; }
  // Whether off-axis parameters may be used when probing an interval flow.
  bool accepts_complex() const { return accepts_complex_; }

  double hermitean_tol() const { return hermitean_tol_; }
  void set_hermitean_tol(double tol) { hermitean_tol_ = tol; }

  // Evaluates and validates one sample: size n x n, finite entries, and
  // hermitean within hermitean_tol for hermitean flows.
  ComplexMatrix sample(Parameter t) const;
  ComplexMatrix operator()(Parameter t) const { return sample(t); }

 private:
  Index n_;
  FlowKind kind_;
  FlowDomain domain_;
  Sampler sampler_;
  bool accepts_complex_;
  double hermitean_tol_;
};

}  // namespace mbd
