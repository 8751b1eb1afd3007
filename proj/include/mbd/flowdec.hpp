#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mbd/flow.hpp"
#include "mbd/pattern.hpp"
#include "mbd/report.hpp"

namespace mbd {

// star: every probe is read in the anchor's eigenbasis (one factorization).
// chain: anchor -> probe 1 -> probe 2 -> ..., re-factoring at each link.
enum class SamplingMode { star, chain };

const char* to_string(SamplingMode mode);

struct FlowDecompositionConfig {
  // Drawn from the flow domain with `seed` when unset.
  std::optional<Parameter> anchor;
  // Explicit probes; when empty, `random_probes` are drawn from the domain.
  std::vector<Parameter> probes;
  int random_probes = 3;
  SamplingMode mode = SamplingMode::star;
  Threshold threshold;
  bool strict_grouping = false;
  std::uint64_t seed = 1;
  double norm_warn = 1e8;
  // General flows: also flag groups whose anchor eigenvectors are numerically
  // dependent (condition above defective_condition) as Jordan groups.
  bool detect_defective_groups = true;
  double defective_condition = 1e6;
  // Without an explicit anchor, candidates are screened in the order
  // `preferred_anchors`, the drawn anchor, `anchor_candidates` further
  // draws. The one whose spectrum has the fewest near-coincident pairs (gap
  // below sqrt(eps) ||A||_F) wins, ties going to the earliest, and screening
  // stops at the first candidate without such pairs. Near-coincident
  // eigenvalues from different blocks make anchor eigenvectors mix.
  int anchor_candidates = 4;
  std::vector<Parameter> preferred_anchors;
  // Record the anchor's own spy pattern (stage (A)); costs one extra
  // transform and is not used by the grouping.
  bool record_anchor_pattern = true;
  // Threads for the probe kernel; 1 runs the serial reference path.
  int threads = 1;
};

// Anchor first, then probes. Random choices are a pure function of the
// flow domain, the config and its seed. Interval flows that accept complex
// parameters get one off-axis probe.
std::vector<Parameter> choose_parameters(const MatrixFlow& flow, const FlowDecompositionConfig& cfg);

// `count` parameters drawn from the flow domain (for verification probes).
std::vector<Parameter> random_parameters(const MatrixFlow& flow, int count, std::uint64_t seed);

// Unitary pipeline: eigenvectors of the anchor, spy patterns of the probes
// in that basis, connected-component grouping.
DecompositionReport decompose_hermitean_flow(const MatrixFlow& flow, const FlowDecompositionConfig& cfg);

// General pipeline: LU-based similarity by the anchor eigenvectors and
// Jordan-aware grouping.
DecompositionReport decompose_general_flow(const MatrixFlow& flow, const FlowDecompositionConfig& cfg);

// Dispatches on flow.kind().
DecompositionReport decompose_flow(const MatrixFlow& flow, const FlowDecompositionConfig& cfg);

// Largest off-block |entry| / cutoff of T^{-1} A T for the report's fixed
// transform T (columns in partition order). At most 1 means A splits into
// the report's blocks within rounding.
double offblock_ratio(const DecompositionReport& report, const ComplexMatrix& A, const Threshold& threshold = {});

// Same with T^{-1} A T already formed.
double offblock_ratio(const DecompositionReport& report, const ComplexMatrix& A, const ComplexMatrix& transformed,
                      const Threshold& threshold = {});

struct Verification {
  bool verified = false;
  double max_residual = 0.0;
  // max over probes and off-block entries of |entry| / cutoff
  double max_ratio = 0.0;
};

// Applies the report's fixed transform at each extra probe and checks that
// every off-block entry stays within its spy cutoff (entry-wise when the
// threshold uses the rounding model).
Verification verify_decomposition(const MatrixFlow& flow, const DecompositionReport& report,
                                  const std::vector<Parameter>& extra_probes, const Threshold& threshold = {});

}  // namespace mbd
