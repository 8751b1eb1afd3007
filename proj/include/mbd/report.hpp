#pragma once

#include <optional>
#include <vector>

#include "mbd/partition.hpp"
#include "mbd/pattern.hpp"
#include "mbd/transform.hpp"

namespace mbd {

enum class WarningCode {
  large_norm,                 // payload: the offending Frobenius norm
  ill_conditioned_transform,  // payload: condition estimate of the transform
  trivial_partition,          // payload: dimension n
  all_rows_saturated,         // payload: dimension n
};

const char* to_string(WarningCode code);
std::optional<WarningCode> warning_from_string(std::string_view s);

struct Warning {
  WarningCode code;
  double value = 0.0;

  bool operator==(const Warning&) const = default;
};

// Answer to "is this flow (or matrix) decomposable by one constant
// similarity, and how".
struct DecompositionReport {
  BlockPartition partition;
  // Anchor eigenvectors with columns re-sorted into partition order.
  ComplexMatrix transform;
  TransformKind transform_kind = TransformKind::unitary;
  // Largest off-block magnitude of transform^{-1} A(t) transform over the
  // samples used; 0 when there is a single block.
  double residual = 0.0;
  // Largest single spy cutoff (Threshold::resolve) over those samples.
  double tolerance = 0.0;
  // Largest off-block |entry| / entry cutoff over those samples; at most 1
  // by construction, 0 with a single block.
  double residual_ratio = 0.0;
  std::vector<Warning> warnings;
  // Anchor first, then probes in evaluation order.
  std::vector<Parameter> samples_used;
  // Number of all-true rows in the combined single-cutoff probe pattern.
  Index saturated_rows = 0;
  // Anchor eigenvalues in transform column order.
  ComplexVector anchor_values;
  // Rounding model data in transform column order (see RoundingModel);
  // with the transform they rebuild the entry-wise cutoffs for verification.
  Eigen::MatrixXd anchor_separation;
  double anchor_norm = 0.0;
  // Columns sharing a label span one invariant subspace of a numerically
  // coalesced eigenvalue cluster (orthonormal basis instead of eigenvectors).
  std::vector<Index> anchor_clusters;
  // Chain mode: the partition found on each anchor -> probe link.
  std::vector<BlockPartition> chain_links;
  // Spy stages, all in anchor eigenvector order: anchor pattern, combined
  // probe pattern (entry-wise cutoffs) and combined single-cutoff pattern.
  PatternMatrix anchor_pattern;
  PatternMatrix probe_pattern;
  PatternMatrix raw_probe_pattern;

  bool decomposable() const { return partition.block_count() > 1; }
  bool has_warning(WarningCode code) const;
  std::vector<BlockDim> block_dims() const { return partition.block_dims(); }
};

}  // namespace mbd
