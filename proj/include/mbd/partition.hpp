#pragma once

#include <string>
#include <vector>

#include "mbd/pattern.hpp"
#include "mbd/types.hpp"

namespace mbd {

// A block dimension as reported to users; jordan marks a summed group of
// merged Jordan blocks rather than one diagonalizable block.
struct BlockDim {
  Index dim = 0;
  bool jordan = false;

  bool operator==(const BlockDim&) const = default;
};

std::string to_string(const BlockDim& d);  // "7" or "2(J)"

// Partition of {0..n-1} into disjoint groups, kept in canonical order:
// decreasing size, ties broken by smallest member. Members of each group are
// ascending.
class BlockPartition {
 public:
  BlockPartition() = default;

  // Validates coverage and disjointness, then canonicalizes. jordan may be
  // empty (no group flagged) or one flag per group.
  BlockPartition(Index n, std::vector<std::vector<Index>> groups, std::vector<bool> jordan = {});

  static BlockPartition trivial(Index n);     // one group
  static BlockPartition singletons(Index n);  // n groups

  Index size() const { return n_; }
  Index block_count() const { return static_cast<Index>(groups_.size()); }
  const std::vector<std::vector<Index>>& groups() const { return groups_; }
  const std::vector<bool>& jordan_flags() const { return jordan_; }

  // Concatenation of the groups; entry k is the original index placed at k.
  std::vector<Index> permutation() const;
  std::vector<Index> dims() const;
  std::vector<BlockDim> block_dims() const;
  // group index of each original index
  std::vector<Index> labels() const;

  bool operator==(const BlockPartition&) const = default;

 private:
  Index n_ = 0;
  std::vector<std::vector<Index>> groups_;
  std::vector<bool> jordan_;
};

// Hermitean grouping: connected components of the symmetrized pattern graph.
// With strict = true, indices are grouped by literal equality of their
// symmetrized pattern rows instead.
BlockPartition group_rows_hermitean(const PatternMatrix& P, bool strict = false);

struct GeneralGrouping {
  BlockPartition partition;
  std::vector<Index> saturated_rows;  // rows that were entirely true
  bool all_rows_saturated = false;
};

// Jordan-aware grouping for general flows. Saturated (all-true) rows carry
// no structural information and are set aside; the remaining rows are grouped
// by connected components, and each set-aside index joins the group whose
// rows reach it. Unclaimed set-aside indices form one flagged group.
GeneralGrouping group_rows_general(const PatternMatrix& P, bool strict = false);

// P* M P for the permutation of part: entry (a, b) of the result is
// M(perm[a], perm[b]).
ComplexMatrix apply_partition(const ComplexMatrix& M, const BlockPartition& part);

// max |M(i,j)| over i, j in different groups; 0 for a single group.
double offblock_residual(const ComplexMatrix& M, const BlockPartition& part);

}  // namespace mbd
