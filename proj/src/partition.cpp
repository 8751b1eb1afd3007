#include "mbd/partition.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace mbd {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(Index n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), Index{0});
  }

  Index find(Index i) {
    while (parent_[static_cast<std::size_t>(i)] != i) {
      auto& p = parent_[static_cast<std::size_t>(i)];
      p = parent_[static_cast<std::size_t>(p)];
      i = p;
    }
    return i;
  }

  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }

 private:
  std::vector<Index> parent_;
};

std::vector<std::vector<Index>> collect(DisjointSets& sets, Index n, const std::vector<bool>& include) {
  std::map<Index, std::vector<Index>> by_root;
  for (Index i = 0; i < n; ++i)
    if (include[static_cast<std::size_t>(i)]) by_root[sets.find(i)].push_back(i);
  std::vector<std::vector<Index>> groups;
  groups.reserve(by_root.size());
  for (auto& [root, members] : by_root) groups.push_back(std::move(members));
  return groups;
}

bool rows_equal(const PatternMatrix& P, Index a, Index b) {
  for (Index j = 0; j < P.size(); ++j)
    if (P(a, j) != P(b, j)) return false;
  return true;
}

}  // namespace

std::string to_string(const BlockDim& d) { return std::to_string(d.dim) + (d.jordan ? "(J)" : ""); }

BlockPartition::BlockPartition(Index n, std::vector<std::vector<Index>> groups, std::vector<bool> jordan) : n_(n) {
  if (n < 1) throw Error(ErrorCode::invalid_config, "partition of an empty index set");
  if (groups.empty()) throw Error(ErrorCode::invalid_config, "partition needs at least one group");
  if (jordan.empty()) jordan.assign(groups.size(), false);
  if (jordan.size() != groups.size()) throw Error(ErrorCode::size_mismatch, "one jordan flag per group");

  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  Index total = 0;
  for (auto& g : groups) {
    if (g.empty()) throw Error(ErrorCode::invalid_config, "empty group in partition");
    std::sort(g.begin(), g.end());
    for (Index i : g) {
      if (i < 0 || i >= n) throw Error(ErrorCode::invalid_config, "group index out of range");
      if (seen[static_cast<std::size_t>(i)]) throw Error(ErrorCode::invalid_config, "groups overlap");
      seen[static_cast<std::size_t>(i)] = true;
    }
    total += static_cast<Index>(g.size());
  }
  if (total != n) throw Error(ErrorCode::invalid_config, "groups do not cover the index set");

  std::vector<std::size_t> order(groups.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (groups[a].size() != groups[b].size()) return groups[a].size() > groups[b].size();
    return groups[a].front() < groups[b].front();
  });
  groups_.reserve(groups.size());
  for (std::size_t k : order) {
    groups_.push_back(std::move(groups[k]));
    jordan_.push_back(jordan[k]);
  }
}

BlockPartition BlockPartition::trivial(Index n) {
  std::vector<Index> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), Index{0});
  return BlockPartition(n, {std::move(all)});
}

BlockPartition BlockPartition::singletons(Index n) {
  std::vector<std::vector<Index>> groups;
  for (Index i = 0; i < n; ++i) groups.push_back({i});
  return BlockPartition(n, std::move(groups));
}

std::vector<Index> BlockPartition::permutation() const {
  std::vector<Index> perm;
  perm.reserve(static_cast<std::size_t>(n_));
  for (const auto& g : groups_) perm.insert(perm.end(), g.begin(), g.end());
  return perm;
}

std::vector<Index> BlockPartition::dims() const {
  std::vector<Index> d;
  for (const auto& g : groups_) d.push_back(static_cast<Index>(g.size()));
  return d;
}

std::vector<BlockDim> BlockPartition::block_dims() const {
  std::vector<BlockDim> d;
  for (std::size_t k = 0; k < groups_.size(); ++k) d.push_back({static_cast<Index>(groups_[k].size()), jordan_[k]});
  return d;
}

std::vector<Index> BlockPartition::labels() const {
  std::vector<Index> label(static_cast<std::size_t>(n_), 0);
  for (std::size_t k = 0; k < groups_.size(); ++k)
    for (Index i : groups_[k]) label[static_cast<std::size_t>(i)] = static_cast<Index>(k);
  return label;
}

BlockPartition group_rows_hermitean(const PatternMatrix& P, bool strict) {
  const Index n = P.size();
  const PatternMatrix S = P.symmetrized();
  DisjointSets sets(n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      if (!S(i, j)) continue;
      if (!strict || rows_equal(S, i, j)) sets.unite(i, j);
    }
  return BlockPartition(n, collect(sets, n, std::vector<bool>(static_cast<std::size_t>(n), true)));
}

GeneralGrouping group_rows_general(const PatternMatrix& P, bool strict) {
  const Index n = P.size();
  GeneralGrouping out;

  std::vector<bool> saturated(static_cast<std::size_t>(n), false);
  for (Index i = 0; i < n; ++i)
    if (P.row_all_true(i)) {
      saturated[static_cast<std::size_t>(i)] = true;
      out.saturated_rows.push_back(i);
    }

  if (n > 1 && static_cast<Index>(out.saturated_rows.size()) == n) {
    out.all_rows_saturated = true;
    out.partition = BlockPartition::trivial(n);
    return out;
  }

  // Edges come only from informative rows: row r links r to every column it
  // reaches. Saturated indices are attached through those columns.
  DisjointSets sets(n);
  for (Index r = 0; r < n; ++r) {
    if (saturated[static_cast<std::size_t>(r)]) continue;
    for (Index j = 0; j < n; ++j) {
      if (j == r || !P(r, j)) continue;
      if (strict && !saturated[static_cast<std::size_t>(j)] && !rows_equal(P, r, j)) continue;
      sets.unite(r, j);
    }
  }

  std::vector<bool> claimed(static_cast<std::size_t>(n), false);
  for (Index r = 0; r < n; ++r) {
    if (saturated[static_cast<std::size_t>(r)]) continue;
    claimed[static_cast<std::size_t>(sets.find(r))] = true;
  }
  // Saturated indices that no informative row reaches become one group.
  Index unclaimed_root = -1;
  for (Index i : out.saturated_rows) {
    if (claimed[static_cast<std::size_t>(sets.find(i))]) continue;
    if (unclaimed_root < 0)
      unclaimed_root = i;
    else
      sets.unite(unclaimed_root, i);
  }

  auto groups = collect(sets, n, std::vector<bool>(static_cast<std::size_t>(n), true));
  std::vector<bool> jordan(groups.size(), false);
  for (std::size_t k = 0; k < groups.size(); ++k) {
    const auto& g = groups[k];
    Index first_informative = -1;
    for (Index i : g) {
      if (saturated[static_cast<std::size_t>(i)]) {
        jordan[k] = true;
        continue;
      }
      if (first_informative < 0)
        first_informative = i;
      else if (!rows_equal(P, first_informative, i))
        jordan[k] = true;  // zero sets differ inside the group
    }
  }
  out.partition = BlockPartition(n, std::move(groups), std::move(jordan));
  return out;
}

ComplexMatrix apply_partition(const ComplexMatrix& M, const BlockPartition& part) {
  if (M.rows() != part.size() || M.cols() != part.size())
    throw Error(ErrorCode::size_mismatch, "matrix and partition sizes differ");
  const auto perm = part.permutation();
  const Index n = part.size();
  ComplexMatrix out(n, n);
  for (Index b = 0; b < n; ++b)
    for (Index a = 0; a < n; ++a)
      out(a, b) = M(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]);
  return out;
}

double offblock_residual(const ComplexMatrix& M, const BlockPartition& part) {
  if (M.rows() != part.size() || M.cols() != part.size())
    throw Error(ErrorCode::size_mismatch, "matrix and partition sizes differ");
  if (part.block_count() == 1) return 0.0;
  const auto label = part.labels();
  double worst = 0.0;
  for (Index j = 0; j < M.cols(); ++j)
    for (Index i = 0; i < M.rows(); ++i)
      if (label[static_cast<std::size_t>(i)] != label[static_cast<std::size_t>(j)])
        worst = std::max(worst, std::abs(M(i, j)));
  return worst;
}

}  // namespace mbd
