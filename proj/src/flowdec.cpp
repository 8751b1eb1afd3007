#include "mbd/flowdec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "mbd/eigsolve.hpp"
#include "mbd/kernels.hpp"

namespace mbd {

namespace {

constexpr double kComplexProbeMinImag = 0.1;
constexpr double kComplexProbeMaxImag = 0.5;

struct Link {
  EigResult eig;
  Similarity sim;
  std::vector<Index> clusters;
  Eigen::MatrixXd separation;
  std::vector<kernels::ProbeResult> probes;
  PatternMatrix combined;
  PatternMatrix raw_combined;
  GeneralGrouping grouping;
};

EigResult anchor_eig(const MatrixFlow& flow, const ComplexMatrix& anchor) {
  if (flow.kind() == FlowKind::hermitean) return eig_hermitean(anchor, flow.hermitean_tol());
  return eig_general(anchor);
}

Similarity make_similarity(TransformKind kind, const ComplexMatrix& T) {
  return kind == TransformKind::unitary ? Similarity::unitary(T) : Similarity::general(T);
}

PatternMatrix combine(const std::vector<kernels::ProbeResult>& probes, bool raw) {
  std::vector<PatternMatrix> patterns;
  patterns.reserve(probes.size());
  for (const auto& p : probes) patterns.push_back(raw ? p.raw_pattern : p.pattern);
  return combine_patterns(patterns);
}

std::vector<std::vector<Index>> members_by_label(const std::vector<Index>& labels) {
  std::vector<std::vector<Index>> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto l = static_cast<std::size_t>(labels[i]);
    if (out.size() <= l) out.resize(l + 1);
    out[l].push_back(static_cast<Index>(i));
  }
  return out;
}

// Eigenvector columns of each coalesced cluster replaced by an orthonormal
// basis of the cluster's invariant subspace.
ComplexMatrix cluster_basis(const ComplexMatrix& anchor, const EigResult& eig, const std::vector<Index>& clusters) {
  ComplexMatrix T = eig.vectors;
  std::optional<SchurForm> schur;
  for (const auto& members : members_by_label(clusters)) {
    if (members.size() < 2) continue;
    if (!schur) schur.emplace(anchor);
    std::vector<Complex> targets;
    for (Index i : members) targets.push_back(eig.values(i));
    const ComplexMatrix basis = schur->invariant_subspace(targets);
    for (std::size_t c = 0; c < members.size(); ++c) T.col(members[c]) = basis.col(static_cast<Index>(c));
  }
  return T;
}

// Pairwise separations for the rounding model: scalar gaps between single
// columns, Sylvester separations between cluster blocks B* A B.
Eigen::MatrixXd cluster_separation(const ComplexMatrix& anchor, const ComplexMatrix& T, const ComplexVector& values,
                                   const std::vector<Index>& clusters) {
  const auto groups = members_by_label(clusters);
  std::vector<ComplexMatrix> blocks;
  for (const auto& members : groups) {
    if (members.size() == 1) {
      blocks.push_back(ComplexMatrix::Constant(1, 1, values(members.front())));
      continue;
    }
    ComplexMatrix B(T.rows(), static_cast<Index>(members.size()));
    for (std::size_t c = 0; c < members.size(); ++c) B.col(static_cast<Index>(c)) = T.col(members[c]);
    blocks.push_back(B.adjoint() * anchor * B);
  }
  const Index n = T.cols();
  Eigen::MatrixXd sep(n, n);
  for (std::size_t c = 0; c < groups.size(); ++c)
    for (std::size_t d = 0; d < groups.size(); ++d) {
      const double value =
          c == d ? std::numeric_limits<double>::infinity() : sylvester_separation(blocks[c], blocks[d]);
      for (Index k : groups[c])
        for (Index l : groups[d]) sep(k, l) = value;
    }
  return sep;
}

// Rotates the columns of each hermitean cluster onto the eigenvectors of a
// random real combination of the probes compressed to the cluster. Pairs the
// combination separates get its eigenvalue gap as their separation.
ComplexMatrix refine_clusters(const ComplexMatrix& V, const std::vector<Index>& clusters,
                              std::span<const ComplexMatrix> probes, double factor, std::uint64_t seed,
                              Eigen::MatrixXd& separation) {
  std::mt19937_64 rng(seed ^ 0x5851f42d4c957f2dULL);
  std::uniform_real_distribution<double> weight(0.5, 1.5);
  ComplexMatrix S = ComplexMatrix::Zero(V.rows(), V.cols());
  for (const auto& P : probes) S += weight(rng) * P;
  const double radius = factor * std::max(1.0, S.norm());

  ComplexMatrix out = V;
  for (const auto& members : members_by_label(clusters)) {
    if (members.size() < 2) continue;
    const auto k = static_cast<Index>(members.size());
    ComplexMatrix B(V.rows(), k);
    for (Index c = 0; c < k; ++c) B.col(c) = V.col(members[static_cast<std::size_t>(c)]);
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(B.adjoint() * S * B);
    const ComplexMatrix rotated = B * es.eigenvectors();
    for (Index c = 0; c < k; ++c) out.col(members[static_cast<std::size_t>(c)]) = rotated.col(c);
    for (Index a = 0; a < k; ++a)
      for (Index b = 0; b < k; ++b) {
        if (a == b) continue;
        const double gap = std::abs(es.eigenvalues()(a) - es.eigenvalues()(b));
        separation(members[static_cast<std::size_t>(a)], members[static_cast<std::size_t>(b)]) =
            gap > radius ? gap : std::numeric_limits<double>::infinity();
      }
  }
  return out;
}

// Groups that receive a row saturated under the single cutoff, or a
// coalesced cluster with ill-conditioned eigenvectors, are Jordan groups.
BlockPartition flag_jordan_groups(const BlockPartition& part, const PatternMatrix& raw, const std::vector<Index>& clusters,
                                  const Eigen::VectorXd& eig_conditions, double defective_condition) {
  auto jordan = part.jordan_flags();
  const auto labels = part.labels();
  auto mark = [&](Index i) { jordan[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])] = true; };
  for (Index i = 0; i < raw.size(); ++i)
    if (raw.row_all_true(i)) mark(i);
  for (const auto& members : members_by_label(clusters)) {
    if (members.size() < 2) continue;
    double worst = 0.0;
    for (Index i : members) worst = std::max(worst, eig_conditions(i));
    if (worst > defective_condition)
      for (Index i : members) mark(i);
  }
  return BlockPartition(part.size(), part.groups(), std::move(jordan));
}

Link run_link(const MatrixFlow& flow, const ComplexMatrix& base, std::span<const ComplexMatrix> probes,
              const FlowDecompositionConfig& cfg) {
  const auto kind = flow.kind() == FlowKind::hermitean ? TransformKind::unitary : TransformKind::general;
  EigResult eig = anchor_eig(flow, base);
  Similarity eig_sim = make_similarity(kind, eig.vectors);
  const double anchor_norm = base.norm();
  const Index n = base.rows();

  auto context = [&](const Similarity& sim, const Eigen::MatrixXd& separation) {
    kernels::ProbeContext ctx{sim, cfg.threshold, std::nullopt};
    if (cfg.threshold.uses_model()) ctx.model = RoundingModel{separation, anchor_norm, sim.row_scales()};
    return ctx;
  };

  // Probing in the plain eigenvector basis gives the single-cutoff pattern
  // in which defective directions show up as saturated rows.
  Eigen::MatrixXd gaps = RoundingModel::eigenvalue_gaps(eig.values);
  auto eig_probes = kernels::probe(context(eig_sim, gaps), probes, cfg.threads);
  PatternMatrix raw = combine(eig_probes, true);

  std::vector<Index> clusters(static_cast<std::size_t>(n));
  std::iota(clusters.begin(), clusters.end(), Index{0});
  if (cfg.threshold.uses_model())
    clusters = coalesced_clusters(eig.values, eig_sim.row_scales(), cfg.threshold.factor(n) * anchor_norm);
  const bool coalesced = static_cast<Index>(members_by_label(clusters).size()) < n;

  Link link{std::move(eig), std::move(eig_sim), std::move(clusters), std::move(gaps), std::move(eig_probes), {},
            std::move(raw), {}};
  if (coalesced) {
    if (kind == TransformKind::general) {
      // Eigenvectors of a coalesced cluster are unusable; take an orthonormal
      // basis of its invariant subspace.
      link.sim = Similarity::general(cluster_basis(base, link.eig, link.clusters));
      link.separation = cluster_separation(base, link.sim.transform(), link.eig.values, link.clusters);
    } else {
      // Any basis of a (near) degenerate eigenspace is as good as another at
      // the anchor; pick the one that diagonalizes the probes there.
      link.separation = cluster_separation(base, link.eig.vectors, link.eig.values, link.clusters);
      link.sim = Similarity::unitary(
          refine_clusters(link.eig.vectors, link.clusters, probes, cfg.threshold.factor(n), cfg.seed, link.separation));
    }
    link.probes = kernels::probe(context(link.sim, link.separation), probes, cfg.threads);
  }
  link.combined = combine(link.probes, false);
  return link;
}

void group_link(Link& link, const MatrixFlow& flow, const FlowDecompositionConfig& cfg) {
  if (flow.kind() == FlowKind::hermitean) {
    link.grouping.partition = group_rows_hermitean(link.combined, cfg.strict_grouping);
    return;
  }
  link.grouping = group_rows_general(link.combined, cfg.strict_grouping);
  if (link.grouping.all_rows_saturated) return;
  const Eigen::VectorXd conditions = make_similarity(TransformKind::general, link.eig.vectors).row_scales();
  link.grouping.partition =
      flag_jordan_groups(link.grouping.partition, link.raw_combined, link.clusters, conditions, cfg.defective_condition);
}

// Largest |M(i,j)| / cutoff(i,j) over off-block entries.
double offblock_ratio(const ComplexMatrix& M, const Eigen::MatrixXd& cutoffs, const std::vector<Index>& labels) {
  double worst = 0.0;
  for (Index j = 0; j < M.cols(); ++j)
    for (Index i = 0; i < M.rows(); ++i) {
      if (labels[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(j)]) continue;
      const double mag = std::abs(M(i, j));
      const double cut = cutoffs(i, j);
      worst = std::max(worst, cut > 0.0 ? mag / cut : (mag > 0.0 ? std::numeric_limits<double>::infinity() : 0.0));
    }
  return worst;
}

// Block labels of the transform columns, which are already in partition
// order: block k is the k-th consecutive index range.
std::vector<Index> ordered_labels(const BlockPartition& partition) {
  std::vector<Index> labels;
  Index label = 0;
  for (Index d : partition.dims()) {
    labels.insert(labels.end(), static_cast<std::size_t>(d), label);
    ++label;
  }
  return labels;
}

Eigen::MatrixXd cutoffs_for(const ComplexMatrix& M, double sample_norm, const Threshold& threshold,
                            const std::optional<RoundingModel>& model) {
  if (model) return model->cutoffs(M, sample_norm, threshold.factor(M.rows()));
  return Eigen::MatrixXd::Constant(M.rows(), M.cols(), threshold.resolve(M));
}

// Columns of a defective eigenspace come back nearly parallel; flag groups
// whose eigenvector columns are numerically dependent.
BlockPartition flag_defective_groups(const BlockPartition& part, const ComplexMatrix& vectors, double limit) {
  auto jordan = part.jordan_flags();
  bool changed = false;
  for (std::size_t k = 0; k < part.groups().size(); ++k) {
    const auto& g = part.groups()[k];
    if (jordan[k] || g.size() < 2) continue;
    ComplexMatrix cols(vectors.rows(), static_cast<Index>(g.size()));
    for (std::size_t c = 0; c < g.size(); ++c) cols.col(static_cast<Index>(c)) = vectors.col(g[c]);
    const Eigen::VectorXd sv = Eigen::BDCSVD<ComplexMatrix>(cols).singularValues();
    const double smallest = sv(sv.size() - 1);
    if (smallest <= 0.0 || sv(0) / smallest > limit) {
      jordan[k] = true;
      changed = true;
    }
  }
  if (!changed) return part;
  return BlockPartition(part.size(), part.groups(), std::move(jordan));
}

Parameter draw_from(const MatrixFlow& flow, std::mt19937_64& rng, bool off_axis) {
  if (const auto* iv = std::get_if<Interval>(&flow.domain())) {
    std::uniform_real_distribution<double> re(iv->lo, iv->hi);
    const double real = re(rng);
    if (!off_axis) return {real, 0.0};
    std::uniform_real_distribution<double> im(kComplexProbeMinImag, kComplexProbeMaxImag);
    std::bernoulli_distribution sign(0.5);
    const double imag = im(rng);
    return {real, sign(rng) ? imag : -imag};
  }
  const auto& set = std::get<std::vector<Parameter>>(flow.domain());
  std::uniform_int_distribution<std::size_t> pick(0, set.size() - 1);
  return set[pick(rng)];
}

bool in_sample_set(const std::vector<Parameter>& set, Parameter t) {
  return std::any_of(set.begin(), set.end(), [&](Parameter s) { return std::abs(s - t) <= 1e-12 * std::max(1.0, std::abs(t)); });
}

Index near_coincident_pairs(const MatrixFlow& flow, const ComplexMatrix& A) {
  ComplexVector values;
  if (flow.kind() == FlowKind::hermitean)
    values = eigenvalues_hermitean(A).cast<Complex>();
  else
    values = eigenvalues_general(A);
  const double limit = std::sqrt(machine_epsilon) * std::max(1.0, A.norm());
  Index count = 0;
  for (Index i = 0; i < values.size(); ++i)
    for (Index j = i + 1; j < values.size(); ++j) count += std::abs(values(i) - values(j)) <= limit ? 1 : 0;
  return count;
}

// Replaces a drawn anchor by the best screened candidate.
void screen_anchor(const MatrixFlow& flow, const FlowDecompositionConfig& cfg, std::vector<Parameter>& params,
                   std::vector<ComplexMatrix>& samples) {
  // Preferred anchors first, then the drawn one, then further draws.
  std::vector<Parameter> candidates;
  for (const auto& t : cfg.preferred_anchors)
    if (std::find(params.begin() + 1, params.end(), t) == params.end()) candidates.push_back(t);
  candidates.push_back(params.front());
  std::mt19937_64 rng(cfg.seed ^ 0xd1b54a32d192ed03ULL);
  for (int k = 0; k < cfg.anchor_candidates; ++k) {
    const Parameter t = draw_from(flow, rng, false);
    if (std::find(params.begin() + 1, params.end(), t) == params.end()) candidates.push_back(t);
  }

  Index best = -1;
  for (const auto& t : candidates) {
    ComplexMatrix A = t == params.front() ? samples.front() : flow.sample(t);
    const Index score = near_coincident_pairs(flow, A);
    if (best < 0 || score < best) {
      best = score;
      params.front() = t;
      samples.front() = std::move(A);
    }
    if (best == 0) return;
  }
}

DecompositionReport decompose_impl(const MatrixFlow& flow, const FlowDecompositionConfig& cfg) {
  auto params = choose_parameters(flow, cfg);

  std::vector<ComplexMatrix> samples;
  samples.reserve(params.size());
  for (const auto& t : params) samples.push_back(flow.sample(t));
  if (!cfg.anchor) screen_anchor(flow, cfg, params, samples);

  DecompositionReport report;
  report.samples_used = params;
  report.transform_kind = flow.kind() == FlowKind::hermitean ? TransformKind::unitary : TransformKind::general;

  double worst_norm = 0.0;
  for (const auto& s : samples) worst_norm = std::max(worst_norm, s.norm());
  if (worst_norm > cfg.norm_warn) report.warnings.push_back({WarningCode::large_norm, worst_norm});

  std::size_t base = 0;
  if (cfg.mode == SamplingMode::chain) {
    // Each link reads the next sample in the eigenbasis of the current one.
    std::size_t coarsest = 0;
    for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
      auto link = run_link(flow, samples[k], std::span(samples).subspan(k + 1, 1), cfg);
      group_link(link, flow, cfg);
      report.chain_links.push_back(link.grouping.partition);
      if (link.grouping.partition.block_count() < report.chain_links[coarsest].block_count()) coarsest = k;
    }
    base = coarsest;
  }

  // Final pass: every other sample read in the basis of sample `base`.
  std::vector<ComplexMatrix> others;
  for (std::size_t k = 0; k < samples.size(); ++k)
    if (k != base) others.push_back(samples[k]);
  Link link = run_link(flow, samples[base], others, cfg);
  group_link(link, flow, cfg);

  BlockPartition partition = link.grouping.partition;
  if (flow.kind() == FlowKind::general && cfg.detect_defective_groups && !link.grouping.all_rows_saturated)
    partition = flag_defective_groups(partition, link.eig.vectors, cfg.defective_condition);

  report.partition = partition;
  Index saturated = 0;
  for (Index i = 0; i < link.raw_combined.size(); ++i) saturated += link.raw_combined.row_all_true(i) ? 1 : 0;
  report.saturated_rows = saturated;
  report.probe_pattern = link.combined;
  report.raw_probe_pattern = link.raw_combined;

  std::optional<RoundingModel> model;
  if (cfg.threshold.uses_model())
    model = RoundingModel{link.separation, samples[base].norm(), link.sim.row_scales()};
  if (cfg.record_anchor_pattern) {
    const ComplexMatrix anchor_t = link.sim.apply(samples[base]);
    report.anchor_pattern = threshold_pattern(anchor_t, cutoffs_for(anchor_t, samples[base].norm(), cfg.threshold, model));
  }

  const auto perm = partition.permutation();
  const auto& V = link.sim.transform();
  report.transform.resize(V.rows(), V.cols());
  report.anchor_values.resize(V.cols());
  report.anchor_clusters.resize(perm.size());
  report.anchor_separation.resize(V.cols(), V.cols());
  for (std::size_t k = 0; k < perm.size(); ++k) {
    report.transform.col(static_cast<Index>(k)) = V.col(perm[k]);
    report.anchor_values(static_cast<Index>(k)) = link.eig.values(perm[k]);
    report.anchor_clusters[k] = link.clusters[static_cast<std::size_t>(perm[k])];
    for (std::size_t l = 0; l < perm.size(); ++l)
      report.anchor_separation(static_cast<Index>(k), static_cast<Index>(l)) = link.separation(perm[k], perm[l]);
  }
  report.anchor_norm = samples[base].norm();

  const auto labels = partition.labels();
  for (const auto& p : link.probes) {
    report.residual = std::max(report.residual, offblock_residual(p.transformed, partition));
    report.tolerance = std::max(report.tolerance, p.raw_pattern.tolerance());
    report.residual_ratio = std::max(
        report.residual_ratio,
        offblock_ratio(p.transformed, p.cutoffs, labels));
  }

  if (link.sim.ill_conditioned())
    report.warnings.push_back({WarningCode::ill_conditioned_transform, link.sim.condition_estimate()});
  if (link.grouping.all_rows_saturated)
    report.warnings.push_back({WarningCode::all_rows_saturated, static_cast<double>(flow.dimension())});
  if (partition.block_count() == 1)
    report.warnings.push_back({WarningCode::trivial_partition, static_cast<double>(flow.dimension())});
  return report;
}

}  // namespace

const char* to_string(SamplingMode mode) { return mode == SamplingMode::star ? "star" : "chain"; }

const char* to_string(WarningCode code) {
  switch (code) {
    case WarningCode::large_norm: return "large_norm";
    case WarningCode::ill_conditioned_transform: return "ill_conditioned_transform";
    case WarningCode::trivial_partition: return "trivial_partition";
    case WarningCode::all_rows_saturated: return "all_rows_saturated";
  }
  return "unknown";
}

std::optional<WarningCode> warning_from_string(std::string_view s) {
  for (auto c : {WarningCode::large_norm, WarningCode::ill_conditioned_transform, WarningCode::trivial_partition,
                 WarningCode::all_rows_saturated})
    if (s == to_string(c)) return c;
  return std::nullopt;
}

bool DecompositionReport::has_warning(WarningCode code) const {
  return std::any_of(warnings.begin(), warnings.end(), [&](const Warning& w) { return w.code == code; });
}

std::vector<Parameter> random_parameters(const MatrixFlow& flow, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Parameter> out;
  for (int k = 0; k < count; ++k) out.push_back(draw_from(flow, rng, false));
  return out;
}

std::vector<Parameter> choose_parameters(const MatrixFlow& flow, const FlowDecompositionConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::vector<Parameter> out;

  if (const auto* set = std::get_if<std::vector<Parameter>>(&flow.domain())) {
    if (cfg.anchor && !in_sample_set(*set, *cfg.anchor))
      throw Error(ErrorCode::invalid_config, "anchor is not one of the flow's sample parameters");
    for (const auto& p : cfg.probes)
      if (!in_sample_set(*set, p)) throw Error(ErrorCode::invalid_config, "probe is not one of the flow's sample parameters");
  }

  out.push_back(cfg.anchor ? *cfg.anchor : draw_from(flow, rng, false));

  if (!cfg.probes.empty()) {
    out.insert(out.end(), cfg.probes.begin(), cfg.probes.end());
  } else if (const auto* set = std::get_if<std::vector<Parameter>>(&flow.domain())) {
    std::vector<Parameter> rest;
    for (const auto& s : *set)
      if (s != out.front()) rest.push_back(s);
    std::shuffle(rest.begin(), rest.end(), rng);
    const auto take = std::min<std::size_t>(rest.size(), static_cast<std::size_t>(std::max(cfg.random_probes, 0)));
    out.insert(out.end(), rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(take));
  } else {
    for (int k = 0; k < cfg.random_probes; ++k) {
      const bool off_axis = flow.accepts_complex() && k == cfg.random_probes - 1;
      out.push_back(draw_from(flow, rng, off_axis));
    }
  }

  if (out.size() < 2) throw Error(ErrorCode::invalid_config, "at least one probe distinct from the anchor is required");
  for (std::size_t k = 1; k < out.size(); ++k)
    if (out[k] == out.front()) throw Error(ErrorCode::invalid_config, "probe coincides with the anchor");
  return out;
}

DecompositionReport decompose_hermitean_flow(const MatrixFlow& flow, const FlowDecompositionConfig& cfg) {
  if (flow.kind() != FlowKind::hermitean) throw Error(ErrorCode::invalid_config, "flow is not tagged hermitean");
  return decompose_impl(flow, cfg);
}

DecompositionReport decompose_general_flow(const MatrixFlow& flow, const FlowDecompositionConfig& cfg) {
  if (flow.kind() != FlowKind::general) throw Error(ErrorCode::invalid_config, "flow is not tagged general");
  return decompose_impl(flow, cfg);
}

DecompositionReport decompose_flow(const MatrixFlow& flow, const FlowDecompositionConfig& cfg) {
  return decompose_impl(flow, cfg);
}

double offblock_ratio(const DecompositionReport& report, const ComplexMatrix& A, const Threshold& threshold) {
  const Similarity sim = make_similarity(report.transform_kind, report.transform);
  return offblock_ratio(report, A, sim.apply(A), threshold);
}

double offblock_ratio(const DecompositionReport& report, const ComplexMatrix& A, const ComplexMatrix& transformed,
                      const Threshold& threshold) {
  std::optional<RoundingModel> model;
  if (threshold.uses_model()) {
    if (report.anchor_separation.rows() != report.transform.cols())
      throw Error(ErrorCode::size_mismatch, "report carries no rounding model data");
    const Eigen::VectorXd scales = report.transform_kind == TransformKind::unitary
                                       ? Eigen::VectorXd::Ones(report.transform.cols())
                                       : make_similarity(report.transform_kind, report.transform).row_scales();
    model = RoundingModel{report.anchor_separation, report.anchor_norm, scales};
  }
  return offblock_ratio(transformed, cutoffs_for(transformed, A.norm(), threshold, model),
                        ordered_labels(report.partition));
}

Verification verify_decomposition(const MatrixFlow& flow, const DecompositionReport& report,
                                  const std::vector<Parameter>& extra_probes, const Threshold& threshold) {
  const Similarity sim = make_similarity(report.transform_kind, report.transform);
  const auto labels = ordered_labels(report.partition);
  Verification out;
  for (const auto& t : extra_probes) {
    const ComplexMatrix A = flow.sample(t);
    const ComplexMatrix M = sim.apply(A);
    double residual = 0.0;
    for (Index j = 0; j < M.cols(); ++j)
      for (Index i = 0; i < M.rows(); ++i)
        if (labels[static_cast<std::size_t>(i)] != labels[static_cast<std::size_t>(j)])
          residual = std::max(residual, std::abs(M(i, j)));
    out.max_residual = std::max(out.max_residual, residual);
    out.max_ratio = std::max(out.max_ratio, offblock_ratio(report, A, threshold));
  }
  out.verified = out.max_ratio <= 1.0;
  return out;
}

}  // namespace mbd
