#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mbd/costmodel.hpp"
#include "mbd/flowdec.hpp"
#include "mbd/staticdec.hpp"

namespace mbd::io {

inline constexpr const char* report_schema = "mbd.run_report";
inline constexpr int report_version = 1;

struct InputDescriptor {
  std::string source;  // gallery-flow, directory, gallery-static, file
  std::string spec;    // spec text, path or family name
  Index n = 0;
  std::string kind;    // hermitean or general

  bool operator==(const InputDescriptor&) const = default;
};

struct ConfigEcho {
  std::optional<Parameter> anchor;
  std::vector<Parameter> probes;
  int random_probes = 3;
  std::string mode = "star";
  std::optional<double> relative_tol;
  std::optional<double> absolute_tol;
  bool rounding_model = true;
  bool strict_grouping = false;
  std::uint64_t seed = 1;
  double norm_warn = 1e8;
  int threads = 1;

  static ConfigEcho from(const FlowDecompositionConfig& cfg);
  bool operator==(const ConfigEcho&) const = default;
};

struct VerificationSummary {
  int probes = 0;
  bool verified = false;
  double max_residual = 0.0;
  double max_ratio = 0.0;

  bool operator==(const VerificationSummary&) const = default;
};

struct KNormalitySummary {
  Index k = 0;
  bool is_k_normal = false;
  bool normal = false;
  bool commutator_normal = false;
  double commutator_residual = 0.0;

  static KNormalitySummary from(const KNormalityProfile& p);
  bool operator==(const KNormalitySummary&) const = default;
};

struct BenchSummary {
  double t_dense = 0.0;
  double t_decomposed = 0.0;
  double eigenvalue_agreement = 0.0;
  double savings_fraction = 0.0;
  int repetitions = 0;

  bool operator==(const BenchSummary&) const = default;
};

struct Timings {
  double decompose_seconds = 0.0;
  double total_seconds = 0.0;

  bool operator==(const Timings&) const = default;
};

// Everything one CLI run reports. Serialized as JSON carrying the schema
// name and version; parsing rejects unknown or missing fields.
struct RunReport {
  std::string command;
  InputDescriptor input;
  ConfigEcho config;
  std::vector<BlockDim> block_dims;
  // Original (anchor eigenvector) indices of each block, in block order.
  std::vector<std::vector<Index>> groups;
  double residual = 0.0;
  double tolerance = 0.0;
  double residual_ratio = 0.0;
  Index saturated_rows = 0;
  std::vector<Parameter> samples_used;
  std::vector<Warning> warnings;
  std::optional<ComplexMatrix> transform;
  std::optional<ComplexMatrix> block_diagonal;
  std::optional<KNormalitySummary> k_normality;
  std::optional<VerificationSummary> verification;
  std::optional<BenchSummary> bench;
  Timings timings;
};

bool operator==(const RunReport& a, const RunReport& b);

// Fills the decomposition fields; the transform only when requested.
void fill_from_decomposition(RunReport& r, const DecompositionReport& report, bool with_transform);

// "7 4 3 2(J) 1"
std::string format_block_dims(const std::vector<BlockDim>& dims);

std::string to_json(const RunReport& r, int indent = 2);
RunReport parse_run_report(const std::string& text);

}  // namespace mbd::io
