#include "mbd/io/run_report.hpp"

#include <cmath>
#include <limits>
#include <set>

#include <json.hpp>

namespace mbd::io {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::parse_error, "run report: " + what); }

// JSON has no inf/nan; those travel as strings.
json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double to_double(const json& j, const char* key) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  fail(std::string("field '") + key + "' is not a number");
}

json complex_json(Complex z) { return json::array({number(z.real()), number(z.imag())}); }

Complex to_complex(const json& j, const char* key) {
  if (!j.is_array() || j.size() != 2) fail(std::string("field '") + key + "' is not a [re, im] pair");
  return {to_double(j[0], key), to_double(j[1], key)};
}

json complex_list(const std::vector<Parameter>& v) {
  json out = json::array();
  for (const auto& z : v) out.push_back(complex_json(z));
  return out;
}

std::vector<Parameter> to_complex_list(const json& j, const char* key) {
  if (!j.is_array()) fail(std::string("field '") + key + "' is not an array");
  std::vector<Parameter> out;
  for (const auto& z : j) out.push_back(to_complex(z, key));
  return out;
}

json matrix_json(const ComplexMatrix& M) {
  json rows = json::array();
  for (Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < M.cols(); ++j) row.push_back(complex_json(M(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix to_matrix(const json& j, const char* key) {
  if (!j.is_array()) fail(std::string("field '") + key + "' is not a matrix");
  const auto rows = static_cast<Index>(j.size());
  const auto cols = rows ? static_cast<Index>(j[0].size()) : 0;
  ComplexMatrix M(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) fail(std::string("ragged matrix '") + key + "'");
    for (Index c = 0; c < cols; ++c) M(i, c) = to_complex(row[static_cast<std::size_t>(c)], key);
  }
  return M;
}

// Object access that insists on exactly the expected keys.
class Fields {
 public:
  Fields(const json& j, const char* what, std::initializer_list<const char*> keys) : j_(j) {
    if (!j.is_object()) fail(std::string(what) + " is not an object");
    std::set<std::string> expected(keys.begin(), keys.end());
    for (const auto& [k, v] : j.items())
      if (!expected.count(k)) fail(std::string("unknown field '") + k + "' in " + what);
    for (const auto& k : expected)
      if (!j.contains(k)) fail("missing field '" + k + "' in " + what);
  }

  const json& operator[](const char* key) const { return j_.at(key); }

  template <class T>
  T get(const char* key) const {
    try {
      return j_.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      fail(std::string("field '") + key + "' has the wrong type");
    }
  }
  double real(const char* key) const { return to_double(j_.at(key), key); }
  std::optional<double> optional_real(const char* key) const {
    if (j_.at(key).is_null()) return std::nullopt;
    return real(key);
  }

 private:
  const json& j_;
};

json warning_json(const Warning& w) { return {{"code", to_string(w.code)}, {"value", number(w.value)}}; }

Warning to_warning(const json& j) {
  const Fields f(j, "warning", {"code", "value"});
  const auto code = warning_from_string(f.get<std::string>("code"));
  if (!code) fail("unknown warning code '" + f.get<std::string>("code") + "'");
  return {*code, f.real("value")};
}

json optional_number(const std::optional<double>& x) { return x ? number(*x) : json(nullptr); }

}  // namespace

ConfigEcho ConfigEcho::from(const FlowDecompositionConfig& cfg) {
  ConfigEcho e;
  e.anchor = cfg.anchor;
  e.probes = cfg.probes;
  e.random_probes = cfg.random_probes;
  e.mode = to_string(cfg.mode);
  e.relative_tol = cfg.threshold.relative;
  e.absolute_tol = cfg.threshold.absolute;
  e.rounding_model = cfg.threshold.model;
  e.strict_grouping = cfg.strict_grouping;
  e.seed = cfg.seed;
  e.norm_warn = cfg.norm_warn;
  e.threads = cfg.threads;
  return e;
}

KNormalitySummary KNormalitySummary::from(const KNormalityProfile& p) {
  return {p.k, p.is_k_normal, p.normal, p.commutator_normal, p.commutator_residual};
}

namespace {

bool same_matrix(const std::optional<ComplexMatrix>& a, const std::optional<ComplexMatrix>& b) {
  if (a.has_value() != b.has_value()) return false;
  if (!a) return true;
  return a->rows() == b->rows() && a->cols() == b->cols() && (*a == *b);
}

}  // namespace

bool operator==(const RunReport& a, const RunReport& b) {
  return a.command == b.command && a.input == b.input && a.config == b.config && a.block_dims == b.block_dims &&
         a.groups == b.groups && a.residual == b.residual && a.tolerance == b.tolerance &&
         a.residual_ratio == b.residual_ratio && a.saturated_rows == b.saturated_rows &&
         a.samples_used == b.samples_used && a.warnings == b.warnings && same_matrix(a.transform, b.transform) &&
         same_matrix(a.block_diagonal, b.block_diagonal) && a.k_normality == b.k_normality &&
         a.verification == b.verification && a.bench == b.bench && a.timings == b.timings;
}

void fill_from_decomposition(RunReport& r, const DecompositionReport& report, bool with_transform) {
  r.block_dims = report.block_dims();
  r.groups = report.partition.groups();
  r.residual = report.residual;
  r.tolerance = report.tolerance;
  r.residual_ratio = report.residual_ratio;
  r.saturated_rows = report.saturated_rows;
  r.samples_used = report.samples_used;
  r.warnings = report.warnings;
  if (with_transform) r.transform = report.transform;
}

std::string format_block_dims(const std::vector<BlockDim>& dims) {
  std::string out;
  for (const auto& d : dims) {
    if (!out.empty()) out += ' ';
    out += to_string(d);
  }
  return out;
}

std::string to_json(const RunReport& r, int indent) {
  json j;
  j["schema"] = report_schema;
  j["version"] = report_version;
  j["command"] = r.command;
  j["input"] = {{"source", r.input.source}, {"spec", r.input.spec}, {"n", r.input.n}, {"kind", r.input.kind}};

  const auto& c = r.config;
  j["config"] = {{"anchor", c.anchor ? complex_json(*c.anchor) : json(nullptr)},
                 {"probes", complex_list(c.probes)},
                 {"random_probes", c.random_probes},
                 {"mode", c.mode},
                 {"relative_tol", optional_number(c.relative_tol)},
                 {"absolute_tol", optional_number(c.absolute_tol)},
                 {"rounding_model", c.rounding_model},
                 {"strict_grouping", c.strict_grouping},
                 {"seed", c.seed},
                 {"norm_warn", number(c.norm_warn)},
                 {"threads", c.threads}};

  json dims = json::array();
  for (const auto& d : r.block_dims) dims.push_back({{"dim", d.dim}, {"jordan", d.jordan}});
  j["block_dims"] = std::move(dims);
  j["groups"] = r.groups;
  j["residual"] = number(r.residual);
  j["tolerance"] = number(r.tolerance);
  j["residual_ratio"] = number(r.residual_ratio);
  j["saturated_rows"] = r.saturated_rows;
  j["samples_used"] = complex_list(r.samples_used);
  json warnings = json::array();
  for (const auto& w : r.warnings) warnings.push_back(warning_json(w));
  j["warnings"] = std::move(warnings);
  j["transform"] = r.transform ? matrix_json(*r.transform) : json(nullptr);
  j["block_diagonal"] = r.block_diagonal ? matrix_json(*r.block_diagonal) : json(nullptr);

  if (r.k_normality) {
    const auto& k = *r.k_normality;
    j["k_normality"] = {{"k", k.k},
                        {"is_k_normal", k.is_k_normal},
                        {"normal", k.normal},
                        {"commutator_normal", k.commutator_normal},
                        {"commutator_residual", number(k.commutator_residual)}};
  } else {
    j["k_normality"] = nullptr;
  }
  if (r.verification) {
    const auto& v = *r.verification;
    j["verification"] = {{"probes", v.probes},
                         {"verified", v.verified},
                         {"max_residual", number(v.max_residual)},
                         {"max_ratio", number(v.max_ratio)}};
  } else {
    j["verification"] = nullptr;
  }
  if (r.bench) {
    const auto& b = *r.bench;
    j["bench"] = {{"t_dense", number(b.t_dense)},
                  {"t_decomposed", number(b.t_decomposed)},
                  {"eigenvalue_agreement", number(b.eigenvalue_agreement)},
                  {"savings_fraction", number(b.savings_fraction)},
                  {"repetitions", b.repetitions}};
  } else {
    j["bench"] = nullptr;
  }
  j["timings"] = {{"decompose_seconds", number(r.timings.decompose_seconds)},
                  {"total_seconds", number(r.timings.total_seconds)}};
  return j.dump(indent);
}

RunReport parse_run_report(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(e.what());
  }
  const Fields top(j, "report",
                   {"schema", "version", "command", "input", "config", "block_dims", "groups", "residual",
                    "tolerance", "residual_ratio", "saturated_rows", "samples_used", "warnings", "transform",
                    "block_diagonal", "k_normality", "verification", "bench", "timings"});
  if (top.get<std::string>("schema") != report_schema) fail("unexpected schema");
  if (top.get<int>("version") != report_version) fail("unsupported version");

  RunReport r;
  r.command = top.get<std::string>("command");
  {
    const Fields f(top["input"], "input", {"source", "spec", "n", "kind"});
    r.input = {f.get<std::string>("source"), f.get<std::string>("spec"), f.get<Index>("n"), f.get<std::string>("kind")};
  }
  {
    const Fields f(top["config"], "config",
                   {"anchor", "probes", "random_probes", "mode", "relative_tol", "absolute_tol", "rounding_model",
                    "strict_grouping", "seed", "norm_warn", "threads"});
    auto& c = r.config;
    if (!f["anchor"].is_null()) c.anchor = to_complex(f["anchor"], "anchor");
    c.probes = to_complex_list(f["probes"], "probes");
    c.random_probes = f.get<int>("random_probes");
    c.mode = f.get<std::string>("mode");
    c.relative_tol = f.optional_real("relative_tol");
    c.absolute_tol = f.optional_real("absolute_tol");
    c.rounding_model = f.get<bool>("rounding_model");
    c.strict_grouping = f.get<bool>("strict_grouping");
    c.seed = f.get<std::uint64_t>("seed");
    c.norm_warn = f.real("norm_warn");
    c.threads = f.get<int>("threads");
  }
  if (!top["block_dims"].is_array()) fail("block_dims is not an array");
  for (const auto& d : top["block_dims"]) {
    const Fields f(d, "block dim", {"dim", "jordan"});
    r.block_dims.push_back({f.get<Index>("dim"), f.get<bool>("jordan")});
  }
  r.groups = top.get<std::vector<std::vector<Index>>>("groups");
  r.residual = top.real("residual");
  r.tolerance = top.real("tolerance");
  r.residual_ratio = top.real("residual_ratio");
  r.saturated_rows = top.get<Index>("saturated_rows");
  r.samples_used = to_complex_list(top["samples_used"], "samples_used");
  if (!top["warnings"].is_array()) fail("warnings is not an array");
  for (const auto& w : top["warnings"]) r.warnings.push_back(to_warning(w));
  if (!top["transform"].is_null()) r.transform = to_matrix(top["transform"], "transform");
  if (!top["block_diagonal"].is_null()) r.block_diagonal = to_matrix(top["block_diagonal"], "block_diagonal");
  if (!top["k_normality"].is_null()) {
    const Fields f(top["k_normality"], "k_normality",
                   {"k", "is_k_normal", "normal", "commutator_normal", "commutator_residual"});
    r.k_normality = KNormalitySummary{f.get<Index>("k"), f.get<bool>("is_k_normal"), f.get<bool>("normal"),
                                      f.get<bool>("commutator_normal"), f.real("commutator_residual")};
  }
  if (!top["verification"].is_null()) {
    const Fields f(top["verification"], "verification", {"probes", "verified", "max_residual", "max_ratio"});
    r.verification = VerificationSummary{f.get<int>("probes"), f.get<bool>("verified"), f.real("max_residual"),
                                         f.real("max_ratio")};
  }
  if (!top["bench"].is_null()) {
    const Fields f(top["bench"], "bench",
                   {"t_dense", "t_decomposed", "eigenvalue_agreement", "savings_fraction", "repetitions"});
    r.bench = BenchSummary{f.real("t_dense"), f.real("t_decomposed"), f.real("eigenvalue_agreement"),
                           f.real("savings_fraction"), f.get<int>("repetitions")};
  }
  {
    const Fields f(top["timings"], "timings", {"decompose_seconds", "total_seconds"});
    r.timings = {f.real("decompose_seconds"), f.real("total_seconds")};
  }

  // Structural consistency: groups and dims describe the same partition.
  if (r.groups.size() != r.block_dims.size()) fail("groups and block_dims differ in length");
  for (std::size_t k = 0; k < r.groups.size(); ++k)
    if (static_cast<Index>(r.groups[k].size()) != r.block_dims[k].dim) fail("group size differs from block dim");
  return r;
}

}  // namespace mbd::io
