// mbd: decompose matrix flows and static matrices into blocks by one
// constant similarity.
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mbd/costmodel.hpp"
#include "mbd/flowdec.hpp"
#include "mbd/gallery.hpp"
#include "mbd/io/gallery_spec.hpp"
#include "mbd/io/manifest.hpp"
#include "mbd/io/matrix_market.hpp"
#include "mbd/io/run_report.hpp"
#include "mbd/io/spy.hpp"
#include "mbd/staticdec.hpp"

namespace {

using namespace mbd;
using Clock = std::chrono::steady_clock;

constexpr int exit_ok = 0;
constexpr int exit_input = 2;
constexpr int exit_compute = 3;

// Bad arguments or unreadable input: 2. Failures inside the pipeline,
// including samples that break the flow's declared kind: 3.
int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::not_hermitean:
    case ErrorCode::no_convergence:
    case ErrorCode::exactly_singular:
    case ErrorCode::sampling_failed:
      return exit_compute;
    default:
      return exit_input;
  }
}

// "1.5", "2i", "0.3-1.2i", "-1e-3+4e2i"
Parameter parse_parameter(std::string s) {
  auto number = [&](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != part.size()) throw Error(ErrorCode::invalid_config, "bad parameter '" + s + "'");
    return x;
  };
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  if (s.empty()) throw Error(ErrorCode::invalid_config, "empty parameter");
  if (s.back() != 'i') return {number(s), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  for (std::size_t k = body.size(); k-- > 1;)
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E')
      return {number(body.substr(0, k)), number(body.substr(k))};
  return {0.0, number(body)};
}

struct Common {
  explicit Common(int default_probes) : random_probes(default_probes) {}

  std::string anchor;
  std::vector<std::string> probes;
  int random_probes;
  std::string mode = "star";
  std::optional<double> tol;
  std::optional<double> abs_tol;
  bool plain_threshold = false;
  bool strict = false;
  std::optional<std::uint64_t> seed;
  double norm_warn = 1e8;
  int threads = 1;
  std::string out;
  bool quiet = false;

  void add_to(CLI::App* app) {
    app->add_option("--anchor", anchor, "Anchor parameter t_a, e.g. 0.7 or 0.7+0.2i");
    app->add_option("--probes", probes, "Probe parameters (comma separated)")->delimiter(',');
    app->add_option("--random-probes", random_probes, "Number of random probes when --probes is absent")
        ->check(CLI::PositiveNumber);
    app->add_option("--mode", mode, "Sampling mode")->check(CLI::IsMember({"star", "chain"}));
    app->add_option("--tol", tol, "Relative cutoff factor replacing n*eps")->check(CLI::PositiveNumber);
    app->add_option("--abs-tol", abs_tol, "Absolute spy cutoff (fixed threshold)")->check(CLI::PositiveNumber);
    app->add_flag("--plain-threshold", plain_threshold, "Single cutoff without the entry-wise rounding model");
    app->add_flag("--strict", strict, "Group rows by literal pattern equality");
    app->add_option("--seed", seed, "Random seed (default: $MBD_SEED or 1)");
    app->add_option("--norm-warn", norm_warn, "Frobenius norm that triggers large_norm");
    app->add_option("--threads", threads, "Threads for the parallel kernels (1 = serial)");
    app->add_option("--out", out, "Write the report to this file instead of stdout");
    app->add_flag("--quiet", quiet, "No summary on stderr");
  }

  FlowDecompositionConfig config() const {
    FlowDecompositionConfig cfg;
    if (!anchor.empty()) cfg.anchor = parse_parameter(anchor);
    for (const auto& p : probes) cfg.probes.push_back(parse_parameter(p));
    cfg.random_probes = random_probes;
    cfg.mode = mode == "chain" ? SamplingMode::chain : SamplingMode::star;
    cfg.threshold.relative = tol;
    cfg.threshold.absolute = abs_tol;
    cfg.threshold.model = !plain_threshold;
    cfg.strict_grouping = strict;
    cfg.norm_warn = norm_warn;
    cfg.threads = threads;
    cfg.seed = 1;
    if (seed) {
      cfg.seed = *seed;
    } else if (const char* env = std::getenv("MBD_SEED")) {
      try {
        cfg.seed = std::stoull(env);
      } catch (const std::exception&) {
        throw Error(ErrorCode::invalid_config, "MBD_SEED is not an unsigned integer");
      }
    }
    return cfg;
  }
};

struct SpyOptions {
  std::string kind;
  std::string prefix;

  void add_to(CLI::App* app) {
    app->add_option("--spy", kind, "Render spy patterns of the stages (A) anchor, (B) probes, (C) grouped")
        ->check(CLI::IsMember({"ascii", "pbm"}));
    app->add_option("--spy-out", prefix, "File prefix for spy output (PREFIX_A.pbm, ...)");
  }

  void render(const DecompositionReport& report) const {
    if (kind.empty()) return;
    const std::pair<const char*, PatternMatrix> stages[] = {
        {"A", report.anchor_pattern},
        {"B", report.probe_pattern},
        {"C", io::permute_pattern(report.probe_pattern, report.partition.permutation())},
    };
    const bool pbm = kind == "pbm";
    for (const auto& [name, P] : stages) {
      const std::string text = pbm ? io::spy_pbm(P) : io::spy_ascii(P);
      if (prefix.empty() && !pbm) {
        std::cerr << "(" << name << ")\n" << text;
      } else {
        const std::string base = prefix.empty() ? "spy" : prefix;
        io::write_text(base + "_" + name + (pbm ? ".pbm" : ".txt"), text);
      }
    }
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void emit(const io::RunReport& r, const Common& c) {
  const std::string text = io::to_json(r) + "\n";
  if (c.out.empty()) {
    std::cout << text;
  } else {
    io::write_text(c.out, text);
  }
  if (c.quiet) return;
  std::cerr << "block dimensions: " << io::format_block_dims(r.block_dims) << "\n";
  std::cerr << "residual: " << r.residual << " (ratio to cutoff " << r.residual_ratio << ")\n";
  if (r.k_normality)
    std::cerr << "k = " << r.k_normality->k << (r.k_normality->is_k_normal ? ", k-normal" : ", not k-normal")
              << (r.k_normality->commutator_normal ? ", A*A = AA* holds" : "") << "\n";
  if (r.verification)
    std::cerr << "verification at " << r.verification->probes << " probes: "
              << (r.verification->verified ? "passed" : "FAILED") << "\n";
  for (const auto& w : r.warnings) {
    std::cerr << "warning: " << to_string(w.code) << " (" << w.value << ")";
    if (w.code == WarningCode::large_norm) std::cerr << ", block dimensions may be unreliable";
    std::cerr << "\n";
  }
}

gallery::StaticFamily family_or_throw(const std::string& name) { return gallery::static_family_from_string(name); }

ComplexMatrix static_input(const std::string& file, const std::string& family, int n, io::InputDescriptor& input) {
  if (!file.empty() == !family.empty()) throw Error(ErrorCode::invalid_config, "give exactly one of --file or --gallery");
  if (!file.empty()) {
    input.source = "file";
    input.spec = file;
    return io::read_matrix_market(std::filesystem::path(file));
  }
  if (n < 2) throw Error(ErrorCode::invalid_config, "--gallery needs --n >= 2");
  input.source = "gallery-static";
  input.spec = family + "(" + std::to_string(n) + ")";
  return gallery::make_static(family_or_throw(family), n);
}

int run(int argc, char** argv) {
  CLI::App app{"Block decomposition of matrix flows and static matrices by one constant similarity"};
  app.require_subcommand(1);

  // decompose-flow
  Common flow_opts(FlowDecompositionConfig{}.random_probes);
  SpyOptions flow_spy;
  std::string flow_gallery, flow_dir, flow_kind;
  int verify_probes = 0;
  bool flow_dump = false;
  auto* flow_cmd = app.add_subcommand("decompose-flow", "Decompose a matrix flow");
  flow_cmd->add_option("--gallery", flow_gallery, "Inline flow spec, e.g. \"17: 7,4,3,2,1; unitary; seed=1\"");
  flow_cmd->add_option("--dir", flow_dir, "Directory with manifest.txt and Matrix Market samples");
  flow_cmd->add_option("--kind", flow_kind, "Override the flow kind")->check(CLI::IsMember({"hermitean", "general"}));
  flow_cmd->add_option("--verify", verify_probes, "Check the transform at this many fresh probes");
  flow_cmd->add_flag("--dump-transform", flow_dump, "Include the transform in the report");
  flow_opts.add_to(flow_cmd);
  flow_spy.add_to(flow_cmd);

  // decompose-static
  Common static_opts(static_config().random_probes);
  std::string static_file, static_family;
  int static_n = 0;
  bool classify = false, static_dump = false;
  auto* static_cmd = app.add_subcommand("decompose-static", "Unitary block decomposition of one matrix");
  static_cmd->add_option("--file", static_file, "Matrix Market input");
  static_cmd->add_option("--gallery", static_family, "clement, circul, binomial or invol");
  static_cmd->add_option("--n", static_n, "Gallery dimension");
  static_cmd->add_flag("--classify", classify, "Append the k-normality profile");
  static_cmd->add_flag("--dump-transform", static_dump, "Include Vc and Ad = Vc* A Vc in the report");
  static_opts.add_to(static_cmd);

  // export-flow
  std::string export_spec, export_dir, export_params;
  int export_samples = 4;
  std::uint64_t export_seed = 1;
  auto* export_cmd = app.add_subcommand("export-flow", "Write a gallery flow as Matrix Market samples + manifest");
  export_cmd->add_option("--gallery", export_spec, "Inline flow spec")->required();
  export_cmd->add_option("--dir", export_dir, "Output directory")->required();
  export_cmd->add_option("--samples", export_samples, "Number of random parameters")->check(CLI::PositiveNumber);
  export_cmd->add_option("--params", export_params, "Explicit parameters (comma separated)");
  export_cmd->add_option("--seed", export_seed, "Seed for the random parameters");

  // export-static
  std::string xs_family, xs_out, xs_format = "array";
  int xs_n = 0;
  auto* export_static_cmd = app.add_subcommand("export-static", "Write a gallery matrix in Matrix Market format");
  export_static_cmd->add_option("--gallery", xs_family, "clement, circul, binomial or invol")->required();
  export_static_cmd->add_option("--n", xs_n, "Dimension")->required();
  export_static_cmd->add_option("--out", xs_out, "Output file")->required();
  export_static_cmd->add_option("--format", xs_format, "array or coordinate")
      ->check(CLI::IsMember({"array", "coordinate"}));

  // bench
  Common bench_opts(static_config().random_probes);
  std::string bench_file, bench_family;
  int bench_n = 0, repetitions = 5;
  auto* bench_cmd = app.add_subcommand("bench", "Dense versus decompose-then-blockwise eigenvalues");
  bench_cmd->add_option("--file", bench_file, "Matrix Market input");
  bench_cmd->add_option("--gallery", bench_family, "Gallery family");
  bench_cmd->add_option("--n", bench_n, "Gallery dimension");
  bench_cmd->add_option("--repetitions", repetitions, "Timing repetitions (median)")->check(CLI::PositiveNumber);
  bench_opts.add_to(bench_cmd);

  // savings
  int savings_n = 0;
  std::vector<Index> savings_dims;
  auto* savings_cmd = app.add_subcommand("savings", "Cubic-cost savings of a block structure");
  savings_cmd->add_option("--n", savings_n, "Dimension")->required();
  savings_cmd->add_option("--dims", savings_dims, "Block dimensions (comma separated)")->required()->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_input;
  }

  const auto start = Clock::now();

  if (*flow_cmd) {
    if (flow_gallery.empty() == flow_dir.empty())
      throw Error(ErrorCode::invalid_config, "give exactly one of --gallery or --dir");
    io::RunReport r;
    r.command = "decompose-flow";
    std::optional<MatrixFlow> flow;
    if (!flow_gallery.empty()) {
      const auto spec = io::parse_flow_spec(flow_gallery);
      flow.emplace(gallery::make_flow(spec));
      r.input.source = "gallery-flow";
      r.input.spec = io::format_flow_spec(spec);
      if (!flow_opts.quiet && spec.dimension() > gallery::demo_size_limit)
        std::cerr << "note: n = " << spec.dimension() << " exceeds the demo size " << gallery::demo_size_limit << "\n";
    } else {
      flow.emplace(io::load_flow_directory(flow_dir));
      r.input.source = "directory";
      r.input.spec = flow_dir;
    }
    if (!flow_kind.empty() && io::flow_kind_from_string(flow_kind) != flow->kind()) {
      const MatrixFlow base = *flow;
      flow.emplace(base.dimension(), io::flow_kind_from_string(flow_kind), base.domain(),
                   [base](Parameter t) { return base.sample(t); }, base.accepts_complex());
    }
    r.input.n = flow->dimension();
    r.input.kind = to_string(flow->kind());

    const auto cfg = flow_opts.config();
    r.config = io::ConfigEcho::from(cfg);
    const auto t0 = Clock::now();
    const auto report = decompose_flow(*flow, cfg);
    r.timings.decompose_seconds = seconds_since(t0);
    io::fill_from_decomposition(r, report, flow_dump);
    if (verify_probes > 0) {
      const auto extra = random_parameters(*flow, verify_probes, cfg.seed ^ 0x2545f4914f6cdd1dULL);
      const auto v = verify_decomposition(*flow, report, extra, cfg.threshold);
      r.verification = io::VerificationSummary{verify_probes, v.verified, v.max_residual, v.max_ratio};
    }
    flow_spy.render(report);
    r.timings.total_seconds = seconds_since(start);
    emit(r, flow_opts);
    return exit_ok;
  }

  if (*static_cmd) {
    io::RunReport r;
    r.command = "decompose-static";
    const ComplexMatrix A = static_input(static_file, static_family, static_n, r.input);
    require_square_finite(A, "static matrix");
    r.input.n = A.rows();
    r.input.kind = "general";
    const auto cfg = static_opts.config();
    r.config = io::ConfigEcho::from(cfg);
    const auto t0 = Clock::now();
    const auto dec = decompose_static(A, cfg);
    r.timings.decompose_seconds = seconds_since(t0);
    io::fill_from_decomposition(r, dec.report, static_dump);
    if (static_dump) r.block_diagonal = dec.block_diagonal;
    if (classify) r.k_normality = io::KNormalitySummary::from(classify_k_normal(A, dec));
    r.timings.total_seconds = seconds_since(start);
    emit(r, static_opts);
    return exit_ok;
  }

  if (*export_cmd) {
    const auto spec = io::parse_flow_spec(export_spec);
    const MatrixFlow flow = gallery::make_flow(spec);
    std::vector<Parameter> params;
    if (!export_params.empty()) {
      std::stringstream ss(export_params);
      for (std::string item; std::getline(ss, item, ',');) params.push_back(parse_parameter(item));
    } else {
      params = random_parameters(flow, export_samples, export_seed);
    }
    io::save_flow_directory(export_dir, flow, params);
    return exit_ok;
  }

  if (*export_static_cmd) {
    const auto A = gallery::make_static(family_or_throw(xs_family), xs_n);
    io::write_matrix_market(std::filesystem::path(xs_out), A,
                            xs_format == "coordinate" ? io::MMFormat::coordinate : io::MMFormat::array);
    return exit_ok;
  }

  if (*bench_cmd) {
    io::RunReport r;
    r.command = "bench";
    const ComplexMatrix A = static_input(bench_file, bench_family, bench_n, r.input);
    require_square_finite(A, "benchmark matrix");
    r.input.n = A.rows();
    r.input.kind = "general";
    BenchConfig bc;
    bc.decomposition = bench_opts.config();
    bc.repetitions = repetitions;
    bc.threads = bench_opts.threads;
    r.config = io::ConfigEcho::from(bc.decomposition);
    const auto result = bench_eigen_divide_conquer(A, bc);
    for (Index d : result.block_dims) r.block_dims.push_back({d, false});
    Index offset = 0;
    for (Index d : result.block_dims) {
      std::vector<Index> g;
      for (Index i = 0; i < d; ++i) g.push_back(offset + i);
      offset += d;
      r.groups.push_back(std::move(g));
    }
    r.bench = io::BenchSummary{result.t_dense, result.t_decomposed, result.eigenvalue_agreement,
                               result.model.savings_fraction, repetitions};
    r.timings.decompose_seconds = result.t_decomposed;
    r.timings.total_seconds = seconds_since(start);
    emit(r, bench_opts);
    if (!bench_opts.quiet)
      std::cerr << "dense " << result.t_dense << " s, decomposed " << result.t_decomposed << " s, agreement "
                << result.eigenvalue_agreement << "\n";
    return exit_ok;
  }

  if (*savings_cmd) {
    const auto s = savings_estimate(savings_n, savings_dims);
    nlohmann::json j{{"n", s.n},
                     {"block_dims", s.block_dims},
                     {"dense_cost", s.dense_cost},
                     {"blocked_cost", s.blocked_cost},
                     {"savings_fraction", s.savings_fraction},
                     {"all_blocks_at_most_half", s.all_blocks_at_most_half}};
    std::cout << j.dump(2) << "\n";
    return exit_ok;
  }
  return exit_input;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const mbd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_compute;
  }
}
