#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "helpers.hpp"
#include "mbd/flowdec.hpp"
#include "mbd/io/gallery_spec.hpp"
#include "mbd/io/manifest.hpp"
#include "mbd/io/matrix_market.hpp"
#include "mbd/io/run_report.hpp"
#include "mbd/io/spy.hpp"

using namespace mbd;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("mbd_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

ComplexMatrix round_trip(const ComplexMatrix& M, io::MMFormat f, io::MMField field = io::MMField::automatic) {
  std::stringstream s;
  io::write_matrix_market(s, M, f, field);
  return io::read_matrix_market(s);
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("Matrix Market round-trip is bit-faithful") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> ex(-300, 300);
  ComplexMatrix M(7, 7);
  for (Index i = 0; i < 7; ++i)
    for (Index j = 0; j < 7; ++j) M(i, j) = Complex(std::ldexp(u(rng), ex(rng)), u(rng) / 3.0);
  M(0, 0) = Complex(std::numeric_limits<double>::denorm_min(), -0.0);
  M(1, 1) = Complex(std::numeric_limits<double>::max(), 0.1);
  M(2, 3) = 0.0;
  for (auto f : {io::MMFormat::array, io::MMFormat::coordinate}) {
    const ComplexMatrix R = round_trip(M, f);
    CHECK(R == M);
  }
  const ComplexMatrix real = gallery::make_static(gallery::StaticFamily::invol, 9);
  CHECK(round_trip(real, io::MMFormat::array) == real);
  CHECK(round_trip(real, io::MMFormat::coordinate, io::MMField::complex) == real);

  std::stringstream s;
  io::write_matrix_market(s, real);
  CHECK(s.str().rfind("%%MatrixMarket matrix array real general", 0) == 0);
}

TEST_CASE("Matrix Market reader variants") {
  std::istringstream sym(
      "%%MatrixMarket matrix coordinate real symmetric\n% comment\n3 3 2\n2 1 5\n3 3 -1\n");
  const auto S = io::read_matrix_market(sym);
  CHECK(S(1, 0) == Complex(5.0));
  CHECK(S(0, 1) == Complex(5.0));
  CHECK(S(2, 2) == Complex(-1.0));

  std::istringstream herm("%%MatrixMarket matrix coordinate complex hermitian\n2 2 2\n1 1 2 0\n2 1 1 3\n");
  const auto H = io::read_matrix_market(herm);
  CHECK(H(1, 0) == Complex(1, 3));
  CHECK(H(0, 1) == Complex(1, -3));

  std::istringstream skew("%%MatrixMarket matrix array integer skew-symmetric\n3 3\n4\n5\n6\n");
  const auto K = io::read_matrix_market(skew);
  CHECK(K(1, 0) == Complex(4.0));
  CHECK(K(0, 1) == Complex(-4.0));
  CHECK(K(2, 1) == Complex(6.0));
  CHECK(K(0, 0) == Complex(0.0));

  std::istringstream arr("%%MatrixMarket matrix array complex general\n2 2\n1 0\n2 0\n3 0\n4 1\n");
  const auto A = io::read_matrix_market(arr);
  CHECK(A(1, 0) == Complex(2.0));  // column-major
  CHECK(A(1, 1) == Complex(4.0, 1.0));
}

TEST_CASE("Matrix Market reader rejects malformed input") {
  // rectangular files are valid Matrix Market; squareness is checked by the consumers
  std::istringstream rect("%%MatrixMarket matrix array real general\n2 3\n1\n2\n3\n4\n5\n6\n");
  CHECK(io::read_matrix_market(rect).cols() == 3);
  for (const char* bad : {"", "%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n",
                          "%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n5\n",
                          "%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n",
                          "%%MatrixMarket matrix array pattern general\n2 2\n",
                          "%%MatrixMarket vector array real general\n2 2\n1\n2\n3\n4\n",
                          "%%MatrixMarket matrix array real general\n2 2\n1\nx\n3\n4\n"}) {
    std::istringstream in(bad);
    const std::string shown(bad);
    CAPTURE(shown);
    try {
      io::read_matrix_market(in);
      FAIL("accepted malformed input");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::parse_error);
    }
  }
  try {
    io::read_matrix_market(fs::path("/nonexistent/file.mtx"));
    FAIL("opened a missing file");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io_failure);
  }
}

TEST_CASE("manifest round-trip") {
  const std::vector<io::ManifestEntry> entries{{Parameter(0.25, 0.0), "a.mtx", FlowKind::general},
                                               {Parameter(-1.5, 2.0), "b.mtx", FlowKind::general}};
  std::stringstream s;
  io::write_manifest(s, entries);
  const auto back = io::read_manifest(s);
  REQUIRE(back.size() == 2);
  CHECK(back[1].t == entries[1].t);
  CHECK(back[1].file == "b.mtx");

  std::istringstream with_comments("# header\n\n0.5 0 x.mtx hermitian\n");
  const auto c = io::read_manifest(with_comments);
  REQUIRE(c.size() == 1);
  CHECK(c[0].kind == FlowKind::hermitean);

  std::istringstream bad("0.5 x.mtx general\n");
  CHECK_THROWS_AS(io::read_manifest(bad), Error);
  CHECK_THROWS_AS(io::flow_kind_from_string("normal"), Error);
}

TEST_CASE("flow directories round-trip and decompose") {
  const auto dir = scratch_dir("flowdir");
  const auto flow = gallery::make_flow(io::parse_flow_spec("fig1"));
  const std::vector<Parameter> params{0.3, 1.1, Parameter(2.0, 0.4), 4.2, 5.5};
  io::save_flow_directory(dir, flow, params);
  CHECK(fs::exists(dir / io::manifest_name));
  const auto loaded = io::load_flow_directory(dir);
  CHECK(loaded.dimension() == 17);
  CHECK(loaded.kind() == FlowKind::general);
  for (const auto& t : params) CHECK(loaded.sample(t) == flow.sample(t));
  CHECK_THROWS_AS(loaded.sample(0.7), Error);
  const auto r = decompose_flow(loaded, {});
  CHECK(test::sorted_dims(r.partition) == std::vector<Index>{7, 4, 3, 2, 1});
  fs::remove_all(dir);

  try {
    io::load_flow_directory(dir);
    FAIL("loaded a missing directory");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io_failure);
  }
}

TEST_CASE("flow spec parse and format") {
  const auto s = io::parse_flow_spec("17: 7,4,3,2,1; unitary; seed=1");
  CHECK(s.dimension() == 17);
  CHECK(s.blocks.size() == 5);
  CHECK(s.conjugator == gallery::Conjugator::unitary);
  CHECK(s.seed == 1);
  CHECK(io::format_flow_spec(io::parse_flow_spec("fig1")) == io::format_flow_spec(s));

  const auto j = io::parse_flow_spec("9: 4J,5J; unitary; seed=1");
  CHECK(j.blocks[0].kind == gallery::BlockKind::jordan);
  CHECK(j.blocks[1].dim == 5);

  const auto h = io::parse_flow_spec("12: 6,6; hermitean; seed=3; interval=0:3.5");
  CHECK(h.hermitean);
  CHECK(std::get<Interval>(h.domain).hi == 3.5);

  for (const char* text : {"fig1", "fig2", "fig3", "fig4", "12: 6,6; hermitean; seed=3; interval=0:3.5",
                           "5: 2C,2R,1S; general; seed=44", "3: 1,1,1; none; seed=0"}) {
    const auto once = io::format_flow_spec(io::parse_flow_spec(text));
    CHECK(io::format_flow_spec(io::parse_flow_spec(once)) == once);
    const auto a = io::parse_flow_spec(text);
    const auto b = io::parse_flow_spec(once);
    CHECK(a.seed == b.seed);
    CHECK(a.hermitean == b.hermitean);
    CHECK(a.conjugator == b.conjugator);
    CHECK(a.blocks.size() == b.blocks.size());
  }

  for (const char* bad : {"", "17: 7,4", "3: 1,1,1; sideways", "3: 1,1,1; seed=x", "3: 1,2Q", "2: 2J; hermitean",
                          "3: 1,1,1; interval=2", "fig9"})
    CHECK_THROWS_AS(io::parse_flow_spec(bad), Error);
}

TEST_CASE("spy rendering") {
  const auto I = threshold_pattern(ComplexMatrix::Identity(3, 3), 0.5);
  CHECK(io::spy_ascii(I) == "█··\n·█·\n··█\n");
  CHECK(io::spy_pbm(I) == "P1\n3 3\n1 0 0\n0 1 0\n0 0 1\n");
  const auto empty = threshold_pattern(ComplexMatrix::Zero(2, 2), 0.5);
  CHECK(io::spy_ascii(empty) == "··\n··\n");

  const auto P = test::pattern_of({"110", "010", "001"});
  CHECK(io::permute_pattern(P, {1, 0, 2}) == test::pattern_of({"100", "110", "001"}));
}

TEST_CASE("spy goldens") {
  const fs::path golden(MBD_GOLDEN_DIR);
  CHECK(slurp(golden / "identity3.pbm") ==
        io::spy_pbm(threshold_pattern(ComplexMatrix::Identity(3, 3), 0.5)));

  // fig1 (C) stage: the probe pattern in partition order is exactly the
  // planted 7, 4, 3, 2, 1 block structure
  const auto r = decompose_flow(gallery::make_flow(io::parse_flow_spec("fig1")), {});
  const auto C = io::permute_pattern(r.probe_pattern, r.partition.permutation());
  Eigen::MatrixXd ideal = Eigen::MatrixXd::Zero(17, 17);
  Index at = 0;
  for (Index d : {7, 4, 3, 2, 1}) {
    ideal.block(at, at, d, d).setOnes();
    at += d;
  }
  const auto ideal_pattern = test::pattern_of(ideal);
  CHECK(C == ideal_pattern);
  CHECK(slurp(golden / "fig1_C.pbm") == io::spy_pbm(ideal_pattern));
}

TEST_CASE("run report JSON round-trip") {
  const auto flow = gallery::make_flow(io::parse_flow_spec("fig2"));
  FlowDecompositionConfig cfg;
  cfg.anchor = Parameter(0.5, 0.0);
  cfg.threshold.relative = 1e-12;
  const auto dec = decompose_flow(flow, cfg);
  io::RunReport r;
  r.command = "decompose-flow";
  r.input = {"gallery-flow", "fig2", 9, "general"};
  r.config = io::ConfigEcho::from(cfg);
  io::fill_from_decomposition(r, dec, true);
  r.verification = io::VerificationSummary{10, true, 1e-15, 0.25};
  r.k_normality = io::KNormalitySummary{2, true, false, false, 0.5};
  r.bench = io::BenchSummary{0.1, 0.05, 1e-12, 0.75, 5};
  r.timings = {0.01, 0.02};
  r.warnings.push_back({WarningCode::large_norm, std::numeric_limits<double>::infinity()});

  const auto text = io::to_json(r);
  const auto back = io::parse_run_report(text);
  CHECK(back == r);
  CHECK(io::to_json(back) == text);
  CHECK(back.transform->isApprox(dec.transform));
  CHECK(*back.transform == dec.transform);
  CHECK(io::format_block_dims(back.block_dims) == "5(J) 4(J)");

  // without optionals
  io::RunReport bare;
  bare.command = "savings";
  CHECK(io::parse_run_report(io::to_json(bare)) == bare);
}

TEST_CASE("run report parser rejects unknown, missing and inconsistent fields") {
  io::RunReport r;
  r.command = "decompose-static";
  r.block_dims = {{2, false}, {1, false}};
  r.groups = {{0, 2}, {1}};
  const auto text = io::to_json(r);
  auto j = nlohmann::json::parse(text);
  CHECK_NOTHROW(io::parse_run_report(j.dump()));

  auto extra = j;
  extra["surprise"] = 1;
  CHECK_THROWS_AS(io::parse_run_report(extra.dump()), Error);

  auto nested = j;
  nested["input"]["colour"] = "red";
  CHECK_THROWS_AS(io::parse_run_report(nested.dump()), Error);

  auto missing = j;
  missing.erase("residual");
  CHECK_THROWS_AS(io::parse_run_report(missing.dump()), Error);

  auto version = j;
  version["version"] = 99;
  CHECK_THROWS_AS(io::parse_run_report(version.dump()), Error);

  auto sizes = j;
  sizes["groups"] = nlohmann::json::array({nlohmann::json::array({0}), nlohmann::json::array({1, 2})});
  CHECK_THROWS_AS(io::parse_run_report(sizes.dump()), Error);

  CHECK_THROWS_AS(io::parse_run_report("{not json"), Error);
}

}  // TEST_SUITE
