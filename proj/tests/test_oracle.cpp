#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "mbd/flowdec.hpp"
#include "oracle.hpp"

using namespace mbd;

TEST_SUITE("oracle") {

TEST_CASE("set partition enumeration counts Bell numbers") {
  const Index bell[] = {1, 1, 2, 5, 15, 52, 203};
  for (Index n = 1; n <= 6; ++n) {
    Index count = 0;
    test::for_each_set_partition(n, [&](const std::vector<Index>&) { ++count; });
    CHECK(count == bell[n]);
  }
}

TEST_CASE("oracle on known structures") {
  MatrixFlow diag(3, FlowKind::hermitean, Interval{0.0, 1.0}, [](Parameter t) {
    ComplexMatrix M = ComplexMatrix::Zero(3, 3);
    M.diagonal() << t.real(), 2.0 + t.real() * t.real(), -1.0;
    return M;
  });
  CHECK(test::brute_force_partition(diag, 0.3, {0.6, 0.9}).dims == std::vector<Index>{1, 1, 1});
  const auto generic = test::generic_hermitean_flow(5, 3);
  CHECK(test::brute_force_partition(generic, 0.2, {0.7}).dims == std::vector<Index>{5});
}

TEST_CASE("pipeline agrees with the brute-force oracle on small flows") {
  std::mt19937_64 rng(2024);
  int compared = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = 2 + trial % 5;
    const bool hermitean = trial % 2 == 0;
    const bool indecomposable = trial % 4 == 1 || trial % 4 == 2;
    MatrixFlow flow = [&] {
      if (indecomposable)
        return hermitean ? test::generic_hermitean_flow(n, 500 + static_cast<std::uint64_t>(trial))
                         : test::generic_general_flow(n, 500 + static_cast<std::uint64_t>(trial));
      gallery::FlowSpec spec;
      for (Index d : test::random_dims(n, rng)) spec.blocks.push_back({d, gallery::BlockKind::smooth});
      spec.hermitean = hermitean;
      spec.seed = 900 + static_cast<std::uint64_t>(trial);
      return gallery::make_flow(spec);
    }();
    FlowDecompositionConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(trial) + 1;
    const auto report = decompose_flow(flow, cfg);
    std::vector<Parameter> probes(report.samples_used.begin() + 1, report.samples_used.end());
    const auto oracle = test::brute_force_partition(flow, report.samples_used.front(), probes);
    CAPTURE(trial);
    CHECK(test::sorted_dims(report.partition) == oracle.dims);
    ++compared;
  }
  CHECK(compared == 200);
}

}  // TEST_SUITE
