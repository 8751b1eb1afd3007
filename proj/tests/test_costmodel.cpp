#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "mbd/costmodel.hpp"

using namespace mbd;

TEST_SUITE("costmodel") {

TEST_CASE("savings examples") {
  CHECK(savings_estimate(10, {8, 2}).savings_fraction == doctest::Approx(0.48));
  const auto half = savings_estimate(10, {5, 5});
  CHECK(half.savings_fraction == 0.75);
  CHECK(half.all_blocks_at_most_half);
  CHECK(half.dense_cost == 1000.0);
  CHECK(half.blocked_cost == 250.0);
  const auto none = savings_estimate(5, {5});
  CHECK(none.savings_fraction == 0.0);
  CHECK_FALSE(none.all_blocks_at_most_half);
}

TEST_CASE("savings errors") {
  CHECK_THROWS_AS(savings_estimate(10, {8, 1}), Error);
  CHECK_THROWS_AS(savings_estimate(10, {}), Error);
  CHECK_THROWS_AS(savings_estimate(4, {5, -1}), Error);
}

TEST_CASE("savings at m = 0.8n with singleton remainder") {
  for (Index n : {10, 50, 100}) {
    std::vector<Index> dims{n * 4 / 5};
    dims.insert(dims.end(), static_cast<std::size_t>(n - n * 4 / 5), 1);
    const double s = savings_estimate(n, dims).savings_fraction;
    CHECK(s >= 0.47);
    CHECK(s <= 0.50);
  }
}

TEST_CASE("two halves give exactly three quarters") {
  for (Index n = 2; n <= 200; n += 2) CHECK(savings_estimate(n, {n / 2, n / 2}).savings_fraction == 0.75);
}

TEST_CASE("savings invariants") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = 1 + trial % 40;
    const auto dims = test::random_dims(n, rng);
    const auto e = savings_estimate(n, dims);
    double cubes = 0.0;
    for (Index d : dims) cubes += std::pow(static_cast<double>(d), 3);
    CHECK(e.savings_fraction == doctest::Approx(1.0 - cubes / std::pow(static_cast<double>(n), 3)));
    CHECK(e.savings_fraction >= 0.0);
    CHECK(e.savings_fraction < 1.0);
    CHECK((e.savings_fraction == 0.0) == (dims.size() == 1));
    if (e.all_blocks_at_most_half) CHECK(e.savings_fraction >= 0.75);
  }
}

TEST_CASE("hausdorff distance") {
  ComplexVector a(3), b(2);
  a << 0.0, 1.0, 5.0;
  b << 0.0, 1.5;
  CHECK(hausdorff_distance(a, b) == doctest::Approx(3.5));
  CHECK(hausdorff_distance(b, a) == doctest::Approx(3.5));
  CHECK(hausdorff_distance(a, a) == 0.0);
}

TEST_CASE("bench on a diagonal matrix") {
  ComplexMatrix D = ComplexMatrix::Zero(12, 12);
  D.diagonal() = gallery::random_complex(12, 3).col(0);
  BenchConfig cfg;
  cfg.repetitions = 3;
  const auto r = bench_eigen_divide_conquer(D, cfg);
  CHECK(r.eigenvalue_agreement <= 1e-12);
  CHECK(r.block_dims.size() == 12);
  CHECK(r.model.savings_fraction > 0.99);
  CHECK(r.t_dense > 0.0);
  CHECK(r.t_decomposed > 0.0);
}

TEST_CASE("bench on decomposable gallery matrices") {
  BenchConfig cfg;
  cfg.repetitions = 1;
  for (auto [fam, n] : {std::pair{gallery::StaticFamily::clement, Index{16}}, {gallery::StaticFamily::circul, Index{20}},
                        {gallery::StaticFamily::binomial, Index{12}}, {gallery::StaticFamily::invol, Index{8}}}) {
    const ComplexMatrix A = gallery::make_static(fam, n);
    const auto r = bench_eigen_divide_conquer(A, cfg);
    CAPTURE(gallery::to_string(fam));
    CHECK(r.block_dims.size() >= 2);
    CHECK(r.dense_values.size() == n);
    CHECK(r.blocked_values.size() == n);
    CHECK(r.eigenvalue_agreement <= 1e-8 * A.norm());
  }
}

TEST_CASE("bench on an indecomposable matrix still agrees") {
  BenchConfig cfg;
  cfg.repetitions = 1;
  const ComplexMatrix A = gallery::random_complex(30, 5);
  const auto r = bench_eigen_divide_conquer(A, cfg);
  CHECK(r.block_dims == std::vector<Index>{30});
  CHECK(r.eigenvalue_agreement <= 1e-8 * A.norm());
}

TEST_CASE("parallel blockwise bench agrees with serial") {
  BenchConfig cfg;
  cfg.repetitions = 1;
  const ComplexMatrix A = gallery::make_static(gallery::StaticFamily::clement, 24);
  const auto s = bench_eigen_divide_conquer(A, cfg);
  cfg.threads = 2;
  const auto p = bench_eigen_divide_conquer(A, cfg);
  CHECK(s.blocked_values == p.blocked_values);
}

}  // TEST_SUITE
