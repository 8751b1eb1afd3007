#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "helpers.hpp"
#include "mbd/eigsolve.hpp"
#include "mbd/io/gallery_spec.hpp"

using namespace mbd;
using gallery::StaticFamily;

TEST_SUITE("gallery") {

TEST_CASE("clement(3)") {
  ComplexMatrix want(3, 3);
  want << 0, 1, 0, 2, 0, 2, 0, 1, 0;
  CHECK(gallery::make_static(StaticFamily::clement, 3) == want);
}

TEST_CASE("clement eigenvalues come in +- pairs") {
  for (Index n = 2; n <= 50; ++n) {
    const ComplexMatrix A = gallery::make_static(StaticFamily::clement, n);
    const auto v = eigenvalues_general(A);
    // eigenvalues are the integers -(n-1), -(n-3), ..., n-1 (ill-conditioned for large n)
    const double tol = n <= 20 ? 1e-6 * A.norm() : 0.5 * static_cast<double>(n);
    for (Index k = 0; k < n; ++k) {
      double nearest = 1e300;
      for (Index l = 0; l < n; ++l) nearest = std::min(nearest, std::abs(v(k) + v(l)));
      CHECK(nearest <= tol);
    }
    if (n % 2 == 1 && n <= 20) CHECK(v.cwiseAbs().minCoeff() <= tol);
  }
}

TEST_CASE("circul(2) is normal") {
  ComplexMatrix want(2, 2);
  want << 1, 2, 2, 1;
  const ComplexMatrix A = gallery::make_static(StaticFamily::circul, 2);
  CHECK(A == want);
  CHECK((A.adjoint() * A - A * A.adjoint()).norm() == 0.0);
  ComplexMatrix C = gallery::make_static(StaticFamily::circul, 4);
  CHECK(C.row(0).real() == Eigen::RowVector4d(1, 2, 3, 4));
  CHECK(C.row(1).real() == Eigen::RowVector4d(4, 1, 2, 3));
}

TEST_CASE("invol is involutory") {
  for (Index n = 2; n <= 14; ++n) {
    const ComplexMatrix A = gallery::make_static(StaticFamily::invol, n);
    const double err = (A * A - ComplexMatrix::Identity(n, n)).norm();
    CAPTURE(n);
    CHECK(err <= 1e-12 * A.norm() * A.norm());
  }
  CHECK(gallery::make_static(StaticFamily::invol, 15).norm() > 1e11);
}

TEST_CASE("binomial squares to a multiple of the identity") {
  for (Index n = 2; n <= 30; ++n) {
    const ComplexMatrix A = gallery::make_static(StaticFamily::binomial, n);
    const double scale = std::ldexp(1.0, static_cast<int>(n - 1));
    CAPTURE(n);
    CHECK((A * A - scale * ComplexMatrix::Identity(n, n)).norm() <= 1e-12 * A.norm() * A.norm());
    // entries are integers
    CHECK((A.real().array().round() == A.real().array()).all());
  }
  CHECK(gallery::make_static(StaticFamily::binomial, 31).norm() > 1e8);
}

TEST_CASE("static families reject tiny sizes and unknown names") {
  CHECK_THROWS_AS(gallery::make_static(StaticFamily::circul, 1), Error);
  CHECK_THROWS_AS(gallery::static_family_from_string("hilb"), Error);
  CHECK(gallery::static_family_from_string("invol") == StaticFamily::invol);
}

TEST_CASE("planted flows have the planted structure") {
  for (const char* preset : {"fig1", "fig2", "fig3", "fig4"}) {
    const auto spec = io::parse_flow_spec(preset);
    const auto flow = gallery::make_flow(spec);
    const ComplexMatrix C = gallery::conjugator_matrix(spec);
    const Index n = spec.dimension();
    CHECK(flow.dimension() == n);
    // C A(t) C^{-1} is block diagonal
    const ComplexMatrix B = C * flow.sample(Parameter(0.4, 0.2)) * C.adjoint();
    std::vector<std::vector<Index>> groups;
    Index at = 0;
    for (const auto& b : spec.blocks) {
      std::vector<Index> g;
      for (Index k = 0; k < b.dim; ++k) g.push_back(at + k);
      groups.push_back(g);
      at += b.dim;
    }
    CHECK(offblock_residual(B, BlockPartition(n, groups)) <= 1e-13 * B.norm());
  }
}

TEST_CASE("Jordan blocks share one eigenvalue") {
  const auto spec = io::parse_flow_spec("4: 4J; none; seed=3");
  const ComplexMatrix B = gallery::make_flow(spec).sample(1.3);
  for (Index i = 1; i < 4; ++i) {
    CHECK(B(i, i) == B(0, 0));
    CHECK(std::abs(B(i - 1, i)) >= 0.5);
    for (Index j = 0; j < i; ++j) CHECK(B(i, j) == Complex(0.0));
  }
}

TEST_CASE("hermitean specs produce hermitean samples") {
  const auto flow = gallery::make_flow(io::parse_flow_spec("12: 6,4,2; hermitean; seed=8"));
  CHECK(flow.kind() == FlowKind::hermitean);
  CHECK_FALSE(flow.accepts_complex());
  const ComplexMatrix M = flow.sample(2.0);
  CHECK((M - M.adjoint()).norm() <= 1e-13 * M.norm());
}

TEST_CASE("fixed seed is deterministic") {
  const auto spec = io::parse_flow_spec("fig1");
  CHECK(gallery::conjugator_matrix(spec) == gallery::conjugator_matrix(spec));
  CHECK(gallery::make_flow(spec).sample(0.3) == gallery::make_flow(spec).sample(0.3));
  auto other = spec;
  other.seed = 2;
  CHECK(gallery::make_flow(other).sample(0.3) != gallery::make_flow(spec).sample(0.3));
  CHECK(gallery::random_unitary(5, 9) == gallery::random_unitary(5, 9));
  const ComplexMatrix U = gallery::random_unitary(5, 9);
  CHECK((U.adjoint() * U - ComplexMatrix::Identity(5, 5)).norm() <= 1e-13);
}

TEST_CASE("random per sample blocks redraw on every call") {
  const auto spec = io::parse_flow_spec("fig4");
  const auto flow = gallery::make_flow(spec);
  CHECK(flow.sample(0.5) != flow.sample(0.5));
  // redraws stay inside the blocks
  const ComplexMatrix C = gallery::conjugator_matrix(spec);
  const ComplexMatrix B = C * flow.sample(0.5) * C.adjoint();
  std::vector<Index> g1(7), g2(5);
  std::iota(g1.begin(), g1.end(), Index{0});
  std::iota(g2.begin(), g2.end(), Index{7});
  CHECK(offblock_residual(B, BlockPartition(13, {g1, g2, {12}})) <= 1e-13 * B.norm());
}

TEST_CASE("spec validation") {
  gallery::FlowSpec spec;
  CHECK_THROWS_AS(gallery::validate(spec), Error);
  spec.blocks = {{3, gallery::BlockKind::jordan}};
  spec.hermitean = true;
  CHECK_THROWS_AS(gallery::validate(spec), Error);
  spec.blocks = {{3}};
  spec.conjugator = gallery::Conjugator::general;
  CHECK_THROWS_AS(gallery::validate(spec), Error);
  spec.conjugator = gallery::Conjugator::unitary;
  spec.blocks = {{0}};
  CHECK_THROWS_AS(gallery::validate(spec), Error);
}

}  // TEST_SUITE
