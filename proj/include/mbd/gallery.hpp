#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mbd/flow.hpp"
#include "mbd/types.hpp"

namespace mbd::gallery {

enum class BlockKind {
  smooth,             // entries a + b cos(wt) + c sin(wt)
  jordan,             // lambda(t) I + strictly upper part, nonzero superdiagonal
  random_per_sample,  // mix of smooth entries and entries redrawn on every call
  constant,
};

enum class Conjugator { none, unitary, general };

struct BlockSpec {
  Index dim = 1;
  BlockKind kind = BlockKind::smooth;
};

// A planted block flow A(t) = C^{-1} blockdiag(B_1(t), ..., B_l(t)) C.
struct FlowSpec {
  std::vector<BlockSpec> blocks;
  Conjugator conjugator = Conjugator::unitary;
  std::uint64_t seed = 1;
  // Hermitean blocks; requires a unitary (or no) conjugator and no Jordan
  // blocks. Such flows only accept real parameters.
  bool hermitean = false;
  FlowDomain domain = Interval{0.0, 6.283185307179586};

  Index dimension() const;
};

// Throws invalid_spec when the spec is inconsistent.
void validate(const FlowSpec& spec);

// Deterministic in (spec, t) except for random_per_sample blocks, which draw
// from a generator owned by the returned flow.
MatrixFlow make_flow(const FlowSpec& spec);

// The fixed conjugator C of make_flow(spec) (identity for Conjugator::none).
ComplexMatrix conjugator_matrix(const FlowSpec& spec);

// Haar-distributed unitary from a seed.
ComplexMatrix random_unitary(Index n, std::uint64_t seed);

// Dense random complex matrix with entries uniform in the unit square.
ComplexMatrix random_complex(Index n, std::uint64_t seed);

// Dense random hermitean matrix.
ComplexMatrix random_hermitean(Index n, std::uint64_t seed);

// Flow demos are meant for n <= 20; larger sizes work but
// are reported as a soft warning by the CLI.
inline constexpr Index demo_size_limit = 20;

enum class StaticFamily { clement, circul, binomial, invol };

const char* to_string(StaticFamily family);
StaticFamily static_family_from_string(const std::string& name);

// Classic test matrices:
//   clement(n)  tridiagonal, zero diagonal, superdiagonal k, subdiagonal n-k
//   circul(n)   circulant with first row 1..n
//   binomial(n) L * diag((-2)^k) * U from binomial coefficients; A^2 = 2^(n-1) I
//   invol(n)    row/column scaled Hilbert matrix with A^2 = I
ComplexMatrix make_static(StaticFamily family, Index n);

}  // namespace mbd::gallery
