#include "mbd/gallery.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <numeric>
#include <random>

#include <Eigen/QR>

namespace mbd::gallery {

namespace {

using Rng = std::mt19937_64;

Complex unit_square(Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double re = u(rng);
  return {re, u(rng)};
}

// a + b cos(w t) + c sin(w t)
struct TrigEntry {
  Complex a, b, c;
  double w = 1.0;

  Complex operator()(Parameter t) const { return a + b * std::cos(w * t) + c * std::sin(w * t); }

  static TrigEntry draw(Rng& rng) {
    std::uniform_int_distribution<int> freq(1, 3);
    TrigEntry e;
    e.a = unit_square(rng);
    e.b = unit_square(rng);
    e.c = unit_square(rng);
    e.w = freq(rng);
    return e;
  }
};

// One diagonal block; entry (i, j) of the block is one of:
// fixed value, trig function, or a fresh draw per call.
struct BlockGenerator {
  enum class Entry { fixed, trig, fresh };

  Index dim = 1;
  bool hermitean = false;
  std::vector<Entry> kind;
  std::vector<Complex> fixed;
  std::vector<TrigEntry> trig;

  ComplexMatrix operator()(Parameter t, Rng* fresh_rng) const {
    ComplexMatrix B(dim, dim);
    for (Index i = 0; i < dim; ++i)
      for (Index j = 0; j < dim; ++j) {
        const auto k = static_cast<std::size_t>(i * dim + j);
        switch (kind[k]) {
          case Entry::fixed: B(i, j) = fixed[k]; break;
          case Entry::trig: B(i, j) = trig[k](t); break;
          case Entry::fresh: B(i, j) = unit_square(*fresh_rng); break;
        }
      }
    if (hermitean) return (B + B.adjoint()) * 0.5;
    return B;
  }
};

BlockGenerator draw_block(const BlockSpec& spec, bool hermitean, Rng& rng) {
  BlockGenerator g;
  g.dim = spec.dim;
  g.hermitean = hermitean;
  const auto cells = static_cast<std::size_t>(spec.dim * spec.dim);
  g.kind.assign(cells, BlockGenerator::Entry::fixed);
  g.fixed.assign(cells, Complex(0.0));
  g.trig.assign(cells, TrigEntry{});
  std::bernoulli_distribution coin(0.5);

  for (Index i = 0; i < spec.dim; ++i)
    for (Index j = 0; j < spec.dim; ++j) {
      const auto k = static_cast<std::size_t>(i * spec.dim + j);
      switch (spec.kind) {
        case BlockKind::smooth:
          g.kind[k] = BlockGenerator::Entry::trig;
          g.trig[k] = TrigEntry::draw(rng);
          break;
        case BlockKind::constant:
          g.fixed[k] = unit_square(rng);
          break;
        case BlockKind::random_per_sample:
          // Diagonal entries stay smooth so every block keeps a time-varying part.
          if (i != j && coin(rng)) {
            g.kind[k] = BlockGenerator::Entry::fresh;
          } else {
            g.kind[k] = BlockGenerator::Entry::trig;
            g.trig[k] = TrigEntry::draw(rng);
          }
          break;
        case BlockKind::jordan:
          if (j == i + 1) {
            std::uniform_real_distribution<double> mag(0.5, 1.5);
            std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
            g.fixed[k] = std::polar(mag(rng), phase(rng));
          } else if (j > i + 1) {
            g.kind[k] = BlockGenerator::Entry::trig;
            g.trig[k] = TrigEntry::draw(rng);
          }
          break;
      }
    }

  if (spec.kind == BlockKind::jordan) {
    // One eigenvalue function shared along the diagonal.
    const TrigEntry lambda = TrigEntry::draw(rng);
    for (Index i = 0; i < spec.dim; ++i) {
      const auto k = static_cast<std::size_t>(i * spec.dim + i);
      g.kind[k] = BlockGenerator::Entry::trig;
      g.trig[k] = lambda;
    }
  }
  return g;
}

}  // namespace

Index FlowSpec::dimension() const {
  return std::accumulate(blocks.begin(), blocks.end(), Index{0}, [](Index s, const BlockSpec& b) { return s + b.dim; });
}

void validate(const FlowSpec& spec) {
  if (spec.blocks.empty()) throw Error(ErrorCode::invalid_spec, "flow spec has no blocks");
  for (const auto& b : spec.blocks) {
    if (b.dim < 1) throw Error(ErrorCode::invalid_spec, "block dimension must be positive");
    if (spec.hermitean && b.kind == BlockKind::jordan)
      throw Error(ErrorCode::invalid_spec, "hermitean flows cannot contain Jordan blocks");
  }
  if (spec.hermitean && spec.conjugator == Conjugator::general)
    throw Error(ErrorCode::invalid_spec, "hermitean flows need a unitary conjugator");
  if (spec.hermitean)
    if (const auto* set = std::get_if<std::vector<Parameter>>(&spec.domain))
      for (const auto& t : *set)
        if (t.imag() != 0.0) throw Error(ErrorCode::invalid_spec, "hermitean flows take real parameters only");
}

ComplexMatrix random_unitary(Index n, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> normal;
  ComplexMatrix G(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) G(i, j) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<ComplexMatrix> qr(G);
  ComplexMatrix Q = qr.householderQ();
  const ComplexMatrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const double mag = std::abs(R(j, j));
    if (mag > 0.0) Q.col(j) *= R(j, j) / mag;
  }
  return Q;
}

ComplexMatrix random_complex(Index n, std::uint64_t seed) {
  Rng rng(seed);
  ComplexMatrix M(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) M(i, j) = unit_square(rng);
  return M;
}

ComplexMatrix random_hermitean(Index n, std::uint64_t seed) {
  const ComplexMatrix M = random_complex(n, seed);
  return (M + M.adjoint()) * 0.5;
}

ComplexMatrix conjugator_matrix(const FlowSpec& spec) {
  const Index n = spec.dimension();
  switch (spec.conjugator) {
    case Conjugator::none: return ComplexMatrix::Identity(n, n);
    case Conjugator::unitary: return random_unitary(n, spec.seed);
    case Conjugator::general: return random_complex(n, spec.seed);
  }
  return ComplexMatrix::Identity(n, n);
}

MatrixFlow make_flow(const FlowSpec& spec) {
  validate(spec);
  const Index n = spec.dimension();

  const ComplexMatrix C = conjugator_matrix(spec);
  ComplexMatrix C_inv;
  if (spec.conjugator == Conjugator::unitary)
    C_inv = C.adjoint();
  else
    C_inv = C.partialPivLu().solve(ComplexMatrix::Identity(n, n));

  // Block coefficients come from a stream separate from the conjugator's.
  Rng rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<BlockGenerator> blocks;
  for (const auto& b : spec.blocks) blocks.push_back(draw_block(b, spec.hermitean, rng));
  auto fresh = std::make_shared<Rng>(spec.seed ^ 0xc2b2ae3d27d4eb4fULL);

  auto sampler = [C, C_inv, blocks = std::move(blocks), fresh, n,
                  conj = spec.conjugator](Parameter t) -> ComplexMatrix {
    ComplexMatrix B = ComplexMatrix::Zero(n, n);
    Index offset = 0;
    for (const auto& g : blocks) {
      B.block(offset, offset, g.dim, g.dim) = g(t, fresh.get());
      offset += g.dim;
    }
    if (conj == Conjugator::none) return B;
    return C_inv * B * C;
  };
  const bool real_only = spec.hermitean;
  return MatrixFlow(n, spec.hermitean ? FlowKind::hermitean : FlowKind::general, spec.domain, std::move(sampler),
                    !real_only);
}

const char* to_string(StaticFamily family) {
  switch (family) {
    case StaticFamily::clement: return "clement";
    case StaticFamily::circul: return "circul";
    case StaticFamily::binomial: return "binomial";
    case StaticFamily::invol: return "invol";
  }
  return "unknown";
}

StaticFamily static_family_from_string(const std::string& name) {
  for (auto f : {StaticFamily::clement, StaticFamily::circul, StaticFamily::binomial, StaticFamily::invol})
    if (name == to_string(f)) return f;
  throw Error(ErrorCode::invalid_spec, "unknown gallery family '" + name + "'");
}

ComplexMatrix make_static(StaticFamily family, Index n) {
  if (n < 2) throw Error(ErrorCode::invalid_spec, "gallery matrices need n >= 2");
  ComplexMatrix A = ComplexMatrix::Zero(n, n);
  switch (family) {
    case StaticFamily::clement:
      for (Index k = 1; k < n; ++k) {
        A(k - 1, k) = static_cast<double>(k);
        A(k, k - 1) = static_cast<double>(n - k);
      }
      break;
    case StaticFamily::circul:
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) A(i, j) = static_cast<double>(((j - i) % n + n) % n + 1);
      break;
    case StaticFamily::binomial: {
      // L * diag((-2)^k) * U with L(i, j) = C(i, j) and U = L reversed in
      // both indices. The sum is accumulated in exact integers: in floating
      // point the cancelling terms (up to ~1e17 for n = 31) leave absolute
      // errors of order one in entries of size ~1e8.
      using Wide = __int128;
      std::vector<std::vector<Wide>> C(static_cast<std::size_t>(n), std::vector<Wide>(static_cast<std::size_t>(n), 0));
      for (std::size_t i = 0; i < C.size(); ++i) {
        C[i][0] = 1;
        for (std::size_t j = 1; j <= i; ++j) C[i][j] = C[i - 1][j - 1] + C[i - 1][j];
      }
      const auto m = static_cast<std::size_t>(n - 1);
      for (std::size_t i = 0; i <= m; ++i)
        for (std::size_t j = 0; j <= m; ++j) {
          Wide sum = 0;
          Wide power = 1;
          for (std::size_t k = 0; k <= m; ++k, power *= -2) sum += C[i][k] * power * C[m - k][m - j];
          A(static_cast<Index>(i), static_cast<Index>(j)) = static_cast<double>(sum);
        }
      break;
    }
    case StaticFamily::invol: {
      Eigen::MatrixXd H(n, n);
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) H(i, j) = 1.0 / static_cast<double>(i + j + 1);
      double d = -static_cast<double>(n);
      H.col(0) *= d;
      for (Index i = 0; i + 1 < n; ++i) {
        const double k = static_cast<double>(i + 1);
        d = -(static_cast<double>(n) + k) * (static_cast<double>(n) - k) * d / (k * k);
        H.row(i + 1) *= d;
      }
      A = H.cast<Complex>();
      break;
    }
  }
  return A;
}

}  // namespace mbd::gallery
