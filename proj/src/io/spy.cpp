#include "mbd/io/spy.hpp"

#include <fstream>

namespace mbd::io {

std::string spy_ascii(const PatternMatrix& P) {
  std::string out;
  for (Index i = 0; i < P.size(); ++i) {
    for (Index j = 0; j < P.size(); ++j) out += P(i, j) ? "█" : "·";
    out += '\n';
  }
  return out;
}

std::string spy_pbm(const PatternMatrix& P) {
  const auto n = std::to_string(P.size());
  std::string out = "P1\n" + n + ' ' + n + '\n';
  for (Index i = 0; i < P.size(); ++i) {
    for (Index j = 0; j < P.size(); ++j) {
      if (j) out += ' ';
      out += P(i, j) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

PatternMatrix permute_pattern(const PatternMatrix& P, const std::vector<Index>& perm) {
  const Index n = P.size();
  if (static_cast<Index>(perm.size()) != n) throw Error(ErrorCode::size_mismatch, "permutation length differs");
  ComplexMatrix bits(n, n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      bits(a, b) = P(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]) ? 1.0 : 0.0;
  return threshold_pattern(bits, 0.5);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io_failure, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::io_failure, "write failed for " + path.string());
}

}  // namespace mbd::io
