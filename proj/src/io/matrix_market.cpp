#include "mbd/io/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace mbd::io {

namespace {

enum class Symmetry { general, symmetric, hermitian, skew };

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::parse_error, "Matrix Market: " + what); }

// Next line that is neither blank nor a comment.
bool data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '%') continue;
    return true;
  }
  return false;
}

Complex read_value(std::istringstream& ls, bool complex) {
  double re = 0.0, im = 0.0;
  if (!(ls >> re)) fail("missing value");
  if (complex && !(ls >> im)) fail("missing imaginary part");
  return {re, im};
}

void mirror(ComplexMatrix& M, Index i, Index j, Symmetry sym) {
  if (i == j) return;
  switch (sym) {
    case Symmetry::general: break;
    case Symmetry::symmetric: M(j, i) = M(i, j); break;
    case Symmetry::hermitian: M(j, i) = std::conj(M(i, j)); break;
    case Symmetry::skew: M(j, i) = -M(i, j); break;
  }
}

std::string format(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

ComplexMatrix read_matrix_market(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) fail("empty input");
  std::istringstream hs(header);
  std::string banner, object, format_name, field, symmetry;
  hs >> banner >> object >> format_name >> field >> symmetry;
  if (banner != "%%MatrixMarket") fail("missing %%MatrixMarket banner");
  object = lower(object);
  format_name = lower(format_name);
  field = lower(field);
  symmetry = lower(symmetry);
  if (object != "matrix") fail("unsupported object '" + object + "'");
  if (format_name != "array" && format_name != "coordinate") fail("unsupported format '" + format_name + "'");
  if (field != "real" && field != "integer" && field != "complex" && field != "double")
    fail("unsupported field '" + field + "'");
  const bool complex = field == "complex";

  Symmetry sym;
  if (symmetry == "general")
    sym = Symmetry::general;
  else if (symmetry == "symmetric")
    sym = Symmetry::symmetric;
  else if (symmetry == "hermitian")
    sym = Symmetry::hermitian;
  else if (symmetry == "skew-symmetric")
    sym = Symmetry::skew;
  else
    fail("unsupported symmetry '" + symmetry + "'");
  if (sym == Symmetry::hermitian && !complex) sym = Symmetry::symmetric;

  std::string line;
  if (!data_line(in, line)) fail("missing size line");
  std::istringstream size_line(line);
  long long rows = 0, cols = 0, nnz = 0;
  if (!(size_line >> rows >> cols)) fail("malformed size line");
  const bool coordinate = format_name == "coordinate";
  if (coordinate && !(size_line >> nnz)) fail("coordinate size line needs an entry count");
  if (rows < 0 || cols < 0 || nnz < 0) fail("negative size");
  if (sym != Symmetry::general && rows != cols) fail("symmetric storage needs a square matrix");

  ComplexMatrix M = ComplexMatrix::Zero(rows, cols);
  if (coordinate) {
    for (long long k = 0; k < nnz; ++k) {
      if (!data_line(in, line)) fail("expected " + std::to_string(nnz) + " entries, got " + std::to_string(k));
      std::istringstream ls(line);
      long long i = 0, j = 0;
      if (!(ls >> i >> j)) fail("malformed entry line");
      if (i < 1 || i > rows || j < 1 || j > cols) fail("entry index out of range");
      M(i - 1, j - 1) = read_value(ls, complex);
      mirror(M, i - 1, j - 1, sym);
    }
  } else {
    // Column-major; symmetric variants store the lower triangle only.
    for (Index j = 0; j < cols; ++j)
      for (Index i = (sym == Symmetry::general ? 0 : (sym == Symmetry::skew ? j + 1 : j)); i < rows; ++i) {
        if (!data_line(in, line)) fail("too few array entries");
        std::istringstream ls(line);
        M(i, j) = read_value(ls, complex);
        mirror(M, i, j, sym);
      }
  }
  if (data_line(in, line)) fail("trailing data after the last entry");
  return M;
}

ComplexMatrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_failure, "cannot open " + path.string());
  try {
    return read_matrix_market(in);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_matrix_market(std::ostream& out, const ComplexMatrix& M, MMFormat format_kind, MMField field) {
  bool complex = field == MMField::complex;
  if (field == MMField::automatic) complex = (M.imag().array() != 0.0).any();
  const bool coordinate = format_kind == MMFormat::coordinate;

  out << "%%MatrixMarket matrix " << (coordinate ? "coordinate" : "array") << ' '
      << (complex ? "complex" : "real") << " general\n";
  auto value = [&](Complex z) { return complex ? format(z.real()) + ' ' + format(z.imag()) : format(z.real()); };

  if (coordinate) {
    Index nnz = 0;
    for (Index j = 0; j < M.cols(); ++j)
      for (Index i = 0; i < M.rows(); ++i) nnz += M(i, j) != Complex(0.0) ? 1 : 0;
    out << M.rows() << ' ' << M.cols() << ' ' << nnz << '\n';
    for (Index j = 0; j < M.cols(); ++j)
      for (Index i = 0; i < M.rows(); ++i)
        if (M(i, j) != Complex(0.0)) out << i + 1 << ' ' << j + 1 << ' ' << value(M(i, j)) << '\n';
  } else {
    out << M.rows() << ' ' << M.cols() << '\n';
    for (Index j = 0; j < M.cols(); ++j)
      for (Index i = 0; i < M.rows(); ++i) out << value(M(i, j)) << '\n';
  }
}

void write_matrix_market(const std::filesystem::path& path, const ComplexMatrix& M, MMFormat format_kind,
                         MMField field) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io_failure, "cannot write " + path.string());
  write_matrix_market(out, M, format_kind, field);
  if (!out) throw Error(ErrorCode::io_failure, "write failed for " + path.string());
}

}  // namespace mbd::io
