#include "mbd/io/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include "mbd/io/matrix_market.hpp"

namespace mbd::io {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::parse_error, "manifest line " + std::to_string(line) + ": " + what);
}

std::string format(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct ParameterLess {
  bool operator()(Parameter a, Parameter b) const {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  }
};

}  // namespace

FlowKind flow_kind_from_string(const std::string& s) {
  if (s == "hermitean" || s == "hermitian") return FlowKind::hermitean;
  if (s == "general") return FlowKind::general;
  throw Error(ErrorCode::parse_error, "unknown flow kind '" + s + "'");
}

std::vector<ManifestEntry> read_manifest(std::istream& in) {
  std::vector<ManifestEntry> out;
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    double re = 0.0, im = 0.0;
    ManifestEntry e;
    std::string kind, extra;
    if (!(ls >> re >> im)) fail(number, "expected 're im filename kind'");
    if (!(ls >> e.file >> kind)) fail(number, "expected 're im filename kind'");
    if (ls >> extra) fail(number, "unexpected trailing field '" + extra + "'");
    try {
      e.kind = flow_kind_from_string(kind);
    } catch (const Error&) {
      fail(number, "unknown kind '" + kind + "'");
    }
    e.t = {re, im};
    out.push_back(std::move(e));
  }
  return out;
}

void write_manifest(std::ostream& out, const std::vector<ManifestEntry>& entries) {
  for (const auto& e : entries)
    out << format(e.t.real()) << ' ' << format(e.t.imag()) << ' ' << e.file << ' ' << to_string(e.kind) << '\n';
}

MatrixFlow load_flow_directory(const std::filesystem::path& dir) {
  const auto manifest_path = dir / manifest_name;
  std::ifstream in(manifest_path);
  if (!in) throw Error(ErrorCode::io_failure, "cannot open " + manifest_path.string());
  const auto entries = read_manifest(in);
  if (entries.empty()) throw Error(ErrorCode::parse_error, manifest_path.string() + " lists no samples");

  auto table = std::make_shared<std::map<Parameter, ComplexMatrix, ParameterLess>>();
  std::vector<Parameter> params;
  const FlowKind kind = entries.front().kind;
  Index n = -1;
  for (const auto& e : entries) {
    if (e.kind != kind) throw Error(ErrorCode::parse_error, "manifest mixes hermitean and general samples");
    ComplexMatrix M = read_matrix_market(dir / e.file);
    require_square_finite(M, e.file.c_str());
    if (n < 0) n = M.rows();
    if (M.rows() != n) throw Error(ErrorCode::size_mismatch, e.file + " does not match the first sample's size");
    if (!table->emplace(e.t, std::move(M)).second)
      throw Error(ErrorCode::parse_error, "manifest repeats a parameter");
    params.push_back(e.t);
  }

  auto sampler = [table](Parameter t) -> ComplexMatrix {
    const auto it = table->find(t);
    if (it == table->end()) throw Error(ErrorCode::sampling_failed, "parameter is not one of the stored samples");
    return it->second;
  };
  return MatrixFlow(n, kind, std::move(params), std::move(sampler), true);
}

void save_flow_directory(const std::filesystem::path& dir, const MatrixFlow& flow,
                         const std::vector<Parameter>& params) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::io_failure, "cannot create " + dir.string() + ": " + ec.message());
  std::vector<ManifestEntry> entries;
  for (std::size_t k = 0; k < params.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "sample_%03zu.mtx", k);
    write_matrix_market(dir / name, flow.sample(params[k]));
    entries.push_back({params[k], name, flow.kind()});
  }
  std::ofstream out(dir / manifest_name);
  if (!out) throw Error(ErrorCode::io_failure, "cannot write manifest in " + dir.string());
  write_manifest(out, entries);
}

}  // namespace mbd::io
