#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mbd/flow.hpp"

namespace mbd::io {

// One line per sample: "re im filename kind", kind in {hermitean, general}.
// Blank lines and lines starting with '#' are ignored.
struct ManifestEntry {
  Parameter t;
  std::string file;
  FlowKind kind = FlowKind::general;
};

inline constexpr const char* manifest_name = "manifest.txt";

std::vector<ManifestEntry> read_manifest(std::istream& in);
void write_manifest(std::ostream& out, const std::vector<ManifestEntry>& entries);

FlowKind flow_kind_from_string(const std::string& s);

// Loads <dir>/manifest.txt and every listed Matrix Market file into a flow
// over exactly the listed parameters. All entries must agree on kind and
// dimension; parameters must be distinct.
MatrixFlow load_flow_directory(const std::filesystem::path& dir);

// Writes one Matrix Market file per parameter plus the manifest.
void save_flow_directory(const std::filesystem::path& dir, const MatrixFlow& flow,
                         const std::vector<Parameter>& params);

}  // namespace mbd::io
