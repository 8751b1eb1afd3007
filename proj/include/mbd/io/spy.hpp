#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mbd/pattern.hpp"

namespace mbd::io {

// One line per row, left to right: U+2588 for true, U+00B7 for false.
std::string spy_ascii(const PatternMatrix& P);

// Plain PBM (P1): header "P1", "n n", then row i on line i as space
// separated 0/1 digits.
std::string spy_pbm(const PatternMatrix& P);

// P with rows and columns reordered: entry (a, b) is P(perm[a], perm[b]).
PatternMatrix permute_pattern(const PatternMatrix& P, const std::vector<Index>& perm);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace mbd::io
