#pragma once

#include <filesystem>
#include <iosfwd>

#include "mbd/types.hpp"

namespace mbd::io {

enum class MMFormat { array, coordinate };
enum class MMField { automatic, real, complex };

// Reads "%%MatrixMarket matrix {array|coordinate} {real|integer|complex}
// {general|symmetric|hermitian|skew-symmetric}". Throws parse_error.
ComplexMatrix read_matrix_market(std::istream& in);
ComplexMatrix read_matrix_market(const std::filesystem::path& path);

// Entries are printed with 17 significant digits, so reading the file back
// reproduces every double exactly. `automatic` writes real when all
// imaginary parts are zero. Coordinate output skips exact zeros.
void write_matrix_market(std::ostream& out, const ComplexMatrix& M, MMFormat format = MMFormat::array,
                         MMField field = MMField::automatic);
void write_matrix_market(const std::filesystem::path& path, const ComplexMatrix& M,
                         MMFormat format = MMFormat::array, MMField field = MMField::automatic);

}  // namespace mbd::io
