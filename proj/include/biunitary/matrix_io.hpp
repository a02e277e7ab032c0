// Plain-text matrix files.
//
//   CART <n>                     PHASE <n>
//   re,im re,im ... (n per row)  θ θ ... (n per row, entry = e^{iθ}/sqrt(n))
//
// Numbers are written with 17 significant digits so that write -> read ->
// write is byte-identical. Blank lines and lines starting with '#' are ignored.
#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "biunitary/cmatrix.hpp"

namespace biunitary {

enum class MatrixFormat { Cart, Phase };

MatrixFormat parse_format(std::string_view name);
std::string_view to_string(MatrixFormat f);

struct MatrixFile {
  MatrixFormat format = MatrixFormat::Cart;
  ComplexMatrix matrix;
  /// Populated for PHASE files only.
  RealMatrix phases;
};

/// Locale-independent shortest-exact-17-digit formatting.
std::string format_double(double x);

/// Throws Error with a line number on malformed input.
MatrixFile read_matrix(std::istream& in);
MatrixFile read_matrix_file(const std::string& path);

void write_cart(std::ostream& out, const ComplexMatrix& m);
void write_phase(std::ostream& out, const RealMatrix& theta);
/// PHASE output stores the entrywise argument of m.
void write_matrix(std::ostream& out, const ComplexMatrix& m, MatrixFormat format);

}  // namespace biunitary
