#include "biunitary/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "biunitary/search.hpp"

namespace biunitary {

MatrixFormat parse_format(std::string_view name) {
  if (name == "cart" || name == "CART") return MatrixFormat::Cart;
  if (name == "phase" || name == "PHASE") return MatrixFormat::Phase;
  throw Error("unknown matrix format '" + std::string(name) + "' (expected cart or phase)");
}

std::string_view to_string(MatrixFormat f) { return f == MatrixFormat::Cart ? "CART" : "PHASE"; }

std::string format_double(double x) {
  if (!std::isfinite(x)) throw Error("cannot write a non-finite number");
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  if (ec != std::errc()) throw Error("number formatting failed");
  return {buf, end};
}

namespace {

double parse_double(std::string_view tok, int line) {
  double x = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || ptr != last || !std::isfinite(x)) {
    throw Error("line " + std::to_string(line) + ": bad number '" + std::string(tok) + "'");
  }
  return x;
}

bool skip_line(const std::string& s) {
  const auto pos = s.find_first_not_of(" \t\r");
  return pos == std::string::npos || s[pos] == '#';
}

}  // namespace

MatrixFile read_matrix(std::istream& in) {
  std::string line;
  int lineno = 0;
  MatrixFile file;
  long n = 0;
  bool have_header = false;
  std::vector<std::string> tokens;
  std::vector<int> row_lines;

  while (std::getline(in, line)) {
    ++lineno;
    if (skip_line(line)) continue;
    std::istringstream ls(line);
    if (!have_header) {
      std::string tag;
      ls >> tag >> n;
      if (!ls || n < 1) throw Error("line " + std::to_string(lineno) + ": expected '<CART|PHASE> <n>'");
      std::string extra;
      if (ls >> extra) throw Error("line " + std::to_string(lineno) + ": trailing data in header");
      if (tag != "CART" && tag != "PHASE") {
        throw Error("line " + std::to_string(lineno) + ": unknown format tag '" + tag + "'");
      }
      file.format = parse_format(tag);
      have_header = true;
      continue;
    }
    std::vector<std::string> row;
    for (std::string tok; ls >> tok;) row.push_back(tok);
    if (static_cast<long>(row.size()) != n) {
      throw Error("line " + std::to_string(lineno) + ": expected " + std::to_string(n) +
                  " entries, found " + std::to_string(row.size()));
    }
    if (static_cast<long>(tokens.size()) >= n * n) {
      throw Error("line " + std::to_string(lineno) + ": too many rows");
    }
    for (auto& t : row) tokens.push_back(std::move(t));
    row_lines.push_back(lineno);
  }
  if (!have_header) throw Error("empty matrix file");
  if (static_cast<long>(tokens.size()) != n * n) {
    throw Error("expected " + std::to_string(n) + " rows, found " + std::to_string(row_lines.size()));
  }

  const auto m = static_cast<Eigen::Index>(n);
  if (file.format == MatrixFormat::Cart) {
    file.matrix.resize(m, m);
  } else {
    file.phases.resize(m, m);
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const std::string& tok = tokens[static_cast<std::size_t>(i * m + j)];
      const int row_line = row_lines[static_cast<std::size_t>(i)];
      if (file.format == MatrixFormat::Cart) {
        const auto comma = tok.find(',');
        if (comma == std::string::npos || tok.find(',', comma + 1) != std::string::npos) {
          throw Error("line " + std::to_string(row_line) + ": expected 're,im', got '" + tok + "'");
        }
        const std::string_view sv(tok);
        file.matrix(i, j) = Complex(parse_double(sv.substr(0, comma), row_line),
                                    parse_double(sv.substr(comma + 1), row_line));
      } else {
        file.phases(i, j) = parse_double(tok, row_line);
      }
    }
  }
  if (file.format == MatrixFormat::Phase) file.matrix = phases_to_matrix(file.phases);
  return file;
}

MatrixFile read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  try {
    return read_matrix(in);
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

void write_cart(std::ostream& out, const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) throw Error("write: matrix must be square");
  out << "CART " << m.rows() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << format_double(m(i, j).real()) << ',' << format_double(m(i, j).imag());
    }
    out << '\n';
  }
}

void write_phase(std::ostream& out, const RealMatrix& theta) {
  if (theta.rows() != theta.cols() || theta.rows() < 1) throw Error("write: matrix must be square");
  out << "PHASE " << theta.rows() << '\n';
  for (Eigen::Index i = 0; i < theta.rows(); ++i) {
    for (Eigen::Index j = 0; j < theta.cols(); ++j) {
      if (j) out << ' ';
      out << format_double(theta(i, j));
    }
    out << '\n';
  }
}

void write_matrix(std::ostream& out, const ComplexMatrix& m, MatrixFormat format) {
  if (format == MatrixFormat::Cart) {
    write_cart(out, m);
  } else {
    write_phase(out, matrix_to_phases(m));
  }
}

}  // namespace biunitary
