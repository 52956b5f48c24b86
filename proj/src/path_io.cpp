#include "betamix/path_io.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "betamix/errors.hpp"

namespace betamix {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const char* what) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw DomainError(std::string(what) + ": cannot parse '" + t + "'");
  }
  if (used != t.size()) throw DomainError(std::string(what) + ": cannot parse '" + t + "'");
  return v;
}

Eigen::MatrixXd rows_to_matrix(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw DomainError("matrix has no rows");
  const std::size_t cols = rows.front().size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DomainError("matrix rows have different lengths");
    for (std::size_t j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

std::vector<double> split_numbers(const std::string& line, char sep) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) out.push_back(parse_number(cell, "matrix"));
  return out;
}

}  // namespace

std::string path_header(const std::string& model, std::size_t n, std::uint64_t seed) {
  return "model=" + model + ", n=" + std::to_string(n) + ", seed=" + std::to_string(seed);
}

void write_path_file(std::ostream& out, const std::string& header, const RealPath& path) {
  out << "# " << header << '\n' << std::setprecision(17);
  for (double v : path.values) out << v << '\n';
}

void write_path_file(std::ostream& out, const std::string& header, const SymbolPath& path) {
  out << "# " << header << '\n';
  for (auto v : path.symbols) out << v << '\n';
}

PathFile read_path_file(std::istream& in) {
  PathFile f;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      if (f.header.empty()) f.header = trim(t.substr(1));
      continue;
    }
    f.values.push_back(parse_number(t, "path file"));
  }
  if (f.values.size() < 2) throw DomainError("path file holds fewer than 2 observations");
  return f;
}

SymbolPath to_symbol_path(const PathFile& file, std::optional<std::size_t> alphabet) {
  std::vector<std::uint32_t> s;
  s.reserve(file.values.size());
  std::uint32_t max_symbol = 0;
  for (double v : file.values) {
    if (!(v >= 0.0) || std::floor(v) != v || v > 4.0e9) {
      throw DomainError("finite estimator needs non-negative integer symbols, got " +
                        std::to_string(v));
    }
    s.push_back(static_cast<std::uint32_t>(v));
    max_symbol = std::max(max_symbol, s.back());
  }
  return SymbolPath(std::move(s), alphabet.value_or(static_cast<std::size_t>(max_symbol) + 1));
}

Eigen::MatrixXd read_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    rows.push_back(split_numbers(t, ','));
  }
  return rows_to_matrix(rows);
}

Eigen::MatrixXd parse_inline_matrix(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) {
    if (!trim(row).empty()) rows.push_back(split_numbers(row, ','));
  }
  return rows_to_matrix(rows);
}

}  // namespace betamix
