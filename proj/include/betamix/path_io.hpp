#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "betamix/types.hpp"

namespace betamix {

// Path files hold one observation per line after a `# model=..., n=..., seed=...`
// header. Comment lines start with '#'.
struct PathFile {
  std::string header;
  std::vector<double> values;
};

std::string path_header(const std::string& model, std::size_t n, std::uint64_t seed);

void write_path_file(std::ostream& out, const std::string& header, const RealPath& path);
void write_path_file(std::ostream& out, const std::string& header, const SymbolPath& path);

PathFile read_path_file(std::istream& in);

/// Interprets the values as symbols. The alphabet defaults to max symbol + 1.
/// Throws DomainError on negative or non-integer values.
SymbolPath to_symbol_path(const PathFile& file, std::optional<std::size_t> alphabet = std::nullopt);

/// One matrix row per line, comma separated.
Eigen::MatrixXd read_matrix_csv(std::istream& in);

/// "0.9,0.1;0.2,0.8" style inline matrix.
Eigen::MatrixXd parse_inline_matrix(const std::string& text);

}  // namespace betamix
