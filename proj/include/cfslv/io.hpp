#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cfslv/lattice.hpp"
#include "cfslv/matrix.hpp"

namespace cfslv {

/// "1.5,-2,3e-1" → {1.5, -2, 0.3}. Throws InvalidArgument on malformed text.
std::vector<double> parse_double_list(std::string_view text);
std::vector<Integer> parse_integer_list(std::string_view text);

/// Plain-text matrix: a header line "rows cols" followed by `rows` lines of
/// `cols` whitespace-separated numbers.
Matrix read_matrix(std::istream& in);
Matrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const Matrix& m);

/// 17 significant digits (printf "%.17g"), enough to round-trip any double.
std::string format_double(double x);
/// "[1,-2,0]"
std::string format_vector(std::span<const Integer> v);
std::string format_vector(std::span<const double> v);

/// Line-delimited `key=value` result document with insertion-ordered fields.
class ResultDocument {
 public:
  ResultDocument& add(std::string key, std::string value);
  ResultDocument& add(std::string key, double value);
  ResultDocument& add(std::string key, std::uint64_t value);
  ResultDocument& add(std::string key, std::span<const Integer> value);

  const std::vector<std::pair<std::string, std::string>>& fields() const { return fields_; }
  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

std::ostream& operator<<(std::ostream& out, const ResultDocument& doc);

}  // namespace cfslv
