#include "cfslv/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "cfslv/errors.hpp"

namespace cfslv {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view token) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  T value{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size())
    throw InvalidArgument("malformed number '" + std::string(token) + "'");
  return value;
}

template <class T>
std::vector<T> parse_list(std::string_view text) {
  std::vector<T> out;
  if (trim(text).empty()) throw InvalidArgument("empty list");
  std::size_t pos = 0;
  while (true) {
    const auto comma = text.find(',', pos);
    out.push_back(parse_number<T>(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

std::vector<double> parse_double_list(std::string_view text) { return parse_list<double>(text); }
std::vector<Integer> parse_integer_list(std::string_view text) { return parse_list<Integer>(text); }

Matrix read_matrix(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("matrix file: missing header line");
  std::istringstream header(line);
  long long rows = 0;
  long long cols = 0;
  std::string extra;
  if (!(header >> rows >> cols) || (header >> extra) || rows <= 0 || cols <= 0)
    throw InvalidArgument("matrix file: header must be two positive integers 'rows cols'");

  Matrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (!std::getline(in, line)) throw InvalidArgument("matrix file: expected " + std::to_string(rows) + " rows");
    std::istringstream row(line);
    std::string token;
    std::size_t j = 0;
    while (row >> token) {
      if (j == m.cols()) throw InvalidArgument("matrix file: too many entries in row " + std::to_string(i + 1));
      m(i, j++) = parse_number<double>(token);
    }
    if (j != m.cols()) throw InvalidArgument("matrix file: too few entries in row " + std::to_string(i + 1));
  }
  while (std::getline(in, line))
    if (!trim(line).empty()) throw InvalidArgument("matrix file: trailing content after last row");
  return m;
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open matrix file '" + path + "'");
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const Matrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << format_double(m(i, j));
    out << '\n';
  }
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_vector(std::span<const Integer> v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

std::string format_vector(std::span<const double> v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s + "]";
}

ResultDocument& ResultDocument::add(std::string key, std::string value) {
  fields_.emplace_back(std::move(key), std::move(value));
  return *this;
}

ResultDocument& ResultDocument::add(std::string key, double value) {
  return add(std::move(key), format_double(value));
}

ResultDocument& ResultDocument::add(std::string key, std::uint64_t value) {
  return add(std::move(key), std::to_string(value));
}

ResultDocument& ResultDocument::add(std::string key, std::span<const Integer> value) {
  return add(std::move(key), format_vector(value));
}

std::string ResultDocument::str() const {
  std::string s;
  for (const auto& [k, v] : fields_) s += k + "=" + v + "\n";
  return s;
}

std::ostream& operator<<(std::ostream& out, const ResultDocument& doc) { return out << doc.str(); }

}  // namespace cfslv
