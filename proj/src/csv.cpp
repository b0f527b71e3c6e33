#include "pii/csv.hpp"

#include <fmt/format.h>

#include <cmath>
#include <stdexcept>

namespace pii {

std::string format_number(double v) {
  if (std::isnan(v))
    return "nan";
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

CsvWriter::CsvWriter(const std::filesystem::path& path) : path_(path), out_(path, std::ios::binary) {
  if (!out_)
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
}

void CsvWriter::comment(std::string_view key, std::string_view value) {
  out_ << "# " << key << '=' << value << '\n';
}

void CsvWriter::comment(std::string_view key, double value) { comment(key, format_number(value)); }

void CsvWriter::header(std::initializer_list<std::string_view> columns) {
  std::string line;
  for (auto c : columns) {
    line += c;
    line += ',';
  }
  line.back() = '\n';
  out_ << line;
}

void CsvWriter::close() {
  out_.flush();
  if (!out_)
    throw std::runtime_error("write to '" + path_.string() + "' failed");
  out_.close();
}

} // namespace pii
