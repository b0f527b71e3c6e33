#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>

namespace pii {

/// Round-trip formatting: 17 significant digits, "nan"/"inf" for non-finite.
std::string format_number(double v);

/// Comma-separated writer with '#'-prefixed metadata lines before the header.
/// Throws std::runtime_error if the file cannot be opened or written.
class CsvWriter {
public:
  explicit CsvWriter(const std::filesystem::path& path);

  void comment(std::string_view key, std::string_view value);
  void comment(std::string_view key, double value);
  void header(std::initializer_list<std::string_view> columns);

  /// Appends one row; fields are numbers, integers or text.
  template <typename... Fields> void row(const Fields&... fields) {
    std::string line;
    (append(line, fields), ...);
    line.back() = '\n';
    out_ << line;
  }

  /// Flushes and reports write failures.
  void close();

private:
  std::filesystem::path path_;
  std::ofstream out_;

  static void append(std::string& line, double v) { line += format_number(v) + ','; }
  static void append(std::string& line, int v) { line += std::to_string(v) + ','; }
  static void append(std::string& line, std::string_view v) {
    line += v;
    line += ',';
  }
};

} // namespace pii
