#pragma once

#include <concepts>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>

namespace gi {

/// Reals are written with 12 significant digits; infinities as "inf"/"-inf".
std::string format_real(double x);

/// Minimal comma-separated writer: one header row, then rows of cells.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(std::initializer_list<std::string_view> columns);

  template <typename... Cells>
  void row(const Cells&... cells) {
    bool first = true;
    ((emit(cells, first)), ...);
    out_ << '\n';
  }

 private:
  void separator(bool& first) {
    if (!first) out_ << ',';
    first = false;
  }
  void emit(double x, bool& first) {
    separator(first);
    out_ << format_real(x);
  }
  template <std::integral I>
  void emit(I x, bool& first) {
    separator(first);
    out_ << x;
  }
  void emit(std::string_view s, bool& first) {
    separator(first);
    out_ << s;
  }
  void emit(const char* s, bool& first) { emit(std::string_view(s), first); }
  void emit(const std::string& s, bool& first) { emit(std::string_view(s), first); }

  std::ostream& out_;
};

}  // namespace gi
