#include "gi/csv.hpp"

#include <cmath>
#include <cstdio>

namespace gi {

std::string format_real(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void CsvWriter::header(std::initializer_list<std::string_view> columns) {
  bool first = true;
  for (auto c : columns) emit(c, first);
  out_ << '\n';
}

}  // namespace gi
