#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace crimepat {

// Streaming RFC-4180 reader: quoted fields, doubled quotes, embedded line breaks,
// LF or CRLF terminators. A leading UTF-8 byte-order mark is dropped. Empty
// physical lines are skipped.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in, char delimiter = ',');

  // False once the input is exhausted. Throws Error(MalformedInput) on an
  // unterminated quoted field.
  bool next(std::vector<std::string>& fields);

  // Physical line on which the most recently returned record started (1-based).
  std::size_t record_line() const noexcept { return record_line_; }

 private:
  int get();
  int peek();

  std::istream& in_;
  char delimiter_;
  std::size_t line_ = 1;
  std::size_t record_line_ = 0;
  bool at_start_ = true;
};

std::string csv_escape(std::string_view field);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace crimepat
