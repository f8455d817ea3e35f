#include "crimepat/csv.hpp"

#include "crimepat/error.hpp"

namespace crimepat {

CsvReader::CsvReader(std::istream& in, char delimiter) : in_(in), delimiter_(delimiter) {}

int CsvReader::get() {
  const int c = in_.get();
  if (c == '\n') ++line_;
  return c;
}

int CsvReader::peek() { return in_.peek(); }

bool CsvReader::next(std::vector<std::string>& fields) {
  fields.clear();
  if (at_start_) {
    at_start_ = false;
    if (peek() == 0xEF) {
      char bom[3];
      in_.read(bom, 3);
      if (!(in_.gcount() == 3 && static_cast<unsigned char>(bom[1]) == 0xBB &&
            static_cast<unsigned char>(bom[2]) == 0xBF)) {
        in_.clear();
        in_.seekg(0);
      }
    }
  }

  // Skip empty physical lines.
  for (;;) {
    const int c = peek();
    if (c == std::char_traits<char>::eof()) return false;
    if (c == '\n') {
      get();
      continue;
    }
    if (c == '\r') {
      get();
      if (peek() == '\n') get();
      continue;
    }
    break;
  }

  record_line_ = line_;
  std::string field;
  bool quoted = false;
  bool field_started_quoted = false;
  for (;;) {
    int c = get();
    if (quoted) {
      if (c == std::char_traits<char>::eof()) {
        throw Error(ErrorCode::MalformedInput,
                    "unterminated quoted field starting on line " + std::to_string(record_line_));
      }
      if (c == '"') {
        if (peek() == '"') {
          get();
          field.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        field.push_back(static_cast<char>(c));
      }
      continue;
    }
    if (c == std::char_traits<char>::eof() || c == '\n') {
      fields.push_back(std::move(field));
      return true;
    }
    if (c == '\r') {
      if (peek() == '\n') get();
      fields.push_back(std::move(field));
      return true;
    }
    if (c == delimiter_) {
      fields.push_back(std::move(field));
      field.clear();
      field_started_quoted = false;
      continue;
    }
    if (c == '"' && field.empty() && !field_started_quoted) {
      quoted = true;
      field_started_quoted = true;
      continue;
    }
    field.push_back(static_cast<char>(c));
  }
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(fields[i]);
  }
  out << '\n';
}

}  // namespace crimepat
