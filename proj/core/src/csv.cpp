#include "flowmon/csv.hpp"

#include <istream>
#include <ostream>

#include "flowmon/errors.hpp"

namespace flowmon {

std::string CsvWriter::escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << escape(fields[i]);
  }
  out_ << '\n';
}

bool CsvReader::next(std::vector<std::string>& fields) {
  fields.clear();
  std::string line;
  if (!std::getline(in_, line)) return false;
  ++line_;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::string field;
  bool quoted = false;
  std::size_t i = 0;
  while (true) {
    if (i >= line.size()) {
      if (quoted) {
        // Quoted field continues on the next physical line.
        if (!std::getline(in_, line)) {
          throw ParseError("unterminated quoted field", name_ + ":" + std::to_string(line_));
        }
        ++line_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        field += '\n';
        i = 0;
        continue;
      }
      fields.push_back(field);
      return true;
    }
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          i += 2;
        } else {
          quoted = false;
          ++i;
        }
      } else {
        field += c;
        ++i;
      }
    } else if (c == '"' && field.empty()) {
      quoted = true;
      ++i;
    } else if (c == ',') {
      fields.push_back(field);
      field.clear();
      ++i;
    } else {
      field += c;
      ++i;
    }
  }
}

}  // namespace flowmon
