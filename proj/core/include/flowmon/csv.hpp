#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flowmon {

// Minimal RFC-4180-style CSV. Fields are quoted on write only when they
// contain a comma, quote, or newline; the reader accepts both forms.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void row(const std::vector<std::string>& fields);
  static std::string escape(const std::string& field);

 private:
  std::ostream& out_;
};

class CsvReader {
 public:
  CsvReader(std::istream& in, std::string name) : in_(in), name_(std::move(name)) {}
  // Reads one record (may span lines inside quotes). Returns false at EOF.
  bool next(std::vector<std::string>& fields);
  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::string name_;
  std::size_t line_ = 0;
};

}  // namespace flowmon
