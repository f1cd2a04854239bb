#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace hiercast::csv {

// Minimal comma-separated support for the unquoted formats this project reads
// and writes. Fields must not contain commas or newlines.

class Reader {
 public:
  Reader(const std::string& path, const char* module);

  const std::vector<std::string>& header() const { return header_; }
  // Column position or -1.
  int column(const std::string& name) const;
  // Position of a required column; throws SchemaError naming it.
  int require(const std::string& name) const;

  // Reads the next data row into `out`; false at end of file.
  bool next(std::vector<std::string>& out);
  std::size_t line_number() const { return line_; }
  const std::string& path() const { return path_; }

 private:
  std::ifstream in_;
  std::string path_;
  std::string module_;
  std::vector<std::string> header_;
  std::size_t line_ = 0;
};

class Writer {
 public:
  Writer(const std::string& path, const char* module);
  void row(const std::vector<std::string>& fields);
  void raw_line(const std::string& line);

 private:
  std::ofstream out_;
};

}  // namespace hiercast::csv
