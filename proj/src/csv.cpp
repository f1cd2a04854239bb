#include "hiercast/csv.hpp"

#include "hiercast/errors.hpp"
#include "hiercast/util.hpp"

namespace hiercast::csv {

Reader::Reader(const std::string& path, const char* module) : path_(path), module_(module) {
  in_.open(path);
  if (!in_) throw IoError(module_, "cannot open " + path);
  std::string line;
  if (!std::getline(in_, line)) throw SchemaError(module_, path + " is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  header_ = split(line, ',');
  line_ = 1;
}

int Reader::column(const std::string& name) const {
  for (std::size_t i = 0; i < header_.size(); ++i)
    if (header_[i] == name) return static_cast<int>(i);
  return -1;
}

int Reader::require(const std::string& name) const {
  int c = column(name);
  if (c < 0) throw SchemaError(module_, path_ + ": missing column '" + name + "'");
  return c;
}

bool Reader::next(std::vector<std::string>& out) {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    out = split(line, ',');
    if (out.size() != header_.size())
      throw SchemaError(module_, path_ + ":" + std::to_string(line_) + ": expected " +
                                     std::to_string(header_.size()) + " fields, got " +
                                     std::to_string(out.size()));
    return true;
  }
  return false;
}

Writer::Writer(const std::string& path, const char* module) {
  out_.open(path);
  if (!out_) throw IoError(module, "cannot write " + path);
}

void Writer::row(const std::vector<std::string>& fields) { out_ << join(fields, ',') << '\n'; }

void Writer::raw_line(const std::string& line) { out_ << line << '\n'; }

}  // namespace hiercast::csv
