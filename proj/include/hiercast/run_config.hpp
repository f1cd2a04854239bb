#pragma once

#include <map>
#include <string>
#include <vector>

#include "hiercast/pipeline.hpp"
#include "hiercast/synth.hpp"

namespace hiercast {

// Flat sectioned key-value configuration. Every key has a default; files and
// command-line overrides may only touch known keys, so typos fail loudly with
// the offending `section.key` path.
class RunConfig {
 public:
  static RunConfig defaults();

  void merge_file(const std::string& path);
  void set(const std::string& dotted_key, const std::string& value);

  const std::string& get(const std::string& section, const std::string& key) const;
  long long get_int(const std::string& section, const std::string& key) const;
  double get_real(const std::string& section, const std::string& key) const;
  bool get_bool(const std::string& section, const std::string& key) const;
  std::vector<int> get_int_list(const std::string& section, const std::string& key) const;
  std::vector<std::string> get_list(const std::string& section, const std::string& key) const;

  // Sorted dump of the resolved configuration; the run directory is named by
  // its 64-bit hash so identical configs land in identical directories.
  std::string canonical() const;
  std::string hash() const;

  PipelineConfig pipeline_config() const;
  SynthSpec synth_spec() const;

  const std::map<std::string, std::map<std::string, std::string>>& sections() const {
    return values_;
  }

 private:
  std::map<std::string, std::map<std::string, std::string>> values_;
};

}  // namespace hiercast
