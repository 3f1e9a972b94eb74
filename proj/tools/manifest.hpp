#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace pst::cli {

std::string sha256_file(const std::string& path);

// Run record: command line, digests of inputs and outputs, version, wall clock.
class Manifest {
 public:
  explicit Manifest(std::vector<std::string> argv);
  void input(const std::string& path);
  void output(const std::string& path);
  void note(const std::string& key, nlohmann::ordered_json value);
  void write(const std::string& path, double wall_seconds) const;

 private:
  std::vector<std::string> argv_;
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  nlohmann::ordered_json notes_ = nlohmann::ordered_json::object();
};

}  // namespace pst::cli
