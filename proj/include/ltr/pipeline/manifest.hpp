#pragma once

#include <map>
#include <string>
#include <vector>

namespace ltr::pipeline {

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);

// Stage ledger with content hashes; byte-identical across reruns of the
// same (config, seed).
struct Manifest {
  struct Stage {
    std::string config_hash;
    std::map<std::string, std::string> inputs;   // path (relative) -> sha256
    std::map<std::string, std::string> outputs;  // path (relative) -> sha256
  };
  std::string config_hash;
  std::map<std::string, Stage> stages;

  void save(const std::string& path) const;
  static Manifest load(const std::string& path);  // empty manifest if absent
};

}  // namespace ltr::pipeline
