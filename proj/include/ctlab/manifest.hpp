// Run manifests: enough to replay a CLI invocation bit-for-bit and to check
// output digests.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace ctlab {

uint64_t digest_bytes(const std::string& bytes);
std::string digest_hex(uint64_t d);

class RunManifest {
 public:
  RunManifest(std::vector<std::string> argv, uint64_t master_seed);

  // Writes `content` to out_dir/name and records its digest.
  void emit(const std::string& out_dir, const std::string& name,
            const std::string& content);

  void set_config_blob(const std::string& blob);
  void finalize(const std::string& out_dir, double wall_ms);

 private:
  nlohmann::ordered_json j_;
};

}  // namespace ctlab
