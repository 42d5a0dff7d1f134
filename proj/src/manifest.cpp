#include "ctlab/manifest.hpp"

#include <cstdio>

#include "ctlab/graph_io.hpp"
#include "ctlab/rng.hpp"

namespace ctlab {

uint64_t digest_bytes(const std::string& bytes) { return fnv64(bytes); }

std::string digest_hex(uint64_t d) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)d);
  return buf;
}

RunManifest::RunManifest(std::vector<std::string> argv, uint64_t master_seed) {
  j_["tool"] = "ctlab";
  j_["versions"] = {{"ctlab", "0.1.0"}, {"cli", "0.1.0"}};
  j_["argv"] = argv;
  j_["master_seed"] = master_seed;
  j_["outputs"] = nlohmann::ordered_json::object();
}

void RunManifest::set_config_blob(const std::string& blob) {
  j_["config_digest"] = digest_hex(digest_bytes(blob));
}

void RunManifest::emit(const std::string& out_dir, const std::string& name,
                       const std::string& content) {
  write_file(out_dir + "/" + name, content);
  j_["outputs"][name] = digest_hex(digest_bytes(content));
}

void RunManifest::finalize(const std::string& out_dir, double wall_ms) {
  j_["wall_ms"] = wall_ms;
  write_file(out_dir + "/manifest.json", j_.dump(2) + "\n");
}

}  // namespace ctlab
