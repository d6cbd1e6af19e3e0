#include "slitworks/app/manifest.hpp"

#include <openssl/evp.h>

#include <cstdio>

#include "slitworks/core/constants.hpp"
#include "slitworks/errors.hpp"

namespace slitworks::app {

std::string sha256Hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) throw Error("sha256 failed");
  std::string hex;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

std::string scenarioDigest(const Scenario& s) {
  // json dumps object keys sorted, which makes this canonical
  return sha256Hex(scenarioToJson(s).dump() + "\n" + constants::version);
}

Json runManifest(const std::string& command, const Scenario& s, const std::vector<OutputFile>& outputs) {
  Json files = Json::array();
  for (const auto& o : outputs) files.push_back({{"name", o.name}, {"bytes", o.bytes.size()}, {"sha256", sha256Hex(o.bytes)}});
  return Json{{"command", command},
              {"scenario", s.name},
              {"inputs_digest", scenarioDigest(s)},
              {"constants", constants::version},
              {"version", SLITWORKS_VERSION},
              {"seed", s.seed},
              {"inputs", scenarioToJson(s)},
              {"outputs", files}};
}

}  // namespace slitworks::app
