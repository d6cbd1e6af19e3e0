#pragma once

#include <cstddef>
#include <string>

#include "slitworks/app/schema.hpp"

namespace httplib {
class Server;
}

namespace slitworks::app {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  Limits limits;
  std::size_t maxBodyBytes = 1 << 20;
  unsigned threads = 0;   ///< engine threads per request, 0 = default
  std::string staticDir;  ///< served at / when set
};

/// Registers every endpoint on `server`; used by serve() and by tests on an ephemeral port.
void installRoutes(httplib::Server& server, const ServiceConfig& config);

/// Blocks until the server stops. Returns a process exit code.
int serve(const ServiceConfig& config);

}  // namespace slitworks::app
