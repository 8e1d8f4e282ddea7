#pragma once

#include <cstddef>
#include <memory>
#include <string>

#include "vnd/session.hpp"

namespace httplib {
class Server;
}

namespace vnd {

struct ServerConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::size_t maxUploadBytes = std::size_t{256} << 20;
  std::string snapshotDir;
  std::string staticDir;

  /// Defaults overridden by VND_PORT, VND_MAX_UPLOAD_MB, VND_SNAPSHOT_DIR.
  static ServerConfig fromEnvironment();
};

/// HTTP status for an error code.
int http_status(ErrorCode code);

class Server {
 public:
  explicit Server(ServerConfig config);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds to config.port, or to an ephemeral port when it is 0.
  /// Returns the bound port, or -1 on failure.
  int bind();
  /// Blocks serving requests until stop().
  bool listen();
  void stop();
  void waitUntilReady() const;

  SessionStore& sessions() { return store_; }

 private:
  void routes();

  ServerConfig config_;
  SessionStore store_;
  std::unique_ptr<httplib::Server> http_;
};

}  // namespace vnd
