#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "lingua/game.hpp"

namespace lingua {

struct ServerConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path registry_dir = "registry";
  std::optional<std::filesystem::path> session_dir;
  std::string facilitator_token;
  std::optional<std::filesystem::path> static_dir;
};

// "host:port" or ":port". Throws ContractError.
void set_listen_address(ServerConfig& config, std::string_view address);

// Reads LINGUA_LISTEN, LINGUA_REGISTRY_DIR, LINGUA_SESSION_DIR,
// LINGUA_FACILITATOR_TOKEN and LINGUA_STATIC_DIR where set.
void apply_environment(ServerConfig& config,
                       const std::function<const char*(const char*)>& getenv);

// Serves a GameService over HTTP, plus an optional static directory at "/".
class HttpServer {
 public:
  HttpServer(GameService& service, std::optional<std::filesystem::path> static_dir = {});
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks a free port. Returns the bound port; throws IoError.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  void run();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace lingua
