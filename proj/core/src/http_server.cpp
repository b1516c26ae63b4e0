#include "lingua/http_server.hpp"

#include <charconv>

#include <httplib.h>

namespace lingua {

void set_listen_address(ServerConfig& config, std::string_view address) {
  const auto colon = address.rfind(':');
  if (colon == std::string_view::npos) throw ContractError("listen address needs host:port");
  const std::string_view port = address.substr(colon + 1);
  int value = -1;
  auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), value);
  if (ec != std::errc{} || ptr != port.data() + port.size() || value < 0 || value > 65535) {
    throw ContractError("bad port in listen address '" + std::string(address) + "'");
  }
  if (colon > 0) config.host = std::string(address.substr(0, colon));
  config.port = value;
}

void apply_environment(ServerConfig& config,
                       const std::function<const char*(const char*)>& getenv) {
  if (const char* v = getenv("LINGUA_LISTEN"); v && *v) set_listen_address(config, v);
  if (const char* v = getenv("LINGUA_REGISTRY_DIR"); v && *v) config.registry_dir = v;
  if (const char* v = getenv("LINGUA_SESSION_DIR"); v && *v) config.session_dir = v;
  if (const char* v = getenv("LINGUA_FACILITATOR_TOKEN"); v && *v) config.facilitator_token = v;
  if (const char* v = getenv("LINGUA_STATIC_DIR"); v && *v) config.static_dir = v;
}

struct HttpServer::Impl {
  explicit Impl(GameService& s) : service(s) {}
  GameService& service;
  httplib::Server server;
};

HttpServer::HttpServer(GameService& service, std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>(service)) {
  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    const Response r = impl_->service.handle(
        {req.method, req.path, req.body, req.get_header_value("X-Facilitator-Token")});
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  impl_->server.Get(R"(/v1/.*)", forward);
  impl_->server.Post(R"(/v1/.*)", forward);
  if (static_dir && !impl_->server.set_mount_point("/", static_dir->string())) {
    throw IoError("static directory " + static_dir->string() + " does not exist");
  }
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  const int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                              : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw IoError("cannot listen on " + host + ":" + std::to_string(port));
  return bound;
}

void HttpServer::run() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace lingua
