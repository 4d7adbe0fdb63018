#pragma once

// HTTP session API. `Api` is transport-free so it can be driven directly in
// tests; `Server` binds it to a socket with a bounded worker pool.

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <string_view>

#include "atdp/io.hpp"
#include "atdp/session.hpp"

namespace atdp {

struct ApiResponse {
  int status = 200;
  Json body;
};

class Api {
 public:
  explicit Api(ExactGuard guard = {}) : guard_(guard) {}

  /// Routes one request. Never throws; failures become {error, detail} with
  /// status 400, 404 or 409.
  ApiResponse handle(std::string_view method, std::string_view path,
                     const std::map<std::string, std::string>& query, std::string_view body);

 private:
  struct SessionEntry {
    std::mutex mutex;  // serializes mutations of this session
    std::string scenario_id;
    SessionState state;
  };

  ApiResponse route(std::string_view method, std::string_view path,
                    const std::map<std::string, std::string>& query, std::string_view body);
  ApiResponse post_scenario(std::string_view body);
  ApiResponse post_session(std::string_view body);
  ApiResponse strategy(const std::string& scenario_id, const std::map<std::string, std::string>& query);
  ApiResponse session_view(const SessionEntry& e, const SessionState& st, int status = 200) const;

  std::shared_ptr<const Instance> scenario(const std::string& id) const;
  std::shared_ptr<SessionEntry> session(const std::string& id) const;
  static SessionState snapshot(SessionEntry& e);
  static std::string member_string(const Json& doc, const char* key);

  ExactGuard guard_;
  mutable std::shared_mutex registry_;
  std::map<std::string, std::shared_ptr<const Instance>> scenarios_;
  std::map<std::string, std::shared_ptr<SessionEntry>> sessions_;
  std::size_t next_scenario_ = 1;
};

struct ServeOptions {
  std::string host = "0.0.0.0";
  /// 0 picks a free port.
  int port = 8080;
  /// Static files mounted at "/" when non-empty.
  std::string ui_dir;
  std::size_t workers = 8;
};

/// ATDP_PORT when set and valid, otherwise 8080.
int default_port();

class Server {
 public:
  Server(Api& api, ServeOptions options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds and returns the actual port. Throws Error on failure.
  int bind();
  /// Blocks until stop().
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace atdp
