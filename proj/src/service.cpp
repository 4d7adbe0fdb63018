#include "atdp/service.hpp"

#include <cstdlib>
#include <stdexcept>
#include <vector>

#include <httplib.h>

#include "atdp/solver.hpp"

namespace atdp {

namespace {

struct HttpError {
  int status;
  std::string error;
  std::string detail;
};

ApiResponse error_response(int status, std::string error, std::string detail) {
  return {status, Json{{"error", std::move(error)}, {"detail", std::move(detail)}}};
}

std::vector<std::string> segments(std::string_view path) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < path.size()) {
    const auto slash = path.find('/', pos);
    const auto end = slash == std::string_view::npos ? path.size() : slash;
    if (end > pos) out.emplace_back(path.substr(pos, end - pos));
    pos = end + 1;
  }
  return out;
}

Json body_json(std::string_view body) {
  if (body.empty()) return Json::object();
  Json doc = parse_json_text(body, "body");
  if (!doc.is_object()) throw ParseError("body", "expected a JSON object");
  return doc;
}

std::uint64_t query_count(const std::map<std::string, std::string>& q, const std::string& key, std::uint64_t fallback) {
  auto it = q.find(key);
  return it == q.end() ? fallback : parse_count_text(it->second, key);
}

}  // namespace

std::shared_ptr<const Instance> Api::scenario(const std::string& id) const {
  std::shared_lock lock(registry_);
  auto it = scenarios_.find(id);
  if (it == scenarios_.end()) throw HttpError{404, "not_found", "no scenario '" + id + "'"};
  return it->second;
}

std::shared_ptr<Api::SessionEntry> Api::session(const std::string& id) const {
  std::shared_lock lock(registry_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw HttpError{404, "not_found", "no session '" + id + "'"};
  return it->second;
}

SessionState Api::snapshot(SessionEntry& e) {
  std::lock_guard lock(e.mutex);
  return e.state;
}

ApiResponse Api::session_view(const SessionEntry& e, const SessionState& st, int status) const {
  Json body = session_to_json(st);
  body["scenario_id"] = e.scenario_id;
  return {status, std::move(body)};
}

ApiResponse Api::handle(std::string_view method, std::string_view path,
                        const std::map<std::string, std::string>& query, std::string_view body) {
  try {
    return route(method, path, query, body);
  } catch (const HttpError& e) {
    return error_response(e.status, e.error, e.detail);
  } catch (const ParseError& e) {
    return error_response(400, "parse_error", e.what());
  } catch (const InvalidScenario& e) {
    return error_response(400, "invalid_scenario", e.what());
  } catch (const UnknownSymbol& e) {
    return error_response(400, "unknown_symbol", e.what());
  } catch (const SessionTerminated& e) {
    return error_response(409, "session_terminated", e.what());
  } catch (const NoStrategy& e) {
    return error_response(409, "infeasible", e.what());
  } catch (const SizeGuardExceeded& e) {
    return error_response(409, "too_large", e.what());
  } catch (const BudgetExhausted& e) {
    return error_response(409, "budget_exhausted", e.what());
  } catch (const std::invalid_argument& e) {
    return error_response(400, "bad_request", e.what());
  } catch (const std::exception& e) {
    return error_response(400, "error", e.what());
  }
}

ApiResponse Api::route(std::string_view method, std::string_view path,
                       const std::map<std::string, std::string>& query, std::string_view body) {
  const auto seg = segments(path);
  const auto not_found = HttpError{404, "not_found", std::string(method) + " " + std::string(path)};
  if (seg.empty()) throw not_found;

  if (seg[0] == "health" && seg.size() == 1 && method == "GET") return {200, Json{{"ok", true}}};

  if (seg[0] == "scenarios") {
    if (seg.size() == 1 && method == "POST") return post_scenario(body);
    if (seg.size() == 2 && method == "GET") {
      Json doc{{"scenario_id", seg[1]}, {"scenario", scenario_to_json(scenario(seg[1])->scenario())}};
      return {200, std::move(doc)};
    }
    if (seg.size() == 3 && seg[2] == "strategy" && method == "GET") return strategy(seg[1], query);
    throw not_found;
  }

  if (seg[0] != "sessions") throw not_found;
  if (seg.size() == 1 && method == "POST") return post_session(body);
  if (seg.size() < 2) throw not_found;

  if (seg.size() == 2 && method == "DELETE") {
    std::unique_lock lock(registry_);
    if (!sessions_.erase(seg[1])) throw HttpError{404, "not_found", "no session '" + seg[1] + "'"};
    return {200, Json{{"deleted", seg[1]}}};
  }

  auto entry = session(seg[1]);
  if (seg.size() == 2 && method == "GET") return session_view(*entry, snapshot(*entry));

  const std::string& action = seg.size() == 3 ? seg[2] : std::string();
  if (action == "observe" && method == "POST") {
    const Json doc = body_json(body);
    const std::string input = member_string(doc, "input");
    const std::string output = member_string(doc, "output");
    std::lock_guard lock(entry->mutex);
    entry->state = atdp::observe(entry->state, input, output, guard_);
    return session_view(*entry, entry->state);
  }
  if (action == "advice" && method == "GET") {
    const SessionState st = snapshot(*entry);
    const std::string mode = query.count("mode") ? query.at("mode") : "exact";
    AdviceMode m;
    if (mode == "exact") {
      m = ExactAdvice{};
    } else if (mode == "heuristic") {
      HeuristicAdvice h;
      const std::uint64_t depth = query_count(query, "depth", h.depth);
      if (depth == 0) throw ParseError("depth", "must be at least 1");
      h.depth = static_cast<unsigned>(std::min<std::uint64_t>(depth, st.instance->num_inputs()));
      h.budget = query_count(query, "budget", h.budget);
      m = h;
    } else {
      throw ParseError("mode", "expected exact or heuristic");
    }
    return {200, advice_to_json(recommend(st, m, guard_))};
  }
  if (action == "feasibility" && method == "GET") {
    const SessionState st = snapshot(*entry);
    if (!guard_.admits(*st.instance)) throw SizeGuardExceeded("scenario exceeds the exact-solving guard");
    const auto k = feasibility(st);
    return {200, k ? Json{{"min_tests", *k}, {"infeasible", false}} : Json{{"min_tests", nullptr}, {"infeasible", true}}};
  }
  if (action == "export" && method == "GET") {
    const SessionState st = snapshot(*entry);
    return {200, Json{{"id", st.id}, {"scenario_id", entry->scenario_id}, {"history", history_to_json(st.history)}}};
  }
  throw not_found;
}

std::string Api::member_string(const Json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end() || !it->is_string()) throw ParseError(key, "expected a string");
  return it->get<std::string>();
}

ApiResponse Api::post_scenario(std::string_view body) {
  const Json doc = body_json(body);
  // Either the document itself or {"scenario": document}.
  const Json& src = doc.contains("scenario") ? doc["scenario"] : doc;
  auto instance = std::make_shared<const Instance>(parse_scenario(src).scenario);
  std::unique_lock lock(registry_);
  const std::string id = "scn-" + std::to_string(next_scenario_++);
  scenarios_[id] = std::move(instance);
  return {201, Json{{"scenario_id", id}}};
}

ApiResponse Api::post_session(std::string_view body) {
  const Json doc = body_json(body);
  std::string scenario_id;
  std::shared_ptr<const Instance> instance;
  if (doc.contains("scenario")) {
    const auto created = post_scenario(doc.dump());
    scenario_id = created.body["scenario_id"];
  } else {
    scenario_id = member_string(doc, "scenario_id");
  }
  instance = scenario(scenario_id);
  const History history = doc.contains("history") ? parse_history(doc["history"], "history") : History{};

  auto entry = std::make_shared<SessionEntry>();
  entry->scenario_id = scenario_id;
  entry->state = replay(instance, history, {}, guard_);
  {
    std::unique_lock lock(registry_);
    while (sessions_.count(entry->state.id)) entry->state = replay(instance, history, {}, guard_);
    sessions_[entry->state.id] = entry;
  }
  return session_view(*entry, entry->state, 201);
}

ApiResponse Api::strategy(const std::string& scenario_id, const std::map<std::string, std::string>& query) {
  const auto instance = scenario(scenario_id);
  if (!guard_.admits(*instance)) throw SizeGuardExceeded("scenario exceeds the exact-solving guard");
  std::uint64_t k;
  if (query.count("k")) {
    k = parse_count_text(query.at("k"), "k");
  } else {
    const auto best = optimize(*instance);
    if (!best) throw NoStrategy("no strategy over distinct inputs forces a verdict");
    k = *best;
  }
  const StrategyTree tree = extract_strategy(*instance, k);
  return {200, Json{{"scenario_id", scenario_id}, {"k", k}, {"depth", tree.depth()}, {"tree", strategy_to_json(tree)}}};
}

// ---------------------------------------------------------------------------

int default_port() {
  if (const char* env = std::getenv("ATDP_PORT")) {
    try {
      const int p = std::stoi(env);
      if (p > 0 && p < 65536) return p;
    } catch (const std::exception&) {
    }
  }
  return 8080;
}

struct Server::Impl {
  Api& api;
  ServeOptions options;
  httplib::Server http;
  bool bound = false;

  Impl(Api& a, ServeOptions o) : api(a), options(std::move(o)) {}
};

Server::Server(Api& api, ServeOptions options) : impl_(std::make_unique<Impl>(api, std::move(options))) {
  auto& http = impl_->http;
  const std::size_t workers = std::max<std::size_t>(1, impl_->options.workers);
  http.new_task_queue = [workers] { return new httplib::ThreadPool(workers); };

  if (!impl_->options.ui_dir.empty() && !http.set_mount_point("/", impl_->options.ui_dir))
    throw Error("cannot serve UI from '" + impl_->options.ui_dir + "'");

  auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [k, v] : req.params) query.emplace(k, v);
    const ApiResponse r = impl_->api.handle(req.method, req.path, query, req.body);
    res.status = r.status;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(r.body.dump(), "application/json");
  };
  const std::string pattern = R"(/(health|scenarios|sessions)(/.*)?)";
  http.Get(pattern, dispatch);
  http.Post(pattern, dispatch);
  http.Delete(pattern, dispatch);
  http.Options(pattern, [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

Server::~Server() { stop(); }

int Server::bind() {
  auto& o = impl_->options;
  int port = o.port;
  if (port == 0) {
    port = impl_->http.bind_to_any_port(o.host);
    if (port < 0) throw Error("cannot bind " + o.host);
  } else if (!impl_->http.bind_to_port(o.host, port)) {
    throw Error("cannot bind " + o.host + ":" + std::to_string(port));
  }
  impl_->bound = true;
  return port;
}

void Server::run() {
  if (!impl_->bound) bind();
  impl_->http.listen_after_bind();
}

void Server::stop() {
  if (impl_) impl_->http.stop();
}

}  // namespace atdp
