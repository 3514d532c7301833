// Copyright 2026 The Pragsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pragsynth/service.h"

#include <cstdio>
#include <fstream>
#include <random>
#include <utility>

#include "httplib.h"
#include "json.hpp"
#include "pragsynth/errors.h"
#include "pragsynth/rng.h"

namespace pragsynth {

using nlohmann::json;

struct SynthService::Session {
  std::mutex mu;
  std::string id;
  ListenerKind listener = ListenerKind::kL1;
  int stimulus_id = 0;
  std::vector<grid::AtomicExample> examples;
  ExampleSequence sequence;
  ConsistentSetCache cache;
  std::vector<std::string> events;
  std::filesystem::path log_path;
};

namespace {

std::string SymbolString(grid::Symbol s) { return std::string(1, grid::SymbolChar(s)); }

json ExampleJson(const grid::AtomicExample& e) {
  return json::array({e.x, e.y, SymbolString(e.symbol)});
}

json ViewJson(const InferenceView& view) {
  json top_k = json::array();
  for (const RankedPattern& r : view.top_k) {
    top_k.push_back({{"id", Index(r.id)},
                     {"pattern", grid::FormatPattern(r.pattern)},
                     {"prob", r.probability}});
  }
  return {{"top1", grid::FormatPattern(view.top1)},
          {"top_k", std::move(top_k)},
          {"solved", view.solved},
          {"n_consistent", view.n_consistent},
          {"n_examples", view.n_examples}};
}

grid::Symbol SymbolFromJson(const json& value) {
  if (value.is_number_integer()) {
    const int code = value.get<int>();
    if (code < 0 || code >= grid::kSymbolCount) {
      throw ServiceError(422, "symbol code out of range");
    }
    return static_cast<grid::Symbol>(code);
  }
  if (value.is_string()) {
    const std::string s = value.get<std::string>();
    if (s.size() == 1) {
      try {
        return grid::ParseSymbol(s[0]);
      } catch (const std::invalid_argument&) {
      }
    }
  }
  throw ServiceError(422, "symbol must be one of . r g b R G B or a code 0-6");
}

std::string NewSessionId(std::uint64_t seed, std::uint64_t counter) {
  CounterRng rng(seed, counter);
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(rng()));
  return buf;
}

}  // namespace

SynthService::SynthService(const grid::GridGame& game, std::vector<Stimulus> stimuli,
                           Options options)
    : game_(game), stimuli_(std::move(stimuli)), options_(std::move(options)) {
  std::map<grid::Pattern, HypothesisId> index;
  for (std::size_t h = 0; h < game_.space.size(); ++h) {
    index.emplace(game_.space.patterns[h], HypothesisAt(h));
  }
  for (const Stimulus& s : stimuli_) {
    auto it = index.find(s.pattern);
    if (it == index.end()) {
      throw std::invalid_argument("stimulus " + std::to_string(s.id) +
                                  " is not a pattern of the game");
    }
    stimulus_ids_.push_back(it->second);
  }
  if (!options_.log_dir.empty()) std::filesystem::create_directories(options_.log_dir);
}

SynthService::SynthService(const grid::GridGame& game, std::vector<Stimulus> stimuli)
    : SynthService(game, std::move(stimuli), Options{}) {}

SynthService::~SynthService() = default;

std::shared_ptr<SynthService::Session> SynthService::Find(
    const std::string& session_id) const {
  std::shared_lock lock(sessions_mu_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) throw ServiceError(404, "unknown session " + session_id);
  return it->second;
}

InferenceView SynthService::Infer(Session& session) const {
  const MeaningMatrix& m = game_.matrix;
  const Posterior posterior =
      ListenerPosterior(session.listener, m, session.sequence, session.cache, &game_.scores);
  InferenceView view;
  for (const ScoredHypothesis& s : posterior.TopK(options_.top_k)) {
    view.top_k.push_back({s.id, game_.space.patterns[Index(s.id)], s.probability});
  }
  view.top1 = view.top_k.front().pattern;
  view.solved = view.top_k.front().id == stimulus_ids_[session.stimulus_id];
  view.n_consistent = session.cache.Get(m, session.sequence.ids()).count();
  view.n_examples = session.examples.size();
  return view;
}

std::string SynthService::SessionJson(const Session& session) const {
  json examples = json::array();
  for (const grid::AtomicExample& e : session.examples) examples.push_back(ExampleJson(e));
  Session& mutable_session = const_cast<Session&>(session);
  return json{{"session_id", session.id},
              {"listener", ListenerName(session.listener)},
              {"stimulus_id", session.stimulus_id},
              {"examples", std::move(examples)},
              {"inference", ViewJson(Infer(mutable_session))}}
      .dump();
}

void SynthService::AppendEvent(Session& session, const std::string& line) const {
  session.events.push_back(line);
  if (session.log_path.empty()) return;
  std::ofstream out(session.log_path, std::ios::app);
  out << line << '\n';
  if (!out) throw FormatError("cannot append to " + session.log_path.string());
}

std::filesystem::path SynthService::LogPath(const std::string& session_id) const {
  if (options_.log_dir.empty()) return {};
  return options_.log_dir / (session_id + ".jsonl");
}

SessionSummary SynthService::CreateSession(std::string_view listener, int stimulus_id) {
  ListenerKind kind;
  try {
    kind = ParseListener(listener);
  } catch (const std::invalid_argument& e) {
    throw ServiceError(422, e.what());
  }
  std::string id;
  {
    std::unique_lock lock(sessions_mu_);
    do {
      id = NewSessionId(options_.id_seed, next_session_++);
    } while (sessions_.count(id) != 0);
  }
  return CreateSessionWithId(std::move(id), kind, stimulus_id);
}

SessionSummary SynthService::CreateSessionWithId(std::string session_id,
                                                 ListenerKind listener, int stimulus_id) {
  if (stimulus_id < 0 || stimulus_id >= static_cast<int>(stimuli_.size())) {
    throw ServiceError(404, "unknown stimulus " + std::to_string(stimulus_id));
  }
  auto session = std::make_shared<Session>();
  session->id = session_id;
  session->listener = listener;
  session->stimulus_id = stimulus_id;
  session->log_path = LogPath(session_id);
  std::lock_guard session_lock(session->mu);
  {
    std::unique_lock lock(sessions_mu_);
    if (!sessions_.emplace(session_id, session).second) {
      throw ServiceError(409, "session " + session_id + " already exists");
    }
  }
  AppendEvent(*session, json{{"op", "create"},
                             {"session_id", session_id},
                             {"listener", ListenerName(listener)},
                             {"stimulus_id", stimulus_id}}
                            .dump());
  SessionSummary summary;
  summary.session_id = session_id;
  summary.listener = listener;
  summary.stimulus_id = stimulus_id;
  summary.stimulus = stimuli_[stimulus_id].pattern;
  summary.view = Infer(*session);
  return summary;
}

SessionSummary SynthService::GetSession(const std::string& session_id) const {
  const auto session = Find(session_id);
  std::lock_guard lock(session->mu);
  SessionSummary summary;
  summary.session_id = session->id;
  summary.listener = session->listener;
  summary.stimulus_id = session->stimulus_id;
  summary.stimulus = stimuli_[session->stimulus_id].pattern;
  summary.view = Infer(*session);
  return summary;
}

InferenceView SynthService::PostExample(const std::string& session_id, int x, int y,
                                        grid::Symbol symbol) {
  if (x < 0 || x >= grid::kGridSize || y < 0 || y >= grid::kGridSize) {
    throw ServiceError(422, "cell (" + std::to_string(x) + "," + std::to_string(y) +
                                ") is outside the 7x7 grid");
  }
  const auto session = Find(session_id);
  std::lock_guard lock(session->mu);
  for (const grid::AtomicExample& e : session->examples) {
    if (e.x == x && e.y == y) {
      throw ServiceError(409, e.symbol == symbol
                                  ? "this example is already placed"
                                  : "cell already holds a different symbol");
    }
  }
  const grid::AtomicExample example{x, y, symbol};
  const UtteranceId u = grid::ExampleId(example);
  if (session->cache.ExtensionSize(game_.matrix, session->sequence.ids(), u) == 0) {
    throw ServiceError(422, "no program is consistent with these examples (n_consistent 0)");
  }
  session->sequence.Append(u);
  session->examples.push_back(example);
  AppendEvent(*session,
              json{{"op", "post"}, {"x", x}, {"y", y}, {"symbol", SymbolString(symbol)}}.dump());
  return Infer(*session);
}

InferenceView SynthService::Undo(const std::string& session_id) {
  const auto session = Find(session_id);
  std::lock_guard lock(session->mu);
  if (session->examples.empty()) throw ServiceError(409, "nothing to undo");
  session->examples.pop_back();
  session->sequence.PopBack();
  AppendEvent(*session, json{{"op", "undo"}}.dump());
  return Infer(*session);
}

std::string SynthService::StateJson(const std::string& session_id) const {
  const auto session = Find(session_id);
  std::lock_guard lock(session->mu);
  return SessionJson(*session);
}

std::vector<std::string> SynthService::Events(const std::string& session_id) const {
  const auto session = Find(session_id);
  std::lock_guard lock(session->mu);
  return session->events;
}

std::vector<grid::AtomicExample> SynthService::SessionExamples(
    const std::string& session_id) const {
  const auto session = Find(session_id);
  std::lock_guard lock(session->mu);
  return session->examples;
}

Posterior SynthService::SessionPosterior(const std::string& session_id) const {
  const auto session = Find(session_id);
  std::lock_guard lock(session->mu);
  return ListenerPosterior(session->listener, game_.matrix, session->sequence,
                           session->cache, &game_.scores);
}

Posterior SynthService::FreshPosterior(
    ListenerKind listener, const std::vector<grid::AtomicExample>& examples) const {
  ExampleSequence d;
  for (const grid::AtomicExample& e : examples) d.Append(grid::ExampleId(e));
  ConsistentSetCache cache;
  return ListenerPosterior(listener, game_.matrix, d, cache, &game_.scores);
}

InferenceView SynthService::FreshView(ListenerKind listener, int stimulus_id,
                                      const std::vector<grid::AtomicExample>& examples) const {
  if (stimulus_id < 0 || stimulus_id >= static_cast<int>(stimuli_.size())) {
    throw ServiceError(404, "unknown stimulus " + std::to_string(stimulus_id));
  }
  Session scratch;
  scratch.listener = listener;
  scratch.stimulus_id = stimulus_id;
  scratch.examples = examples;
  for (const grid::AtomicExample& e : examples) scratch.sequence.Append(grid::ExampleId(e));
  return Infer(scratch);
}

std::string SynthService::ReplayStateJson(const std::vector<std::string>& events) const {
  if (events.empty()) throw FormatError("empty event log");
  SynthService scratch(game_, stimuli_, Options{{}, options_.top_k, 0});
  std::string id;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const json event = json::parse(events[i]);
    const std::string op = event.at("op").get<std::string>();
    if (i == 0) {
      if (op != "create") throw FormatError("event log must start with create");
      id = event.at("session_id").get<std::string>();
      scratch.CreateSessionWithId(id, ParseListener(event.at("listener").get<std::string>()),
                                  event.at("stimulus_id").get<int>());
    } else if (op == "post") {
      scratch.PostExample(id, event.at("x").get<int>(), event.at("y").get<int>(),
                          SymbolFromJson(event.at("symbol")));
    } else if (op == "undo") {
      scratch.Undo(id);
    } else {
      throw FormatError("unknown event op '" + op + "'");
    }
  }
  return scratch.StateJson(id);
}

struct HttpFrontend::Impl {
  SynthService& service;
  httplib::Server server;

  explicit Impl(SynthService& s) : service(s) {}
};

namespace {

void Reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

template <typename Fn>
void Guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const ServiceError& e) {
    json body = {{"error", e.what()}};
    if (e.status() == 422) body["n_consistent"] = 0;
    Reply(res, e.status(), body);
  } catch (const json::exception& e) {
    Reply(res, 400, {{"error", std::string("bad request: ") + e.what()}});
  } catch (const std::exception& e) {
    Reply(res, 500, {{"error", e.what()}});
  }
}

json SummaryJson(const SessionSummary& s) {
  json out = ViewJson(s.view);
  out["session_id"] = s.session_id;
  out["listener"] = ListenerName(s.listener);
  out["stimulus_id"] = s.stimulus_id;
  out["stimulus"] = grid::FormatPattern(s.stimulus);
  return out;
}

}  // namespace

HttpFrontend::HttpFrontend(SynthService& service, std::filesystem::path static_dir)
    : impl_(std::make_unique<Impl>(service)) {
  httplib::Server& server = impl_->server;
  SynthService& svc = service;

  // No SO_REUSEPORT: binding a port another server holds must fail.
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof(yes));
  });

  server.Get("/api/health", [](const httplib::Request&, httplib::Response& res) {
    Reply(res, 200, {{"status", "ok"}});
  });

  server.Get("/api/stimuli", [&svc](const httplib::Request&, httplib::Response& res) {
    json list = json::array();
    for (const Stimulus& s : svc.stimuli()) {
      list.push_back({{"id", s.id},
                      {"pattern", grid::FormatPattern(s.pattern)},
                      {"program", grid::FormatProgram(s.program)}});
    }
    Reply(res, 200, {{"stimuli", std::move(list)}});
  });

  server.Post("/api/sessions", [&svc](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] {
      const json body = json::parse(req.body);
      if (!body.contains("listener") || !body["listener"].is_string() ||
          !body.contains("stimulus_id") || !body["stimulus_id"].is_number_integer()) {
        throw ServiceError(422, "expected {listener: string, stimulus_id: integer}");
      }
      const SessionSummary summary = svc.CreateSession(body["listener"].get<std::string>(),
                                                       body["stimulus_id"].get<int>());
      Reply(res, 201, SummaryJson(summary));
    });
  });

  server.Get(R"(/api/sessions/([0-9a-f]+))",
             [&svc](const httplib::Request& req, httplib::Response& res) {
               Guarded(res, [&] { Reply(res, 200, SummaryJson(svc.GetSession(req.matches[1]))); });
             });

  server.Post(R"(/api/sessions/([0-9a-f]+)/examples)",
              [&svc](const httplib::Request& req, httplib::Response& res) {
                Guarded(res, [&] {
                  const json body = json::parse(req.body);
                  if (!body.contains("x") || !body["x"].is_number_integer() ||
                      !body.contains("y") || !body["y"].is_number_integer() ||
                      !body.contains("symbol")) {
                    throw ServiceError(422, "expected {x: integer, y: integer, symbol}");
                  }
                  const InferenceView view =
                      svc.PostExample(req.matches[1], body["x"].get<int>(),
                                      body["y"].get<int>(), SymbolFromJson(body["symbol"]));
                  Reply(res, 200, ViewJson(view));
                });
              });

  server.Post(R"(/api/sessions/([0-9a-f]+)/undo)",
              [&svc](const httplib::Request& req, httplib::Response& res) {
                Guarded(res, [&] { Reply(res, 200, ViewJson(svc.Undo(req.matches[1]))); });
              });

  if (!static_dir.empty() && std::filesystem::is_directory(static_dir)) {
    server.set_mount_point("/", static_dir.string());
  }
}

HttpFrontend::~HttpFrontend() = default;

bool HttpFrontend::Bind(const std::string& host, int port) {
  if (port <= 0 || port > 65535) return false;
  return impl_->server.bind_to_port(host, port);
}

int HttpFrontend::BindAnyPort(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool HttpFrontend::Listen() { return impl_->server.listen_after_bind(); }
void HttpFrontend::Stop() { impl_->server.stop(); }
bool HttpFrontend::IsRunning() const { return impl_->server.is_running(); }
void HttpFrontend::WaitUntilReady() const { impl_->server.wait_until_ready(); }

}  // namespace pragsynth
