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

// Interactive synthesis sessions: a client places (cell, symbol) examples one
// at a time and gets the listener's current guess back.
//
// HTTP surface (HttpFrontend):
//   GET  /api/health
//   GET  /api/stimuli
//   POST /api/sessions                {listener, stimulus_id}
//   GET  /api/sessions/{id}
//   POST /api/sessions/{id}/examples  {x, y, symbol}
//   POST /api/sessions/{id}/undo
// Patterns travel as the 7-line text format of grid::FormatPattern.

#ifndef PRAGSYNTH_SERVICE_H_
#define PRAGSYNTH_SERVICE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pragsynth/consistent_set.h"
#include "pragsynth/example_sequence.h"
#include "pragsynth/grid_dsl.h"
#include "pragsynth/grid_game.h"
#include "pragsynth/pragmatics.h"
#include "pragsynth/stimuli.h"

namespace pragsynth {

// Error carrying the HTTP status it maps to (404, 409, 422).
class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, const std::string& what)
      : std::runtime_error(what), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

struct RankedPattern {
  HypothesisId id{};
  grid::Pattern pattern{};
  double probability = 0.0;
};

struct InferenceView {
  grid::Pattern top1{};
  std::vector<RankedPattern> top_k;  // by probability, then id
  bool solved = false;
  std::size_t n_consistent = 0;
  std::size_t n_examples = 0;
};

struct SessionSummary {
  std::string session_id;
  ListenerKind listener = ListenerKind::kL1;
  int stimulus_id = 0;
  grid::Pattern stimulus{};
  InferenceView view;
};

class SynthService {
 public:
  struct Options {
    // One JSONL event log per session when non-empty.
    std::filesystem::path log_dir;
    std::size_t top_k = 5;
    // Seeds session-id generation.
    std::uint64_t id_seed = 0;
  };

  // `game` must outlive the service. Every stimulus pattern must be a
  // hypothesis of the game.
  SynthService(const grid::GridGame& game, std::vector<Stimulus> stimuli,
               Options options);
  SynthService(const grid::GridGame& game, std::vector<Stimulus> stimuli);
  ~SynthService();

  const std::vector<Stimulus>& stimuli() const { return stimuli_; }

  // Unknown listener -> 422, unknown stimulus -> 404.
  SessionSummary CreateSession(std::string_view listener, int stimulus_id);
  SessionSummary GetSession(const std::string& session_id) const;

  // Out-of-range coordinates -> 422; a cell that already holds an example
  // -> 409; no hypothesis left -> 422 (state unchanged).
  InferenceView PostExample(const std::string& session_id, int x, int y,
                            grid::Symbol symbol);
  // Empty example sequence -> 409.
  InferenceView Undo(const std::string& session_id);

  // Canonical JSON of a session's full state (listener, stimulus, examples,
  // current inference). Equal states serialize to identical bytes.
  std::string StateJson(const std::string& session_id) const;
  // Event lines (JSON) appended so far for the session.
  std::vector<std::string> Events(const std::string& session_id) const;

  // Rebuilds a session from its event lines in a scratch service over the
  // same game and stimuli and returns its StateJson.
  std::string ReplayStateJson(const std::vector<std::string>& events) const;
  std::filesystem::path LogPath(const std::string& session_id) const;

  // Fresh, uncached computation of the view for an example list; used to
  // check that incremental sessions agree with from-scratch inference.
  InferenceView FreshView(ListenerKind listener, int stimulus_id,
                          const std::vector<grid::AtomicExample>& examples) const;

  // Current posterior of a session, and the same from a fresh cache.
  Posterior SessionPosterior(const std::string& session_id) const;
  Posterior FreshPosterior(ListenerKind listener,
                           const std::vector<grid::AtomicExample>& examples) const;
  std::vector<grid::AtomicExample> SessionExamples(const std::string& session_id) const;

 private:
  struct Session;

  std::shared_ptr<Session> Find(const std::string& session_id) const;
  InferenceView Infer(Session& session) const;
  std::string SessionJson(const Session& session) const;
  void AppendEvent(Session& session, const std::string& line) const;
  SessionSummary CreateSessionWithId(std::string session_id, ListenerKind listener,
                                     int stimulus_id);

  const grid::GridGame& game_;
  std::vector<Stimulus> stimuli_;
  std::vector<HypothesisId> stimulus_ids_;
  Options options_;

  mutable std::shared_mutex sessions_mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_session_ = 0;
};

// HTTP+JSON binding of SynthService over cpp-httplib.
class HttpFrontend {
 public:
  // Serves files under `static_dir` at "/" when it is non-empty.
  explicit HttpFrontend(SynthService& service, std::filesystem::path static_dir = {});
  ~HttpFrontend();
  HttpFrontend(const HttpFrontend&) = delete;
  HttpFrontend& operator=(const HttpFrontend&) = delete;

  // Returns false if the address cannot be bound.
  bool Bind(const std::string& host, int port);
  // Binds an ephemeral port and returns it, or -1.
  int BindAnyPort(const std::string& host);
  // Blocks until Stop().
  bool Listen();
  void Stop();
  bool IsRunning() const;
  void WaitUntilReady() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace pragsynth

#endif  // PRAGSYNTH_SERVICE_H_
