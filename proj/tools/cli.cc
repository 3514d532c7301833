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


#include "cli.h"

#include <pthread.h>
#include <signal.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <functional>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "pragsynth/errors.h"
#include "pragsynth/grid_dsl.h"
#include "pragsynth/grid_game.h"
#include "pragsynth/pragmatics.h"
#include "pragsynth/segment_game.h"
#include "pragsynth/service.h"
#include "pragsynth/simulation.h"
#include "pragsynth/stimuli.h"

namespace pragsynth::cli {
namespace {

namespace fs = std::filesystem;

// Number printed next to the deduplicated count for comparison.
constexpr std::size_t kReferenceProgramCount = 17976;

// Raised for failed reads and writes so they map to kExitIo.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 7;
  std::string matrix_cache;
};

struct EnumerateFlags {
  std::string out;
  bool force = false;
};

struct InferFlags {
  std::string game = "segment";
  std::string listener = "l1";
  std::string examples;
  std::size_t top_k = 5;
};

struct SimulateFlags {
  std::string game = "grid";
  std::string speaker = "s1";
  std::string listener = "l1";
  std::string mode = "means";
  std::size_t trials = 500;
  std::size_t max_rounds = 40;
  std::size_t budget = 10;
  std::size_t threads = 0;
  std::string out;
  bool force = false;
};

struct StimuliFlags {
  std::string out;
  std::uint64_t stimulus_seed = kDefaultStimulusSeed;
  bool force = false;
};

struct ServeFlags {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string stimuli_file;
  std::string log_dir;
  std::string static_dir;
};

// --matrix-cache, else $PRAGSYNTH_CACHE_DIR/grid_matrix.bin, else none.
fs::path MatrixCachePath(const Globals& g) {
  if (!g.matrix_cache.empty()) return g.matrix_cache;
  if (const char* dir = std::getenv("PRAGSYNTH_CACHE_DIR"); dir != nullptr && *dir != '\0') {
    return fs::path(dir) / "grid_matrix.bin";
  }
  return {};
}

grid::GridGame LoadGame(const Globals& g, std::ostream& out) {
  const fs::path cache = MatrixCachePath(g);
  const bool cached = !cache.empty() && fs::exists(cache);
  try {
    grid::GridGame game = grid::LoadOrBuildGridGame(cache);
    if (cached) {
      out << "loaded matrix cache " << cache.string() << '\n';
    } else if (!cache.empty()) {
      out << "built grid game, wrote matrix cache " << cache.string() << '\n';
    }
    return game;
  } catch (const fs::filesystem_error& e) {
    throw IoError(e.what());
  }
}

void RequireWritable(const fs::path& path, bool force) {
  if (fs::exists(path) && !force) {
    throw std::invalid_argument(path.string() + " exists; pass --force to overwrite");
  }
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create " + path.parent_path().string());
  }
}

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

// "x:y:S" with S one of . r g b R G B.
grid::AtomicExample ParseGridExample(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos || b + 2 != text.size()) {
    throw std::invalid_argument("grid example '" + text + "' is not x:y:S");
  }
  int x = 0, y = 0;
  try {
    std::size_t used = 0;
    x = std::stoi(text.substr(0, a), &used);
    if (used != a) throw std::invalid_argument("x");
    y = std::stoi(text.substr(a + 1, b - a - 1), &used);
    if (used != b - a - 1) throw std::invalid_argument("y");
  } catch (const std::logic_error&) {
    throw std::invalid_argument("grid example '" + text + "' has bad coordinates");
  }
  if (x < 0 || x >= grid::kGridSize || y < 0 || y >= grid::kGridSize) {
    throw std::invalid_argument("grid example '" + text + "' is outside the 7x7 grid");
  }
  return {x, y, grid::ParseSymbol(text[b + 1])};
}

void PrintTable(std::ostream& out, const Posterior& posterior, std::size_t k,
                const std::function<std::string(HypothesisId)>& label) {
  out << "rank  id      probability  hypothesis\n";
  std::size_t rank = 1;
  for (const ScoredHypothesis& s : posterior.TopK(k)) {
    out << std::left << std::setw(6) << rank++ << std::setw(8) << Index(s.id) << std::fixed
        << std::setprecision(6) << std::setw(13) << s.probability << label(s.id) << '\n';
  }
  out << "support " << posterior.SupportSize() << '\n';
}

int CmdEnumerate(const Globals& g, const EnumerateFlags& f, std::ostream& out) {
  const fs::path path = f.out;
  RequireWritable(path, f.force);
  const grid::CanonicalSpace space = grid::BuildCanonicalSpace();
  try {
    grid::SaveCanonicalSpaceFile(space, path);
  } catch (const FormatError& e) {
    throw IoError(e.what());
  }
  out << "raw programs:          " << space.raw_count << '\n'
      << "distinct patterns:     " << space.size() << '\n'
      << "reference count:       " << kReferenceProgramCount << " (difference "
      << static_cast<long long>(space.size()) - static_cast<long long>(kReferenceProgramCount)
      << ")\n"
      << "wrote " << path.string() << '\n';
  if (const fs::path cache = MatrixCachePath(g); !cache.empty()) {
    const MeaningMatrix m = grid::BuildGridMatrix(space);
    if (cache.has_parent_path()) fs::create_directories(cache.parent_path());
    m.SaveFile(cache);
    out << "wrote matrix cache " << cache.string() << '\n';
  }
  return kExitOk;
}

int CmdInfer(const Globals& g, const InferFlags& f, std::ostream& out) {
  const ListenerKind listener = ParseListener(f.listener);
  const std::vector<std::string> items = SplitList(f.examples);
  if (f.game == "segment") {
    if (listener == ListenerKind::kLp) {
      throw std::invalid_argument("the lp listener is only defined for the grid game");
    }
    const segment::SegmentGame game = segment::BuildSegmentGame();
    ExampleSequence d;
    for (const std::string& item : items) d.Append(segment::UtteranceFor(segment::ParseCellExample(item)));
    ConsistentSetCache cache;
    const Posterior posterior = ListenerPosterior(listener, game.matrix, d, cache);
    out << "listener " << ListenerName(listener) << ", " << d.size() << " example(s)\n";
    PrintTable(out, posterior, f.top_k, [&](HypothesisId h) {
      return "h" + std::to_string(Index(h)) + " " + segment::ToString(game.hypotheses[Index(h)]);
    });
    return kExitOk;
  }
  // Grid.
  std::vector<grid::AtomicExample> examples;
  for (const std::string& item : items) examples.push_back(ParseGridExample(item));
  const grid::GridGame game = LoadGame(g, out);
  ExampleSequence d;
  for (const grid::AtomicExample& e : examples) d.Append(grid::ExampleId(e));
  ConsistentSetCache cache;
  const Posterior posterior = ListenerPosterior(listener, game.matrix, d, cache, &game.scores);
  out << "listener " << ListenerName(listener) << ", " << d.size() << " example(s), "
      << cache.Get(game.matrix, d.ids()).count() << " consistent pattern(s)\n";
  PrintTable(out, posterior, f.top_k, [](HypothesisId) { return std::string(); });
  out << "top pattern:\n" << grid::FormatPattern(game.space.patterns[Index(posterior.Top1())]);
  return kExitOk;
}

// Without --out the CSV owns stdout and the summary moves to stderr.
int CmdSimulate(const Globals& g, const SimulateFlags& f, std::ostream& stdout_stream,
                std::ostream& err) {
  std::ostream& out = f.out.empty() ? err : stdout_stream;
  ExperimentConfig config;
  config.speaker = ParseSpeaker(f.speaker);
  config.listener = ParseListener(f.listener);
  config.trials = f.trials;
  config.max_rounds = f.max_rounds;
  config.seed = g.seed;
  config.threads = f.threads;
  if (!f.out.empty()) RequireWritable(f.out, f.force);

  std::optional<grid::GridGame> grid_game;
  std::optional<segment::SegmentGame> segment_game;
  GameView view;
  if (f.game == "grid") {
    grid_game = LoadGame(g, out);
    view = {&grid_game->matrix, &grid_game->scores};
  } else {
    segment_game = segment::BuildSegmentGame();
    view = {&segment_game->matrix, nullptr};
  }

  std::ostringstream csv;
  if (f.mode == "means") {
    const MeanSymbolsResult r = MeanSymbols(view, config);
    WriteMeansCsv(csv, config, r, true);
    out << SpeakerName(config.speaker) << " -> " << ListenerName(config.listener) << ": mean "
        << std::fixed << std::setprecision(3) << r.mean << " symbols (std " << r.std << ", "
        << r.failures << " of " << r.trials << " trials unsolved in " << config.max_rounds
        << " rounds)\n";
  } else {
    const std::vector<CurveRow> rows = SuccessCurve(view, config, f.budget);
    WriteCurveCsv(csv, config, rows, true);
    for (const CurveRow& row : rows) {
      out << "n_symbols " << std::setw(3) << row.n_symbols << "  success rate " << std::fixed
          << std::setprecision(4) << row.rate() << '\n';
    }
  }
  if (f.out.empty()) {
    stdout_stream << csv.str();
  } else {
    std::ofstream file(f.out, std::ios::trunc);
    file << csv.str();
    if (!file) throw IoError("cannot write " + f.out);
    out << "wrote " << f.out << '\n';
  }
  return kExitOk;
}

int CmdStimuli(const StimuliFlags& f, std::ostream& out) {
  RequireWritable(f.out, f.force);
  const std::vector<Stimulus> stimuli =
      SelectStimuli(grid::BuildCanonicalSpace(), f.stimulus_seed);
  std::ofstream file(f.out, std::ios::trunc);
  SaveStimuli(stimuli, file);
  if (!file) throw IoError("cannot write " + f.out);
  out << "wrote " << stimuli.size() << " stimuli to " << f.out << '\n';
  return kExitOk;
}

int CmdServe(const Globals& g, const ServeFlags& f, std::ostream& out) {
  const grid::GridGame game = LoadGame(g, out);
  std::vector<Stimulus> stimuli;
  if (f.stimuli_file.empty()) {
    stimuli = SelectStimuli(grid::BuildCanonicalSpace(), kDefaultStimulusSeed);
  } else {
    try {
      stimuli = LoadStimuliFile(f.stimuli_file);
    } catch (const FormatError& e) {
      throw IoError(e.what());
    }
  }
  SynthService service(game, std::move(stimuli),
                       SynthService::Options{f.log_dir, 5, g.seed});
  HttpFrontend http(service, f.static_dir);
  int port = f.port;
  if (port == 0) {
    port = http.BindAnyPort(f.host);
    if (port < 0) throw IoError("cannot bind an ephemeral port on " + f.host);
  } else if (!http.Bind(f.host, port)) {
    throw IoError("cannot bind " + f.host + ":" + std::to_string(port));
  }
  out << "listening on http://" << f.host << ':' << port << std::endl;

  // SIGINT/SIGTERM stop the server; the listener threads never see them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);
  std::atomic<bool> done{false};
  std::jthread watcher([&] {
    const timespec tick{0, 200'000'000};
    while (!done) {
      if (sigtimedwait(&signals, nullptr, &tick) > 0) {
        http.Stop();
        return;
      }
    }
  });
  http.Listen();
  done = true;
  out << "server stopped" << std::endl;
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pragmatic program synthesis on small example-based games", "pragsynth"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--matrix-cache", g.matrix_cache,
                 "Grid meaning-matrix cache (default $PRAGSYNTH_CACHE_DIR/grid_matrix.bin)");

  EnumerateFlags ef;
  CLI::App* enumerate =
      app.add_subcommand("enumerate", "Enumerate the grid DSL and write the canonical space");
  enumerate->add_option("--out", ef.out, "Canonical-space output file")->required();
  enumerate->add_flag("--force", ef.force, "Overwrite an existing output file");

  InferFlags inf;
  CLI::App* infer = app.add_subcommand("infer", "Rank hypotheses for a list of examples");
  infer->add_option("--game", inf.game)->check(CLI::IsMember({"segment", "grid"}))
      ->capture_default_str();
  infer->add_option("--listener", inf.listener)->check(CLI::IsMember({"l0", "l1", "lp"}))
      ->capture_default_str();
  infer->add_option("--examples", inf.examples,
                    "Comma-separated: segment 'cell:occ|empty', grid 'x:y:S'");
  infer->add_option("--top-k", inf.top_k)->check(CLI::PositiveNumber)->capture_default_str();

  SimulateFlags sf;
  CLI::App* simulate = app.add_subcommand("simulate", "Run speaker/listener experiments");
  simulate->add_option("--game", sf.game)->check(CLI::IsMember({"segment", "grid"}))
      ->capture_default_str();
  simulate->add_option("--speaker", sf.speaker)
      ->check(CLI::IsMember({"s0", "s1", "s1-sample", "s1-greedy"}))
      ->capture_default_str();
  simulate->add_option("--listener", sf.listener)->check(CLI::IsMember({"l0", "l1", "lp"}))
      ->capture_default_str();
  simulate->add_option("--mode", sf.mode)->check(CLI::IsMember({"means", "curve"}))
      ->capture_default_str();
  simulate->add_option("--trials", sf.trials)->check(CLI::PositiveNumber)->capture_default_str();
  simulate->add_option("--max-rounds", sf.max_rounds)->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--budget", sf.budget, "Largest symbol budget for --mode curve")
      ->check(CLI::PositiveNumber)->capture_default_str();
  simulate->add_option("--threads", sf.threads, "0 uses every core")->capture_default_str();
  simulate->add_option("--out", sf.out, "CSV output file (stdout when omitted)");
  simulate->add_flag("--force", sf.force, "Overwrite an existing output file");

  StimuliFlags stf;
  CLI::App* stimuli = app.add_subcommand("stimuli", "Select the study stimuli and write them");
  stimuli->add_option("--out", stf.out, "Stimuli fixture output file")->required();
  stimuli->add_option("--stimulus-seed", stf.stimulus_seed)->capture_default_str();
  stimuli->add_flag("--force", stf.force, "Overwrite an existing output file");

  ServeFlags vf;
  CLI::App* serve = app.add_subcommand("serve", "Serve interactive sessions over HTTP");
  serve->add_option("--host", vf.host)->capture_default_str();
  serve->add_option("--port", vf.port, "TCP port; 0 picks a free one")
      ->check(CLI::Range(0, 65535))->capture_default_str();
  serve->add_option("--stimuli-file", vf.stimuli_file);
  serve->add_option("--log-dir", vf.log_dir, "Directory for per-session JSONL logs");
  serve->add_option("--static-dir", vf.static_dir, "Web client files served at /");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*enumerate) return CmdEnumerate(g, ef, out);
    if (*infer) return CmdInfer(g, inf, out);
    if (*simulate) return CmdSimulate(g, sf, out, err);
    if (*stimuli) return CmdStimuli(stf, out);
    if (*serve) return CmdServe(g, vf, out);
  } catch (const InconsistentSpecError& e) {
    err << "InconsistentSpec: " << e.what() << '\n';
    return kExitInconsistent;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const FormatError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace pragsynth::cli
