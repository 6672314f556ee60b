// Copyright 2026 The LayoutMorph Authors
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


// Command-line entry point: run campaigns, ablations, summaries, replays
// and synthetic corpora.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "layoutmorph/codec.h"
#include "layoutmorph/corpus.h"
#include "layoutmorph/layout_editor.h"
#include "layoutmorph/pipeline.h"
#include "layoutmorph/run_config.h"
#include "layoutmorph/status.h"
#include "layoutmorph/strings.h"
#include "layoutmorph/summarize.h"
#include "layoutmorph/synthetic_corpus.h"

namespace layoutmorph {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

struct RunFlags {
  std::string config;
  std::string corpus;
  std::string palette;
  std::string backends;
  std::string systems;
  std::string out;
  std::string cache;
  std::string tagger;
  std::string synonyms;
  std::string confusables;
  std::optional<uint64_t> seed;
  std::optional<int> jobs;
  std::optional<int> reconstructions;
  int64_t stop_after = -1;
};

void AddRunFlags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--config", f.config, "JSON run config; flags override it");
  cmd->add_option("--corpus", f.corpus, "Corpus directory");
  cmd->add_option("--palette", f.palette, "Palette JSON (default: built-in)");
  cmd->add_option("--backends", f.backends,
                  "synthetic | http:URL | segment=..,inpaint=..,translate=..");
  cmd->add_option("--systems", f.systems,
                  "IC systems: id=synthetic[:policy.json] | id=http:URL, "
                  "comma-separated");
  cmd->add_option("--seed", f.seed, "Master seed");
  cmd->add_option("--out", f.out, "Output directory");
  cmd->add_option("--cache", f.cache, "Caption cache (default: <out>/cache)");
  cmd->add_option("--jobs", f.jobs, "Worker threads");
  cmd->add_option("--reconstructions", f.reconstructions,
                  "Edited maps per seed");
  cmd->add_option("--tagger-lexicon", f.tagger, "Tagger lexicon JSON");
  cmd->add_option("--synonyms", f.synonyms, "Synonym table JSON");
  cmd->add_option("--confusables", f.confusables, "Confusable pairs JSON");
  cmd->add_option("--stop-after", f.stop_after,
                  "Stop after this many work units (resume later)");
}

absl::StatusOr<RunConfig> BuildConfig(const RunFlags& f) {
  RunConfig c;
  if (!f.config.empty()) {
    LM_ASSIGN_OR_RETURN(std::string text, ReadFile(f.config));
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      return MakeError(ErrorKind::kPrecondition,
                       StrCat(f.config, ": ",
                              DescribeOffset(text, e.byte == 0 ? 0 : e.byte - 1),
                              ": ", e.what()));
    }
    LM_ASSIGN_OR_RETURN(
        c, RunConfig::FromJson(doc, fs::path(f.config).parent_path().string()));
  }
  if (!f.corpus.empty()) c.corpus_path = f.corpus;
  if (!f.palette.empty()) c.palette_path = f.palette;
  if (!f.backends.empty()) LM_RETURN_IF_ERROR(ApplyBackendsFlag(f.backends, c));
  if (!f.systems.empty()) {
    LM_ASSIGN_OR_RETURN(c.systems, ParseSystemsFlag(f.systems));
  }
  if (!f.out.empty()) c.output_dir = f.out;
  if (!f.cache.empty()) c.cache_dir = f.cache;
  if (!f.tagger.empty()) c.tagger_lexicon_path = f.tagger;
  if (!f.synonyms.empty()) c.synonyms_path = f.synonyms;
  if (!f.confusables.empty()) c.confusables_path = f.confusables;
  if (f.seed) c.master_seed = *f.seed;
  if (f.jobs) c.max_concurrency = *f.jobs;
  if (f.reconstructions) c.reconstructions_per_seed = *f.reconstructions;
  c.stop_after_units = f.stop_after;
  if (c.corpus_path.empty()) {
    return MakeError(ErrorKind::kPrecondition, "no corpus given (--corpus)");
  }
  LM_RETURN_IF_ERROR(c.Validate());
  return c;
}

json StatsToJson(const RunConfig& c, const RunStats& s) {
  return {{"variant", c.variant},
          {"report", (fs::path(c.output_dir) / kReportFile).string()},
          {"units_total", s.units_total},
          {"units_resumed", s.units_resumed},
          {"units_written", s.units_written},
          {"cases", s.cases},
          {"skipped_seeds", s.skipped_seeds},
          {"skipped_reconstructions", s.skipped_reconstructions},
          {"cache_hits", s.cache_hits},
          {"cache_misses", s.cache_misses},
          {"stopped_early", s.stopped_early},
          {"warnings", s.warnings.size()}};
}

int Fail(const absl::Status& status) {
  std::cerr << "layoutmorph: " << status.message() << "\n";
  return 1;
}

int Execute(const RunConfig& config) {
  auto stats = RunFromConfig(config);
  if (!stats.ok()) return Fail(stats.status());
  for (const std::string& w : stats->warnings) {
    std::cerr << "warning: " << w << "\n";
  }
  std::cout << StatsToJson(config, *stats).dump(2) << "\n";
  return 0;
}

int RunCommand(const RunFlags& flags) {
  auto config = BuildConfig(flags);
  if (!config.ok()) return Fail(config.status());
  return Execute(*config);
}

int AblateCommand(const RunFlags& flags, const std::vector<std::string>& mrs) {
  auto base = BuildConfig(flags);
  if (!base.ok()) return Fail(base.status());
  for (const std::string& tag : mrs) {
    auto mr = ParseMr(tag);
    if (!mr.ok()) return Fail(mr.status());
    RunConfig c = AblationConfig(*base, *mr);
    // Each variant keeps its own report so it can resume on its own.
    c.output_dir = (fs::path(base->output_dir) / MrTag(*mr)).string();
    if (base->cache_dir.empty()) c.cache_dir = base->CacheDir();
    if (const int rc = Execute(c); rc != 0) return rc;
  }
  return 0;
}

int SummarizeCommand(const std::vector<std::string>& inputs,
                     const std::string& out) {
  std::vector<json> lines;
  for (const std::string& in : inputs) {
    const std::string path =
        fs::is_directory(in) ? (fs::path(in) / kReportFile).string() : in;
    auto report = ReadReport(path);
    if (!report.ok()) return Fail(report.status());
    lines.insert(lines.end(), report->begin(), report->end());
  }
  const std::string text = Summarize(lines).dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return 0;
  }
  if (absl::Status s = WriteFile(out, text); !s.ok()) return Fail(s);
  return 0;
}

int ReplayCommand(const std::string& run_dir, const std::string& case_id,
                  const std::string& write_map) {
  auto result = ReplayCase(run_dir, case_id);
  if (!result.ok()) return Fail(result.status());
  std::cout << json{{"case_id", case_id},
                    {"recorded_sha256", result->recorded_sha256},
                    {"replayed_sha256", result->replayed_sha256},
                    {"matches", result->matches()}}
                   .dump(2)
            << "\n";
  if (!write_map.empty()) {
    if (absl::Status s = WriteFile(write_map, EncodeMapPgm(result->map));
        !s.ok()) {
      return Fail(s);
    }
  }
  return result->matches() ? 0 : 1;
}

int GenSyntheticCommand(const std::string& out, SyntheticCorpusOptions options,
                        const std::string& faults, const std::string& palette) {
  if (!faults.empty()) {
    auto text = ReadFile(faults);
    if (!text.ok()) return Fail(text.status());
    auto policy = FaultPolicy::FromJson(*text);
    if (!policy.ok()) return Fail(policy.status());
    options.faults = *std::move(policy);
  }
  auto p = LoadPalette(palette);
  if (!p.ok()) return Fail(p.status());
  if (absl::Status s = WriteSyntheticCorpus(out, options, *p); !s.ok()) {
    return Fail(s);
  }
  std::cout << json{{"corpus", out}, {"scenes", options.scenes}}.dump(2)
            << "\n";
  return 0;
}

}  // namespace
}  // namespace layoutmorph

int main(int argc, char** argv) {
  using namespace layoutmorph;
  CLI::App app{"Metamorphic testing of image captioning systems"};
  app.require_subcommand(1);

  RunFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "Run a test campaign");
  AddRunFlags(run, run_flags);

  RunFlags ablate_flags;
  std::vector<std::string> mrs = {"MR1", "MR2", "MR3", "MR4"};
  CLI::App* ablate =
      app.add_subcommand("ablate", "One single-relation run per --mr");
  AddRunFlags(ablate, ablate_flags);
  ablate->add_option("--mr", mrs, "MR1..MR4; repeat for several")
      ->capture_default_str();

  std::vector<std::string> inputs;
  std::string summary_out;
  CLI::App* summarize =
      app.add_subcommand("summarize", "Aggregate reports into one JSON");
  summarize->add_option("--in", inputs, "Report files or run directories")
      ->required();
  summarize->add_option("--out", summary_out, "Write here instead of stdout");

  std::string run_dir = "out";
  std::string case_id;
  std::string write_map;
  CLI::App* replay =
      app.add_subcommand("replay", "Re-derive a case's map from its trace");
  replay->add_option("--case", case_id, "Case id, e.g. scene0003/2-0")
      ->required();
  replay->add_option("--run", run_dir, "Run output directory")
      ->capture_default_str();
  replay->add_option("--write-map", write_map, "Save the map as a PGM");

  SyntheticCorpusOptions gen;
  std::string gen_out = "synthetic";
  std::string faults;
  std::string gen_palette;
  CLI::App* gen_cmd = app.add_subcommand(
      "gen-synthetic", "Write a synthetic corpus with known ground truth");
  gen_cmd->add_option("--scenes", gen.scenes, "Number of scenes")
      ->capture_default_str();
  gen_cmd->add_option("--faults", faults,
                      "Fault policy; captions the scenes into "
                      "ancestor_faults.jsonl");
  gen_cmd->add_option("--out", gen_out, "Corpus directory")
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Generator seed")
      ->capture_default_str();
  gen_cmd->add_option("--width", gen.scene.width)->capture_default_str();
  gen_cmd->add_option("--height", gen.scene.height)->capture_default_str();
  gen_cmd->add_option("--max-objects", gen.scene.max_objects)
      ->capture_default_str();
  gen_cmd->add_flag("--occlusion", gen.scene.occlusion,
                    "Add overlapping partners");
  gen_cmd->add_option("--palette", gen_palette, "Palette JSON");

  CLI11_PARSE(app, argc, argv);

  if (*run) return RunCommand(run_flags);
  if (*ablate) return AblateCommand(ablate_flags, mrs);
  if (*summarize) return SummarizeCommand(inputs, summary_out);
  if (*replay) return ReplayCommand(run_dir, case_id, write_map);
  if (*gen_cmd) return GenSyntheticCommand(gen_out, gen, faults, gen_palette);
  return 0;
}
