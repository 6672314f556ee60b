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


#include "layoutmorph/pipeline.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "layoutmorph/codec.h"
#include "layoutmorph/embedded_data.h"
#include "layoutmorph/error_detector.h"
#include "layoutmorph/http_backend.h"
#include "layoutmorph/mask_extractor.h"
#include "layoutmorph/seeding.h"
#include "layoutmorph/status.h"
#include "layoutmorph/strings.h"
#include "layoutmorph/synthetic_backends.h"
#include "layoutmorph/wire.h"

namespace layoutmorph {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

std::string CaseId(const std::string& seed_id, int m, int n) {
  return StrCat(seed_id, "/", m, "-", n);
}

// Runs fn(0..n-1) on up to `jobs` threads, handing out indices in order.
void ParallelFor(int64_t n, int jobs, const std::function<void(int64_t)>& fn,
                 const std::atomic<bool>& stop) {
  std::atomic<int64_t> next{0};
  auto work = [&] {
    while (!stop.load()) {
      const int64_t i = next++;
      if (i >= n) return;
      fn(i);
    }
  };
  const int64_t threads = std::min<int64_t>(jobs, n);
  if (threads <= 1) {
    work();
    return;
  }
  std::vector<std::thread> pool;
  for (int64_t t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
}

// Writes unit texts in index order no matter which worker finishes first.
class OrderedSink {
 public:
  OrderedSink(std::FILE* file, int64_t stop_after, std::atomic<bool>& stop)
      : file_(file), stop_after_(stop_after), stop_(stop) {}

  void Deliver(int64_t index, std::string text) {
    std::lock_guard<std::mutex> lock(mu_);
    pending_.emplace(index, std::move(text));
    while (!pending_.empty() && pending_.begin()->first == next_) {
      if (stop_.load()) return;
      const std::string& t = pending_.begin()->second;
      std::fwrite(t.data(), 1, t.size(), file_);
      std::fflush(file_);
      pending_.erase(pending_.begin());
      ++next_;
      if (stop_after_ >= 0 && next_ >= stop_after_) stop_.store(true);
    }
  }

  int64_t written() const { return next_; }

 private:
  std::mutex mu_;
  std::FILE* file_;
  int64_t stop_after_;
  std::atomic<bool>& stop_;
  std::map<int64_t, std::string> pending_;
  int64_t next_ = 0;
};

json ObjsToJson(const std::vector<ObjInfo>& objs, bool with_flag) {
  json out = json::array();
  for (const ObjInfo& o : objs) {
    json j{{"name", o.name}, {"num", o.num}};
    if (with_flag) j["has_num"] = o.has_num;
    out.push_back(std::move(j));
  }
  return out;
}

json SinglesToJson(const std::vector<ObjectInstance>& singles) {
  json out = json::array();
  for (const ObjectInstance& s : singles) {
    out.push_back({{"id", s.instance_id()},
                   {"category", s.category()},
                   {"z_order", s.z_order()},
                   {"mask", wire::MaskToBase64Pgm(s.mask())}});
  }
  return out;
}

absl::StatusOr<std::vector<ObjectInstance>> SinglesFromJson(const json& doc) {
  std::vector<ObjectInstance> out;
  try {
    for (const json& j : doc) {
      LM_ASSIGN_OR_RETURN(BinaryMask mask, wire::MaskFromBase64Pgm(j.at("mask")));
      LM_ASSIGN_OR_RETURN(
          ObjectInstance obj,
          ObjectInstance::Create(j.at("id").get<std::string>(),
                                 j.at("category").get<std::string>(),
                                 std::move(mask), j.at("z_order").get<int>()));
      out.push_back(std::move(obj));
    }
  } catch (const json::exception& e) {
    return MakeError(ErrorKind::kCorpusError, StrCat("singles: ", e.what()));
  }
  return out;
}

fs::path ArtifactDir(const std::string& output_dir, const std::string& seed_id) {
  return fs::path(output_dir) / "artifacts" / seed_id;
}

// What phase one learns about a seed.
struct SeedWork {
  SceneRecord record;
  std::vector<ObjInfo> gt_targets;
  SemanticMap background;
  std::vector<ObjectInstance> singles;
  std::string skip_reason;
};

struct Unit {
  size_t seed = 0;
  int m = -1;  // -1: the seed was skipped
};

struct ReportPrefix {
  std::set<std::pair<std::string, int>> done;
  uintmax_t keep_bytes = 0;
};

// Finds the complete units of an earlier run. A unit whose lines were only
// partly written is dropped so it can be redone whole.
absl::StatusOr<ReportPrefix> ScanExistingReport(const std::string& path,
                                                const RunConfig& config) {
  ReportPrefix prefix;
  if (!fs::exists(path)) return prefix;
  LM_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  struct Group {
    std::pair<std::string, int> key;
    int lines = 0;
    bool skipped = false;
    uintmax_t begin = 0;
  };
  std::vector<Group> groups;
  uintmax_t pos = 0;
  while (pos < text.size()) {
    const size_t end = text.find('\n', pos);
    if (end == std::string::npos) break;  // torn final line
    const json line = json::parse(text.substr(pos, end - pos), nullptr, false);
    if (line.is_discarded() || !line.is_object()) {
      return MakeError(ErrorKind::kCorpusError,
                       StrCat(path, ": ", DescribeOffset(text, pos),
                              " is not a JSON record"));
    }
    if (line.value("master_seed", uint64_t{0}) != config.master_seed ||
        line.value("variant", "") != config.variant) {
      return MakeError(ErrorKind::kPrecondition,
                       StrCat(path, " belongs to a different run (seed or "
                                    "variant differ); use a fresh output "
                                    "directory"));
    }
    const std::string kind = line.value("kind", "");
    const std::pair<std::string, int> key{line.value("seed_id", ""),
                                          line.value("m", -1)};
    if (groups.empty() || groups.back().key != key) {
      groups.push_back({key, 0, kind != "case", pos});
    }
    ++groups.back().lines;
    pos = end + 1;
  }
  if (!groups.empty() && !groups.back().skipped &&
      groups.back().lines < config.translation.samples_per_map) {
    pos = groups.back().begin;
    groups.pop_back();
  }
  for (const Group& g : groups) prefix.done.insert(g.key);
  prefix.keep_bytes = pos;
  return prefix;
}

// The word tables named by the config, falling back to the built-in ones.
struct TextTools {
  LexiconTagger tagger;
  LexiconMapper mapper;
  ErrorDetector detector;
};

absl::StatusOr<std::string> TableText(const std::string& path,
                                      std::string_view builtin) {
  if (path.empty()) return std::string(builtin);
  auto text = ReadFile(path);
  if (!text.ok()) return MakeError(ErrorKind::kPrecondition, MessageOf(text.status()));
  return text;
}

absl::StatusOr<TextTools> LoadTextTools(const RunConfig& config,
                                        const PalettePtr& palette) {
  LM_ASSIGN_OR_RETURN(std::string tagger_text,
                      TableText(config.tagger_lexicon_path,
                                embedded::kTaggerLexiconJson));
  LM_ASSIGN_OR_RETURN(std::string synonyms_text,
                      TableText(config.synonyms_path, embedded::kSynonymsJson));
  LM_ASSIGN_OR_RETURN(std::string confusables_text,
                      TableText(config.confusables_path,
                                embedded::kConfusablesJson));
  LM_ASSIGN_OR_RETURN(LexiconTagger tagger, LexiconTagger::FromJson(tagger_text));
  LM_ASSIGN_OR_RETURN(LexiconMapper mapper,
                      LexiconMapper::FromJson(palette, synonyms_text));
  LM_ASSIGN_OR_RETURN(Confusables confusables,
                      Confusables::FromJson(confusables_text));
  return TextTools{std::move(tagger), std::move(mapper),
                   ErrorDetector(std::move(confusables), palette)};
}

class Runner {
 public:
  Runner(const RunConfig& config, const Corpus& corpus, PalettePtr palette,
         StageBackends& backends, TextTools text)
      : config_(config),
        corpus_(corpus),
        palette_(std::move(palette)),
        backends_(backends),
        text_(std::move(text)),
        cache_(config.CacheDir()) {}

  absl::StatusOr<RunStats> Run();

 private:
  void Warn(std::string message) {
    std::lock_guard<std::mutex> lock(mu_);
    stats_.warnings.push_back(std::move(message));
  }
  void PrepareSeed(size_t index, SeedWork& work);
  absl::Status WriteArtifacts(const SeedWork& work);
  std::string RunUnit(const Unit& unit, const SeedWork& work);
  json SystemVerdict(const std::string& system_id, CaptionService& service,
                     const RgbImage& image, const SeedWork& work);

  const RunConfig& config_;
  const Corpus& corpus_;
  PalettePtr palette_;
  StageBackends& backends_;
  TextTools text_;
  CaptionCache cache_;
  std::mutex mu_;
  RunStats stats_;
  std::atomic<int64_t> cases_{0};
  std::atomic<int64_t> skipped_reconstructions_{0};
};

void Runner::PrepareSeed(size_t index, SeedWork& work) {
  const CorpusScene& scene = corpus_.scenes[index];
  work.record = scene.record;
  SceneRecord& r = work.record;
  if (!scene.annotated) {
    auto seg = backends_.segmenter->Segment(r.image);
    if (!seg.ok()) {
      work.skip_reason = StrCat("segmentation: ", MessageOf(seg.status()));
      return;
    }
    r.semantic_map = std::move(seg->map);
    r.instances = std::move(seg->instances);
    r.candidates = std::move(seg->candidates);
  }
  if (r.gt_captions.empty()) {
    work.skip_reason = "no reference captions";
    return;
  }
  std::set<std::string> seen;
  for (const std::string& caption : r.gt_captions) {
    auto objs = ObjsExtract(caption, &r.candidates, CaptionSource::kGroundTruth,
                            text_.tagger, text_.mapper);
    if (!objs.ok()) {
      work.skip_reason = StrCat("reference caption: ", MessageOf(objs.status()));
      return;
    }
    for (ObjInfo& o : *objs) {
      if (seen.insert(o.name).second) work.gt_targets.push_back(std::move(o));
    }
  }
  std::set<std::string> targets;
  for (const ObjectInstance& obj : r.instances) {
    if (seen.count(obj.category())) targets.insert(obj.instance_id());
  }
  if (targets.empty()) {
    work.skip_reason = "no segmented object is named by the reference captions";
    return;
  }
  auto extracted = MapSplit(r, targets, *backends_.inpainter,
                            *backends_.segmenter, config_.extraction);
  if (!extracted.ok()) {
    work.skip_reason = StrCat("extraction: ", MessageOf(extracted.status()));
    return;
  }
  auto singles = SinglesAsInstances(r, *extracted);
  if (!singles.ok()) {
    work.skip_reason = StrCat("extraction: ", MessageOf(singles.status()));
    return;
  }
  work.background = std::move(extracted->background_map);
  work.singles = *std::move(singles);
  if (absl::Status s = WriteArtifacts(work); !s.ok()) {
    work.skip_reason = StrCat("artifacts: ", MessageOf(s));
  }
}

absl::Status Runner::WriteArtifacts(const SeedWork& work) {
  const fs::path dir = ArtifactDir(config_.output_dir, work.record.seed_id);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) return MakeError(ErrorKind::kPrecondition, ec.message());
  LM_RETURN_IF_ERROR(WriteFile((dir / "background.pgm").string(),
                               EncodeMapPgm(work.background)));
  const json singles{{"seed_id", work.record.seed_id},
                     {"candidates", work.record.candidates},
                     {"singles", SinglesToJson(work.singles)}};
  return WriteFile((dir / "singles.json").string(), singles.dump() + "\n");
}

json Runner::SystemVerdict(const std::string& system_id,
                           CaptionService& service, const RgbImage& image,
                           const SeedWork& work) {
  std::string warning;
  auto result = cache_.Get(system_id, image, service, &warning);
  if (!warning.empty()) Warn(warning);
  if (!result.ok()) {
    return {{"status", "failed"}, {"error", MessageOf(result.status())}};
  }
  auto verdict = EvaluateCase(work.record.gt_captions, work.record.candidates,
                              result->caption, text_.tagger, text_.mapper,
                              text_.detector);
  if (!verdict.ok()) {
    return {{"status", "failed"},
            {"caption", result->caption},
            {"error", MessageOf(verdict.status())}};
  }
  json violations = json::array();
  for (const Violation& v : verdict->violations) violations.push_back(v.ToJson());
  return {{"status", "ok"},
          {"caption", result->caption},
          {"verdict", verdict->abnormal ? "abnormal" : "normal"},
          {"violations", violations},
          {"s_gen", ObjsToJson(verdict->s_gen, true)},
          {"injected", result->has_fault_log ? FaultLogToJson(result->injected)
                                             : json(nullptr)}};
}

std::string Runner::RunUnit(const Unit& unit, const SeedWork& work) {
  const std::string& seed_id = work.record.seed_id;
  const json base{{"seed_id", seed_id},
                  {"master_seed", config_.master_seed},
                  {"variant", config_.variant}};
  if (unit.m < 0) {
    json line = base;
    line["kind"] = "skipped_seed";
    line["m"] = -1;
    line["reason"] = work.skip_reason;
    return line.dump() + "\n";
  }
  auto skip = [&](std::string_view reason) {
    ++skipped_reconstructions_;
    json line = base;
    line["kind"] = "skipped_reconstruction";
    line["m"] = unit.m;
    line["reason"] = reason;
    return line.dump() + "\n";
  };

  std::mt19937_64 rng(MixSeeds({config_.master_seed, StableHash(seed_id),
                                static_cast<uint64_t>(unit.m)}));
  auto edited = Edit(work.background, work.singles, config_.edit, rng);
  if (!edited.ok()) return skip(StrCat("edit: ", MessageOf(edited.status())));
  auto images = backends_.translator->Translate(edited->map,
                                                config_.translation);
  if (!images.ok()) {
    return skip(StrCat("translation: ", MessageOf(images.status())));
  }
  if (static_cast<int>(images->size()) != config_.translation.samples_per_map) {
    return skip(StrCat("translation returned ", images->size(), " images"));
  }
  std::set<std::string> mrs;
  for (const EditStep& s : edited->trace.steps) mrs.insert(MrTag(s.mr));
  const std::string map_sha = MapDigest(edited->map);

  std::string out;
  for (int n = 0; n < static_cast<int>(images->size()); ++n) {
    const RgbImage& image = (*images)[n];
    json systems = json::object();
    for (auto& [id, service] : backends_.captioners) {
      systems[id] = SystemVerdict(id, *service, image, work);
    }
    json line = base;
    line["kind"] = "case";
    line["case_id"] = CaseId(seed_id, unit.m, n);
    line["m"] = unit.m;
    line["n"] = n;
    line["mrs"] = mrs;
    line["edit_trace"] = edited->trace.ToJson();
    line["gt_targets"] = ObjsToJson(work.gt_targets, false);
    line["map_sha256"] = map_sha;
    line["image_sha256"] = ImageDigest(image);
    line["systems"] = std::move(systems);
    out += line.dump() + "\n";
    ++cases_;
  }
  return out;
}

absl::StatusOr<RunStats> Runner::Run() {
  LM_RETURN_IF_ERROR(config_.Validate());
  std::error_code ec;
  fs::create_directories(config_.output_dir, ec);
  if (ec) {
    return MakeError(ErrorKind::kPrecondition,
                     StrCat(config_.output_dir, ": ", ec.message()));
  }
  LM_RETURN_IF_ERROR(
      WriteFile((fs::path(config_.output_dir) / "palette.json").string(),
                PaletteToJson(*palette_)));
  LM_RETURN_IF_ERROR(
      WriteFile((fs::path(config_.output_dir) / "run.json").string(),
                config_.ToJson().dump(2) + "\n"));

  const std::string report = (fs::path(config_.output_dir) / kReportFile).string();
  LM_ASSIGN_OR_RETURN(ReportPrefix prefix, ScanExistingReport(report, config_));
  if (fs::exists(report)) fs::resize_file(report, prefix.keep_bytes);

  const size_t seeds = corpus_.scenes.size();
  const int reconstructions = config_.reconstructions_per_seed;
  auto done = [&](size_t s, int m) {
    return prefix.done.count({corpus_.scenes[s].record.seed_id, m}) > 0;
  };
  std::vector<size_t> to_prepare;
  for (size_t s = 0; s < seeds; ++s) {
    if (done(s, -1)) continue;
    bool all = true;
    for (int m = 0; m < reconstructions && all; ++m) all = done(s, m);
    if (!all) to_prepare.push_back(s);
  }
  stats_.units_resumed = static_cast<int64_t>(prefix.done.size());

  std::atomic<bool> stop{false};
  std::vector<SeedWork> work(seeds);
  ParallelFor(static_cast<int64_t>(to_prepare.size()), config_.max_concurrency,
              [&](int64_t i) { PrepareSeed(to_prepare[i], work[to_prepare[i]]); },
              stop);

  std::vector<Unit> units;
  for (size_t s : to_prepare) {
    if (!work[s].skip_reason.empty()) {
      ++stats_.skipped_seeds;
      Warn(StrCat(work[s].record.seed_id, " skipped: ", work[s].skip_reason));
      units.push_back({s, -1});
      continue;
    }
    for (int m = 0; m < reconstructions; ++m) {
      if (!done(s, m)) units.push_back({s, m});
    }
  }
  stats_.units_total = stats_.units_resumed + static_cast<int64_t>(units.size());

  std::FILE* file = std::fopen(report.c_str(), "ab");
  if (file == nullptr) {
    return MakeError(ErrorKind::kPrecondition, StrCat("cannot open ", report));
  }
  OrderedSink sink(file, config_.stop_after_units, stop);
  ParallelFor(static_cast<int64_t>(units.size()), config_.max_concurrency,
              [&](int64_t i) {
                sink.Deliver(i, RunUnit(units[i], work[units[i].seed]));
              },
              stop);
  std::fclose(file);

  stats_.units_written = sink.written();
  stats_.stopped_early =
      stats_.units_written < static_cast<int64_t>(units.size());
  stats_.cases = cases_;
  stats_.skipped_reconstructions = skipped_reconstructions_;
  stats_.cache_hits = cache_.hits();
  stats_.cache_misses = cache_.misses();
  return stats_;
}

}  // namespace

StageBackends MakeBackends(const RunConfig& config, const PalettePtr& palette,
                           const std::string& token) {
  auto http = [&](const BackendSpec& spec, const std::string& system_id) {
    HttpBackendOptions o;
    o.base_url = spec.url;
    o.bearer_token = token;
    o.system_id = system_id;
    o.max_in_flight = std::max(1, config.max_concurrency);
    return std::make_shared<HttpBackend>(palette, o);
  };
  StageBackends b;
  if (config.segmenter.http) {
    b.segmenter = http(config.segmenter, "");
  } else {
    b.segmenter = std::make_shared<ExactSegmenter>(palette);
  }
  if (config.inpainter.http) {
    b.inpainter = http(config.inpainter, "");
  } else {
    b.inpainter = std::make_shared<BackgroundFillInpainter>(palette);
  }
  if (config.translator.http) {
    b.translator = http(config.translator, "");
  } else {
    b.translator = std::make_shared<FlatRenderer>();
  }
  for (const SystemSpec& s : config.systems) {
    std::shared_ptr<CaptionService> service;
    if (s.backend.http) {
      service = http(s.backend, s.id);
    } else {
      service = std::make_shared<FaultInjectingCaptioner>(palette,
                                                          s.fault_policy);
    }
    b.captioners.emplace_back(s.id, std::move(service));
  }
  return b;
}

std::string ImageDigest(const RgbImage& image) {
  const std::vector<uint8_t> bytes = image.Bytes();
  std::string ppm = StrCat("P6\n", image.width(), " ", image.height(), "\n255\n");
  ppm.append(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  return Sha256Hex(ppm);
}

std::string MapDigest(const SemanticMap& map) {
  return Sha256Hex(EncodeMapPgm(map));
}

absl::StatusOr<CaptionResult> CaptionCache::Get(const std::string& system_id,
                                                const RgbImage& image,
                                                CaptionService& service,
                                                std::string* warning) {
  const fs::path path =
      fs::path(dir_) / system_id / (ImageDigest(image) + ".json");
  if (fs::exists(path)) {
    auto text = ReadFile(path.string());
    const json doc = text.ok() ? json::parse(*text, nullptr, false) : json();
    if (doc.is_object() && doc.contains("caption") &&
        doc["caption"].is_string() && !doc["caption"].get<std::string>().empty()) {
      CaptionResult cached;
      cached.caption = doc["caption"].get<std::string>();
      const json injected = doc.value("injected", json(nullptr));
      auto log = injected.is_null() ? absl::StatusOr<std::vector<FaultRecord>>()
                                    : FaultLogFromJson(injected);
      if (injected.is_null() || log.ok()) {
        cached.has_fault_log = !injected.is_null();
        if (cached.has_fault_log) cached.injected = *std::move(log);
        ++hits_;
        return cached;
      }
    }
    if (warning != nullptr) {
      *warning = StrCat("corrupt cache entry ", path.string(), ", recomputed");
    }
  }
  ++misses_;
  LM_ASSIGN_OR_RETURN(CaptionResult result, service.CaptionWithLog(image));
  const json entry{{"caption", result.caption},
                   {"injected", result.has_fault_log
                                    ? FaultLogToJson(result.injected)
                                    : json(nullptr)}};
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  // Write then rename, so readers never see half an entry.
  const std::string temp = StrCat(path.string(), ".tmp", temp_counter_++, "_",
                                  std::hash<std::thread::id>()(
                                      std::this_thread::get_id()));
  if (WriteFile(temp, entry.dump()).ok()) {
    fs::rename(temp, path, ec);
    if (ec) fs::remove(temp, ec);
  }
  return result;
}

absl::StatusOr<RunStats> RunPipeline(const RunConfig& config,
                                     const Corpus& corpus,
                                     const PalettePtr& palette,
                                     StageBackends& backends) {
  LM_RETURN_IF_ERROR(config.Validate());
  LM_ASSIGN_OR_RETURN(TextTools text, LoadTextTools(config, palette));
  Runner runner(config, corpus, palette, backends, std::move(text));
  return runner.Run();
}

absl::StatusOr<PalettePtr> LoadPalette(const std::string& path) {
  if (path.empty()) return DefaultPalette();
  LM_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  LM_ASSIGN_OR_RETURN(CategoryPalette palette, ParsePaletteJson(text));
  return std::make_shared<const CategoryPalette>(std::move(palette));
}

absl::StatusOr<RunStats> RunFromConfig(const RunConfig& config) {
  LM_RETURN_IF_ERROR(config.Validate());
  LM_ASSIGN_OR_RETURN(PalettePtr palette, LoadPalette(config.palette_path));
  LM_ASSIGN_OR_RETURN(Corpus corpus, IngestCorpus(config.corpus_path, palette));
  const char* token = std::getenv("LAYOUTMORPH_TOKEN");
  StageBackends backends =
      MakeBackends(config, palette, token == nullptr ? "" : token);
  LM_ASSIGN_OR_RETURN(RunStats stats,
                      RunPipeline(config, corpus, palette, backends));
  stats.warnings.insert(stats.warnings.begin(), corpus.warnings.begin(),
                        corpus.warnings.end());
  return stats;
}

absl::StatusOr<std::vector<json>> ReadReport(const std::string& path) {
  LM_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  std::vector<json> lines;
  size_t pos = 0;
  while (pos < text.size()) {
    const size_t end = text.find('\n', pos);
    if (end == std::string::npos) break;
    if (end > pos) {
      json line = json::parse(text.substr(pos, end - pos), nullptr, false);
      if (line.is_discarded()) {
        return MakeError(ErrorKind::kCorpusError,
                         StrCat(path, ": ", DescribeOffset(text, pos),
                                " is not valid JSON"));
      }
      lines.push_back(std::move(line));
    }
    pos = end + 1;
  }
  return lines;
}

absl::StatusOr<ReplayResult> ReplayCase(const std::string& output_dir,
                                        const std::string& case_id) {
  LM_ASSIGN_OR_RETURN(std::vector<json> lines,
                      ReadReport((fs::path(output_dir) / kReportFile).string()));
  const json* record = nullptr;
  for (const json& line : lines) {
    if (line.value("case_id", "") == case_id) {
      record = &line;
      break;
    }
  }
  if (record == nullptr) {
    return MakeError(ErrorKind::kUnknownTarget,
                     StrCat("no case '", case_id, "' in the report"));
  }
  LM_ASSIGN_OR_RETURN(PalettePtr palette,
                      LoadPalette((fs::path(output_dir) / "palette.json").string()));
  const fs::path dir =
      ArtifactDir(output_dir, record->at("seed_id").get<std::string>());
  LM_ASSIGN_OR_RETURN(std::string background_bytes,
                      ReadFile((dir / "background.pgm").string()));
  LM_ASSIGN_OR_RETURN(SemanticMap background,
                      DecodeMapPgm(background_bytes, palette));
  LM_ASSIGN_OR_RETURN(std::string singles_text,
                      ReadFile((dir / "singles.json").string()));
  const json singles_doc = json::parse(singles_text, nullptr, false);
  if (singles_doc.is_discarded() || !singles_doc.contains("singles")) {
    return MakeError(ErrorKind::kCorpusError,
                     StrCat((dir / "singles.json").string(), " is corrupt"));
  }
  LM_ASSIGN_OR_RETURN(std::vector<ObjectInstance> singles,
                      SinglesFromJson(singles_doc["singles"]));
  LM_ASSIGN_OR_RETURN(EditTrace trace,
                      EditTrace::FromJson(record->at("edit_trace")));
  LM_ASSIGN_OR_RETURN(EditResult replayed,
                      ReplayTrace(background, singles, trace));
  ReplayResult result;
  result.recorded_sha256 = record->value("map_sha256", "");
  result.replayed_sha256 = MapDigest(replayed.map);
  result.map = std::move(replayed.map);
  return result;
}

}  // namespace layoutmorph
