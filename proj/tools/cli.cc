// Copyright 2026 The CaptionForge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <cstdlib>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "captionforge/checkpoint.h"
#include "captionforge/cider.h"
#include "captionforge/dataset.h"
#include "captionforge/decode.h"
#include "captionforge/ensemble.h"
#include "captionforge/errors.h"
#include "captionforge/fixture.h"
#include "captionforge/jsonl.h"
#include "captionforge/parallel.h"
#include "captionforge/random.h"
#include "captionforge/reward.h"
#include "captionforge/scorer.h"
#include "captionforge/text.h"
#include "captionforge/trainer.h"
#include "captionforge/version.h"
#include "captionforge/vocabulary.h"
#include "manifest.h"

namespace captionforge::cli {
namespace {

struct Common {
  int jobs = 1;
};

struct VocabArgs {
  std::string corpus, out, lang = "en";
  int min_count = kDefaultMinCount;
};

struct ScoreArgs {
  std::string cands, refs, out, lang = "en", cider = "d";
};

struct RewardArgs {
  std::string cands, refs, weights, out, lang = "en", cider = "d";
};

struct TrainArgs {
  std::string phase, corpus, features, weights, vocab, init, out;
  std::string lang = "en", schedule = "transformer";
  std::uint64_t seed = 0;
  int epochs = 1, hidden = 64, batch_size = 64, max_len = kMaxCaptionTokens;
  int min_count = kDefaultMinCount;
  double lr = 1e-4, lr_scale = 1.0, label_smoothing = 0.1, clip_norm = 5.0;
};

struct DecodeArgs {
  std::string ckpt, spec, features, out, mode = "beam", fusion;
  int beam = 3, max_len = kMaxCaptionTokens;
  bool no_length_norm = false;
  std::uint64_t seed = 0;
  double temperature = 1.0;
};

struct FixtureArgs {
  std::string out;
  int size = fixture::kDefaultSize;
  std::uint64_t seed = fixture::kDefaultSeed;
};

metrics::CandidateMap ToCandidateMap(const std::vector<CandidateRow>& rows,
                                     Language lang) {
  metrics::CandidateMap out;
  for (const auto& r : rows) out[r.id] = Tokenize(r.caption, lang);
  return out;
}

metrics::ReferenceMap ToReferenceMap(const std::vector<ReferenceRow>& rows,
                                     Language lang) {
  metrics::ReferenceMap out;
  for (const auto& r : rows) {
    metrics::RefSet set;
    for (const auto& s : r.refs) set.push_back(Tokenize(s, lang));
    out[r.id] = std::move(set);
  }
  return out;
}

std::vector<metrics::RefSet> RefSets(const metrics::ReferenceMap& refs) {
  std::vector<metrics::RefSet> out;
  for (const auto& [id, set] : refs) out.push_back(set);
  return out;
}

reward::HybridWeights LoadWeights(const std::string& path) {
  if (path.empty()) return reward::HybridWeights{};
  return reward::HybridWeights::FromJson(ReadJsonFile(path));
}

std::span<const double> Span(const Eigen::VectorXd& v) {
  return {v.data(), static_cast<size_t>(v.size())};
}

int CmdVocab(const VocabArgs& a, std::ostream& out) {
  const Language lang = ParseLanguage(a.lang);
  const std::vector<Caption> corpus =
      CorpusCaptions(LoadReferences(a.corpus), lang);
  const Vocabulary vocab = Vocabulary::Build(corpus, a.min_count);
  WriteJsonFile(a.out, vocab.ToJson());

  RunManifest m;
  m.command = "vocab";
  m.config = {{"lang", a.lang}, {"min_count", a.min_count}};
  m.AddInput("corpus", a.corpus);
  m.results = {{"size", vocab.size()}};
  m.Write(ManifestPathFor(a.out));
  out << "vocabulary: " << vocab.size() << " entries -> " << a.out << '\n';
  return kExitOk;
}

int CmdScore(const ScoreArgs& a, const Common& c, std::ostream& out) {
  const Language lang = ParseLanguage(a.lang);
  metrics::ScoreOptions opts;
  opts.cider = metrics::ParseCiderVariant(a.cider);
  opts.language = lang;
  opts.jobs = c.jobs;
  const metrics::MetricReport report =
      metrics::ScoreCorpus(ToCandidateMap(LoadCandidates(a.cands), lang),
                           ToReferenceMap(LoadReferences(a.refs), lang), opts);
  const nlohmann::json j = report.ToJson();
  WriteJsonFile(a.out, j);

  RunManifest m;
  m.command = "score";
  m.config = {{"lang", a.lang}, {"cider", a.cider}};
  m.AddInput("cands", a.cands);
  m.AddInput("refs", a.refs);
  m.results = j["corpus"];
  m.Write(ManifestPathFor(a.out));
  out << j["corpus"].dump() << '\n';
  return kExitOk;
}

int CmdReward(const RewardArgs& a, std::ostream& out) {
  const Language lang = ParseLanguage(a.lang);
  const reward::HybridWeights weights = LoadWeights(a.weights);
  const auto cands = ToCandidateMap(LoadCandidates(a.cands), lang);
  const auto refs = ToReferenceMap(LoadReferences(a.refs), lang);
  for (const auto& [id, _] : cands) {
    if (!refs.count(id)) {
      throw MismatchedIdsError("candidate id '" + id + "' has no references");
    }
  }
  for (const auto& [id, _] : refs) {
    if (!cands.count(id)) {
      throw MismatchedIdsError("reference id '" + id + "' has no candidate");
    }
  }
  const metrics::IdfTable idf = metrics::IdfTable::Build(RefSets(refs));
  const reward::RewardContext ctx{&idf, lang,
                                  metrics::ParseCiderVariant(a.cider)};
  std::vector<nlohmann::json> rows;
  double total = 0.0;
  for (const auto& [id, cand] : cands) {
    const double r = reward::HybridReward(cand, refs.at(id), weights, ctx);
    if (!std::isfinite(r)) throw NumericalError("non-finite reward for " + id);
    total += r;
    rows.push_back({{"id", id}, {"reward", r}});
  }
  WriteJsonLines(a.out, rows);

  RunManifest m;
  m.command = "reward";
  m.config = {{"lang", a.lang}, {"cider", a.cider}, {"weights", weights.ToJson()}};
  m.AddInput("cands", a.cands);
  m.AddInput("refs", a.refs);
  if (!a.weights.empty()) m.AddInput("weights", a.weights);
  const double mean = rows.empty() ? 0.0 : total / rows.size();
  m.results = {{"mean_reward", mean}, {"count", rows.size()}};
  m.Write(ManifestPathFor(a.out));
  out << "mean reward " << mean << " over " << rows.size() << " ids\n";
  return kExitOk;
}

policy::TrainConfig MakeTrainConfig(const TrainArgs& a) {
  policy::TrainConfig cfg;
  cfg.batch_size = a.batch_size;
  cfg.label_smoothing = a.label_smoothing;
  cfg.epochs = a.epochs;
  cfg.seed = a.seed;
  cfg.clip_norm = a.clip_norm;
  cfg.max_len = a.max_len;
  cfg.schedule.kind = policy::ParseScheduleKind(a.schedule);
  cfg.schedule.constant_lr = a.lr;
  cfg.schedule.scale = a.lr_scale;
  try {
    cfg.Validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return cfg;
}

int CmdTrain(const TrainArgs& a, std::ostream& out) {
  const Language lang = ParseLanguage(a.lang);
  const policy::TrainConfig cfg = MakeTrainConfig(a);
  const auto refs = LoadReferences(a.corpus);
  const auto features = LoadFeatures(a.features);
  if (features.empty()) throw EmptyCorpusError(a.features + ": no features");

  std::optional<Checkpoint> init;
  if (!a.init.empty()) init = LoadCheckpoint(a.init);

  std::optional<Vocabulary> vocab;
  if (!a.vocab.empty()) {
    vocab = Vocabulary::FromJson(ReadJsonFile(a.vocab));
  } else if (init) {
    vocab = init->vocab;
  } else {
    vocab = Vocabulary::Build(CorpusCaptions(refs, lang), a.min_count);
  }
  if (init && !(init->vocab == *vocab)) {
    throw MismatchedVocabError("--vocab differs from the --init checkpoint");
  }

  RunManifest m;
  m.command = "train";
  m.seed = a.seed;
  m.config = {{"phase", a.phase},        {"lang", a.lang},
              {"epochs", a.epochs},      {"hidden", a.hidden},
              {"batch_size", a.batch_size},
              {"schedule", a.schedule},  {"lr", a.lr},
              {"lr_scale", a.lr_scale},  {"label_smoothing", a.label_smoothing},
              {"clip_norm", a.clip_norm}, {"max_len", a.max_len},
              {"min_count", a.min_count}};
  m.AddInput("corpus", a.corpus);
  m.AddInput("features", a.features);
  if (!a.vocab.empty()) m.AddInput("vocab", a.vocab);
  if (!a.init.empty()) m.AddInput("init", a.init);

  policy::PolicyParams params;
  if (a.phase == "xe") {
    if (init) {
      params = init->params;
    } else {
      if (a.hidden < 1) throw InputError("--hidden must be >= 1");
      params = policy::PolicyParams::RandomUniform(
          vocab->size(), a.hidden, static_cast<int>(features[0].feature.size()),
          a.seed);
    }
    const auto examples = BuildXentExamples(refs, features, *vocab, lang);
    policy::XentResult r = policy::TrainXent(std::move(params), examples, cfg);
    m.results = {{"epoch_loss", r.epoch_loss}};
    for (size_t e = 0; e < r.epoch_loss.size(); ++e) {
      out << "xe epoch " << e + 1 << " loss " << r.epoch_loss[e] << '\n';
    }
    params = std::move(r.params);
  } else if (a.phase == "scst") {
    if (!init) throw InputError("--phase scst requires --init <checkpoint>");
    const reward::HybridWeights weights = LoadWeights(a.weights);
    m.config["weights"] = weights.ToJson();
    if (!a.weights.empty()) m.AddInput("weights", a.weights);
    const auto examples = BuildScstExamples(refs, features, lang);
    std::vector<metrics::RefSet> sets;
    for (const auto& ex : examples) sets.push_back(ex.refs);
    const metrics::IdfTable idf = metrics::IdfTable::Build(sets);
    const reward::RewardContext ctx{&idf, lang};
    policy::ScstResult r =
        policy::TrainScst(init->params, examples, *vocab, weights, ctx, cfg);
    m.results = {{"initial_reward", r.initial_reward},
                 {"epoch_reward", r.epoch_reward},
                 {"epoch_sample_reward", r.epoch_sample_reward}};
    out << "scst initial greedy reward " << r.initial_reward << '\n';
    for (size_t e = 0; e < r.epoch_reward.size(); ++e) {
      out << "scst epoch " << e + 1 << " greedy reward " << r.epoch_reward[e]
          << '\n';
    }
    params = std::move(r.params);
  } else {
    throw InputError("--phase must be xe or scst");
  }

  SaveCheckpoint(Checkpoint{std::move(params), *vocab, lang}, a.out);
  m.Write(ManifestPathFor(a.out));
  return kExitOk;
}

decode::DecodeOptions MakeDecodeOptions(const DecodeArgs& a) {
  if (a.max_len < 1) throw InputError("--max-len must be >= 1");
  if (a.beam < 1) throw InputError("--beam must be >= 1");
  if (!(a.temperature > 0.0)) throw InputError("--temperature must be > 0");
  decode::DecodeOptions opts;
  opts.max_len = a.max_len;
  opts.length_norm = !a.no_length_norm;
  return opts;
}

// Decodes every feature row with `model`; rows keep file order.
std::vector<nlohmann::json> DecodeAll(const decode::StepModel& model,
                                      const Vocabulary& vocab,
                                      const std::vector<FeatureRow>& features,
                                      const DecodeArgs& a, int jobs) {
  const decode::DecodeOptions opts = MakeDecodeOptions(a);
  if (a.mode != "beam" && a.mode != "greedy" && a.mode != "sample") {
    throw InputError("--mode must be beam, greedy or sample");
  }
  std::vector<nlohmann::json> rows(features.size());
  ParallelFor(features.size(), jobs, [&](size_t i) {
    const auto feature = Span(features[i].feature);
    decode::Hypothesis h;
    if (a.mode == "greedy") {
      h = decode::GreedyDecode(model, feature, opts);
    } else if (a.mode == "sample") {
      h = decode::SampleDecode(model, feature,
                               DeriveSeed(a.seed, {static_cast<std::uint64_t>(i)}),
                               opts, a.temperature);
    } else {
      h = decode::BeamSearch(model, feature, a.beam, opts).front();
    }
    if (!std::isfinite(h.logprob) && h.logprob != 0.0) {
      throw NumericalError("non-finite log-probability for id '" +
                           features[i].id + "'");
    }
    rows[i] = {{"id", features[i].id},
               {"caption", JoinTokens(DecodeIds(h.ids, vocab))},
               {"logprob", h.logprob}};
  });
  return rows;
}

nlohmann::json DecodeConfig(const DecodeArgs& a) {
  return {{"mode", a.mode},
          {"beam", a.beam},
          {"max_len", a.max_len},
          {"length_norm", !a.no_length_norm},
          {"temperature", a.temperature}};
}

int CmdDecode(const DecodeArgs& a, const Common& c, std::ostream& out) {
  const Checkpoint ckpt = LoadCheckpoint(a.ckpt);
  const auto features = LoadFeatures(a.features);
  const auto params = std::make_shared<const policy::PolicyParams>(ckpt.params);
  const policy::PolicyStepModel model(params);
  const auto rows = DecodeAll(model, ckpt.vocab, features, a, c.jobs);
  WriteJsonLines(a.out, rows);

  RunManifest m;
  m.command = "decode";
  m.seed = a.seed;
  m.config = DecodeConfig(a);
  m.AddInput("ckpt", a.ckpt);
  m.AddInput("features", a.features);
  m.results = {{"count", rows.size()}};
  m.Write(ManifestPathFor(a.out));
  out << "decoded " << rows.size() << " captions -> " << a.out << '\n';
  return kExitOk;
}

int CmdEnsembleDecode(const DecodeArgs& a, const Common& c, std::ostream& out) {
  const nlohmann::json spec = ReadJsonFile(a.spec);
  if (!spec.is_object() || !spec.contains("members") ||
      !spec.at("members").is_array() || spec.at("members").empty()) {
    throw InputError(a.spec + ": 'members' must be a non-empty array");
  }
  const std::filesystem::path base =
      std::filesystem::path(a.spec).parent_path();
  std::vector<std::string> paths;
  for (const auto& p : spec.at("members")) {
    if (!p.is_string()) throw InputError(a.spec + ": members must be paths");
    std::filesystem::path path(p.get<std::string>());
    if (path.is_relative()) path = base / path;
    paths.push_back(path.string());
  }

  ensemble::EnsembleSpec es;
  std::optional<Vocabulary> vocab;
  for (const auto& path : paths) {
    Checkpoint ckpt = LoadCheckpoint(path);
    if (vocab && !(ckpt.vocab == *vocab)) {
      throw MismatchedVocabError("ensemble member '" + path +
                                 "' uses a different vocabulary");
    }
    if (!vocab) vocab = ckpt.vocab;
    es.members.push_back(std::make_shared<const policy::PolicyStepModel>(
        std::make_shared<const policy::PolicyParams>(std::move(ckpt.params))));
  }

  const nlohmann::json w = spec.value("weights", nlohmann::json("uniform"));
  if (w.is_string() && w.get<std::string>() == "uniform") {
    es.weights = ensemble::UniformWeights(es.members.size());
  } else if (w.is_array()) {
    for (const auto& x : w) {
      if (!x.is_number()) throw InvalidWeightsError("weights must be numbers");
      es.weights.push_back(x.get<double>());
    }
  } else {
    throw InvalidWeightsError("weights must be an array or \"uniform\"");
  }
  std::string fusion = a.fusion;
  if (fusion.empty()) fusion = spec.value("fusion", std::string("arithmetic"));
  es.mode = ensemble::ParseFusionMode(fusion);

  const ensemble::EnsembleModel model(std::move(es));
  const auto features = LoadFeatures(a.features);
  const auto rows = DecodeAll(model, *vocab, features, a, c.jobs);
  WriteJsonLines(a.out, rows);

  RunManifest m;
  m.command = "ensemble-decode";
  m.seed = a.seed;
  m.config = DecodeConfig(a);
  m.config["fusion"] = fusion;
  m.config["weights"] = model.spec().weights;
  m.AddInput("spec", a.spec);
  for (const auto& path : paths) m.AddInput("member", path);
  m.AddInput("features", a.features);
  m.results = {{"count", rows.size()}};
  m.Write(ManifestPathFor(a.out));
  out << "decoded " << rows.size() << " captions with " << paths.size()
      << " members -> " << a.out << '\n';
  return kExitOk;
}

int CmdFixture(const FixtureArgs& a, std::ostream& out) {
  const auto examples = fixture::Make(a.size, a.seed);
  fixture::Write(examples, a.out);
  RunManifest m;
  m.command = "fixture";
  m.seed = a.seed;
  m.config = {{"size", a.size}};
  m.results = {{"feature_size", fixture::kFeatureSize}};
  m.Write((std::filesystem::path(a.out) / "manifest.json").string());
  out << "wrote " << examples.size() << " examples to " << a.out << '\n';
  return kExitOk;
}

void AddDecodeFlags(CLI::App* cmd, DecodeArgs& a) {
  cmd->add_option("--features", a.features, "features JSONL")->required();
  cmd->add_option("--out", a.out, "output captions JSONL")->required();
  cmd->add_option("--beam", a.beam, "beam size")->capture_default_str();
  cmd->add_option("--max-len", a.max_len, "maximum tokens")
      ->capture_default_str();
  cmd->add_flag("--no-length-norm", a.no_length_norm,
                "rank beams by raw log-probability");
  cmd->add_option("--mode", a.mode, "beam, greedy or sample")
      ->capture_default_str();
  cmd->add_option("--seed", a.seed, "seed for --mode sample");
  cmd->add_option("--temperature", a.temperature, "sampling temperature")
      ->capture_default_str();
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"captionforge: caption metrics, hybrid rewards and a toy policy"};
  app.set_version_flag("--version",
                       std::string("captionforge ") + kToolkitVersion +
                           " (checkpoint format " +
                           std::to_string(kCheckpointVersion) + ", manifest " +
                           std::to_string(kManifestVersion) + ")");
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--jobs", common.jobs, "worker threads for score/decode")
      ->envname("CAPTIONFORGE_JOBS")
      ->check(CLI::PositiveNumber);

  VocabArgs va;
  auto* vocab = app.add_subcommand("vocab", "build a vocabulary");
  vocab->add_option("--corpus", va.corpus, "reference JSONL")->required();
  vocab->add_option("--out", va.out, "vocabulary JSON")->required();
  vocab->add_option("--lang", va.lang, "en or zh")->capture_default_str();
  vocab->add_option("--min-count", va.min_count, "frequency threshold")
      ->capture_default_str();

  ScoreArgs sa;
  auto* score = app.add_subcommand("score", "score candidates");
  score->add_option("--cands", sa.cands, "candidate JSONL")->required();
  score->add_option("--refs", sa.refs, "reference JSONL")->required();
  score->add_option("--out", sa.out, "report JSON")->required();
  score->add_option("--lang", sa.lang, "en or zh")->capture_default_str();
  score->add_option("--cider", sa.cider, "d or plain")->capture_default_str();

  RewardArgs ra;
  auto* rew = app.add_subcommand("reward", "hybrid reward per id");
  rew->add_option("--cands", ra.cands, "candidate JSONL")->required();
  rew->add_option("--refs", ra.refs, "reference JSONL")->required();
  rew->add_option("--weights", ra.weights, "weights JSON (default hybrid)");
  rew->add_option("--out", ra.out, "reward JSONL")->required();
  rew->add_option("--lang", ra.lang, "en or zh")->capture_default_str();
  rew->add_option("--cider", ra.cider, "d or plain")->capture_default_str();

  TrainArgs ta;
  auto* train = app.add_subcommand("train", "train the toy policy");
  train->add_option("--phase", ta.phase, "xe or scst")->required();
  train->add_option("--corpus", ta.corpus, "reference JSONL")->required();
  train->add_option("--features", ta.features, "features JSONL")->required();
  train->add_option("--out", ta.out, "checkpoint JSON")->required();
  train->add_option("--weights", ta.weights, "reward weights JSON (scst)");
  train->add_option("--vocab", ta.vocab, "vocabulary JSON");
  train->add_option("--init", ta.init, "starting checkpoint");
  train->add_option("--seed", ta.seed, "random seed")->capture_default_str();
  train->add_option("--lang", ta.lang, "en or zh")->capture_default_str();
  train->add_option("--epochs", ta.epochs, "epochs")->capture_default_str();
  train->add_option("--hidden", ta.hidden, "hidden size")->capture_default_str();
  train->add_option("--batch-size", ta.batch_size, "mini-batch size")
      ->capture_default_str();
  train->add_option("--schedule", ta.schedule, "transformer or constant")
      ->capture_default_str();
  train->add_option("--lr", ta.lr, "rate for the constant schedule")
      ->capture_default_str();
  train->add_option("--lr-scale", ta.lr_scale, "multiplier on every rate")
      ->capture_default_str();
  train->add_option("--label-smoothing", ta.label_smoothing, "epsilon")
      ->capture_default_str();
  train->add_option("--clip-norm", ta.clip_norm, "global gradient norm (scst)")
      ->capture_default_str();
  train->add_option("--max-len", ta.max_len, "rollout / caption length")
      ->capture_default_str();
  train->add_option("--min-count", ta.min_count, "vocabulary threshold")
      ->capture_default_str();

  DecodeArgs da;
  auto* dec = app.add_subcommand("decode", "caption features with a checkpoint");
  dec->add_option("--ckpt", da.ckpt, "checkpoint JSON")->required();
  AddDecodeFlags(dec, da);

  DecodeArgs ea;
  auto* ens = app.add_subcommand("ensemble-decode", "decode with an ensemble");
  ens->add_option("--spec", ea.spec, "ensemble spec JSON")->required();
  ens->add_option("--fusion", ea.fusion, "arithmetic or geometric");
  AddDecodeFlags(ens, ea);

  FixtureArgs fa;
  auto* fix = app.add_subcommand("fixture", "write the synthetic dataset");
  fix->add_option("--out", fa.out, "output directory")->required();
  fix->add_option("--size", fa.size, "examples")->capture_default_str();
  fix->add_option("--seed", fa.seed, "seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*vocab) return CmdVocab(va, out);
    if (*score) return CmdScore(sa, common, out);
    if (*rew) return CmdReward(ra, out);
    if (*train) return CmdTrain(ta, out);
    if (*dec) return CmdDecode(da, common, out);
    if (*ens) return CmdEnsembleDecode(ea, common, out);
    if (*fix) return CmdFixture(fa, out);
  } catch (const NumericalError& e) {
    err << "captionforge: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const InputError& e) {
    err << "captionforge: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "captionforge: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "captionforge: error: " << e.what() << '\n';
    return 1;
  }
  return kExitInput;
}

}  // namespace captionforge::cli
