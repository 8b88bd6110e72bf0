// pipeline.cpp
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
//
// Copyright 2026 The stutterlab authors

#include "stutterlab/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "stutterlab/parallel.hpp"
#include "stutterlab/scoring.hpp"
#include "stutterlab/template_bank.hpp"

namespace stutterlab {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string PathOf(const RunConfig& config, const std::string& name) {
  return (fs::path(config.out_dir) / name).string();
}

void RequireFile(const std::string& path, const char* producer) {
  if (!fs::exists(path)) {
    throw std::runtime_error("missing " + path + "; run the '" +
                             std::string(producer) + "' stage first");
  }
}

std::ofstream OpenOut(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

std::string Fixed(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
  return buffer;
}

void WriteJsonFile(const ordered_json& j, const std::string& path) {
  auto out = OpenOut(path);
  out << j.dump(2) << "\n";
}

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return j;
}

void CheckKeys(const json& j, std::initializer_list<const char*> allowed,
               const char* section) {
  for (const auto& item : j.items()) {
    const std::string& key = item.key();
    const bool known =
        std::any_of(allowed.begin(), allowed.end(),
                    [&key](const char* a) { return key == a; });
    if (!known) {
      throw std::invalid_argument("unknown key '" + key + "' in " + section);
    }
  }
}

// ---------------------------------------------------------------------
// Config (de)serialization.

ordered_json DecoderToJson(const DecoderConfig& c) {
  return ordered_json{{"am_weight", c.am_weight},
                      {"insertion_penalty", c.insertion_penalty},
                      {"beam_width", c.beam_width},
                      {"pruning_threshold", c.pruning_threshold},
                      {"lattice_beam", c.lattice_beam},
                      {"nbest", c.nbest}};
}

DecoderConfig DecoderFromJson(const json& j, const char* section) {
  CheckKeys(j,
            {"am_weight", "insertion_penalty", "beam_width",
             "pruning_threshold", "lattice_beam", "nbest"},
            section);
  DecoderConfig c;
  c.am_weight = j.value("am_weight", c.am_weight);
  c.insertion_penalty = j.value("insertion_penalty", c.insertion_penalty);
  c.beam_width = j.value("beam_width", c.beam_width);
  c.pruning_threshold = j.value("pruning_threshold", c.pruning_threshold);
  c.lattice_beam = j.value("lattice_beam", c.lattice_beam);
  c.nbest = j.value("nbest", c.nbest);
  c.Validate();
  return c;
}

const char* SplitKindName(SplitKind kind) {
  return kind == SplitKind::kHoldout ? "holdout"
                                     : "leave_one_speaker_per_grade_out";
}

SplitKind ParseSplitKind(const std::string& name) {
  if (name == "holdout") return SplitKind::kHoldout;
  if (name == "leave_one_speaker_per_grade_out") {
    return SplitKind::kLeaveOneSpeakerPerGradeOut;
  }
  throw std::invalid_argument("unknown cv kind '" + name + "'");
}

// ---------------------------------------------------------------------
// Corpus decoding shared by the tune and decode stages.

std::vector<EmissionSequence> SimulateCorpusEmissions(
    const std::vector<Utterance>& corpus, const ConfusionModel& model,
    std::uint64_t master_seed, int workers) {
  const std::vector<Token> pool = BuildDistractorPool(corpus);
  std::vector<EmissionSequence> out(corpus.size());
  const std::uint64_t base = MixSeed(master_seed, "am");
  ParallelFor(corpus.size(), workers, [&](std::size_t i) {
    Rng rng(MixSeed(base, corpus[i].id));
    out[i] = SimulateEmissions(corpus[i], model, pool, rng);
  });
  return out;
}

std::vector<std::vector<Hypothesis>> DecodeCorpus(
    const std::vector<EmissionSequence>& emissions, const NGramModel& lm,
    const DecoderConfig& config, int workers) {
  std::vector<std::vector<Hypothesis>> out(emissions.size());
  ParallelFor(emissions.size(), workers, [&](std::size_t i) {
    out[i] = Decode(emissions[i], lm, config);
  });
  return out;
}

// ---------------------------------------------------------------------
// N-best files.

struct NbestFile {
  std::vector<std::string> ids;  // file order
  std::vector<std::vector<Hypothesis>> hypotheses;
  std::unordered_map<std::string, std::size_t> index;
};

NbestFile LoadNbest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  NbestFile file;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " +
                               e.what());
    }
    const std::string id = j.at("utterance_id").get<std::string>();
    const int rank = j.at("rank").get<int>();
    Hypothesis hyp;
    hyp.tokens = j.at("tokens").get<TokenSeq>();
    hyp.am_logscore = j.at("am").get<double>();
    hyp.lm_logscore = j.at("lm").get<double>();
    hyp.combined_score = j.at("combined").get<double>();
    auto [it, inserted] = file.index.emplace(id, file.ids.size());
    if (inserted) {
      file.ids.push_back(id);
      file.hypotheses.emplace_back();
    }
    auto& hyps = file.hypotheses[it->second];
    if (static_cast<int>(hyps.size()) != rank) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": rank out of order for " + id);
    }
    hyps.push_back(std::move(hyp));
  }
  if (file.ids.empty()) throw std::runtime_error(path + " is empty");
  return file;
}

const TokenSeq& OneBest(const NbestFile& file, const std::string& id) {
  auto it = file.index.find(id);
  if (it == file.index.end()) {
    throw std::runtime_error("no decode output for utterance " + id);
  }
  return file.hypotheses[it->second].front().tokens;
}

std::vector<Alignment> OneBestAlignments(const std::vector<Utterance>& corpus,
                                         const NbestFile& file) {
  std::vector<Alignment> out;
  out.reserve(corpus.size());
  for (const auto& utt : corpus) {
    out.push_back(AlignTokens(utt.intended, OneBest(file, utt.id)));
  }
  return out;
}

std::vector<std::string> GradeKeys(const std::vector<Utterance>& corpus) {
  std::vector<std::string> keys;
  keys.reserve(corpus.size());
  for (const auto& utt : corpus) keys.push_back(GradeName(utt.grade));
  return keys;
}

// ---------------------------------------------------------------------
// CSV helpers. Fields never contain commas, so no quoting is needed.

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(current);
  return fields;
}

void WriteRatesRow(std::ofstream& out, const std::string& label,
                   const ErrorRates& rates) {
  out << label << ',' << rates.utterances << ',' << rates.ref_tokens << ','
      << Fixed(rates.iswer, 4) << ',' << Fixed(rates.insertion_rate, 4) << ','
      << Fixed(rates.deletion_rate, 4) << ','
      << Fixed(rates.substitution_rate, 4) << "\n";
}

std::string ConfigCsv(const DecoderConfig& c) {
  std::string row = Fixed(c.am_weight, 6);
  row += ',';
  row += Fixed(c.insertion_penalty, 4);
  row += ',';
  row += std::to_string(c.beam_width);
  row += ',';
  row += Fixed(c.pruning_threshold, 4);
  row += ',';
  row += Fixed(c.lattice_beam, 4);
  row += ',';
  row += std::to_string(c.nbest);
  return row;
}

// ---------------------------------------------------------------------
// JSON fragments shared by the summary artifacts.

ordered_json RatesJson(const ErrorRates& r) {
  return ordered_json{{"iswer", r.iswer},
                      {"insertion_rate", r.insertion_rate},
                      {"deletion_rate", r.deletion_rate},
                      {"substitution_rate", r.substitution_rate},
                      {"utterances", r.utterances},
                      {"ref_tokens", r.ref_tokens}};
}

ordered_json NluMetricsJson(const NluMetrics& m) {
  return ordered_json{{"domain_accuracy", m.domain_accuracy},
                      {"intent_accuracy", m.intent_accuracy},
                      {"garbage_rate", m.garbage_rate},
                      {"n", m.n}};
}

std::unordered_map<std::string, const QueryTemplate*> TemplateIndex() {
  std::unordered_map<std::string, const QueryTemplate*> index;
  for (const auto& t : BuiltinTemplates()) index.emplace(t.id, &t);
  return index;
}

struct NluSlice {
  std::vector<NluPrediction> predictions;
  std::vector<std::string> domains;
  std::vector<std::string> intents;
};

// Classifies the one-best transcripts, sliced per grade plus an "all" row.
std::map<std::string, NluSlice> ClassifyCorpus(
    const std::vector<Utterance>& corpus, const NbestFile& nbest,
    const NluOptions& options) {
  const auto& templates = BuiltinTemplates();
  const auto index = TemplateIndex();
  std::map<std::string, NluSlice> slices;
  for (const auto& utt : corpus) {
    auto it = index.find(utt.template_id);
    if (it == index.end()) {
      throw std::runtime_error("unknown template id " + utt.template_id);
    }
    NluPrediction pred =
        ClassifyTokens(OneBest(nbest, utt.id), templates, options);
    for (const std::string& key : {std::string(GradeName(utt.grade)),
                                   std::string("all"),
                                   "spk:" + utt.speaker_id}) {
      NluSlice& slice = slices[key];
      slice.predictions.push_back(pred);
      slice.domains.push_back(it->second->domain);
      slice.intents.push_back(it->second->intent);
    }
  }
  return slices;
}

NluMetrics EvaluateSlice(const NluSlice& slice) {
  return EvaluateNlu(slice.predictions, slice.domains, slice.intents);
}

}  // namespace

// ---------------------------------------------------------------------
// Run configuration.

RunConfig LoadRunConfig(const std::string& path) {
  const json j = ReadJsonFile(path);
  if (!j.is_object()) throw std::invalid_argument(path + ": not an object");
  CheckKeys(j,
            {"master_seed", "workers", "utterances_per_speaker", "out_dir",
             "lm", "injection", "confusion", "severity", "nlu", "grid", "cv",
             "decoder"},
            "run config");
  RunConfig c;
  c.master_seed = j.value("master_seed", c.master_seed);
  c.workers = j.value("workers", c.workers);
  c.utterances_per_speaker =
      j.value("utterances_per_speaker", c.utterances_per_speaker);
  c.out_dir = j.value("out_dir", c.out_dir);
  if (c.workers < 1) throw std::invalid_argument("workers must be positive");
  if (c.utterances_per_speaker < 1) {
    throw std::invalid_argument("utterances_per_speaker must be positive");
  }
  if (j.contains("lm")) {
    const json& s = j.at("lm");
    CheckKeys(s,
              {"order", "good_turing_cutoff", "min_unseen_count",
               "max_unseen_fraction"},
              "lm");
    c.lm.order = s.value("order", c.lm.order);
    c.lm.good_turing_cutoff =
        s.value("good_turing_cutoff", c.lm.good_turing_cutoff);
    c.lm.min_unseen_count = s.value("min_unseen_count", c.lm.min_unseen_count);
    c.lm.max_unseen_fraction =
        s.value("max_unseen_fraction", c.lm.max_unseen_fraction);
  }
  if (j.contains("injection")) {
    const json& s = j.at("injection");
    CheckKeys(s,
              {"sound_rep_initial_bias", "onset_weight", "max_retries",
               "block_steps_min", "block_steps_max", "prolongation_steps_min",
               "prolongation_steps_max", "filler_tokens_max",
               "sound_reps_max_g1", "sound_reps_max_g2", "sound_reps_max_g3",
               "phrase_len_min", "phrase_len_max", "phrase_reps_max_g1",
               "phrase_reps_max_g2", "phrase_reps_max_g3", "revision_len_min",
               "revision_len_max"},
              "injection");
    InjectionOptions& o = c.injection;
    o.sound_rep_initial_bias =
        s.value("sound_rep_initial_bias", o.sound_rep_initial_bias);
    o.onset_weight = s.value("onset_weight", o.onset_weight);
    o.max_retries = s.value("max_retries", o.max_retries);
    o.block_steps_min = s.value("block_steps_min", o.block_steps_min);
    o.block_steps_max = s.value("block_steps_max", o.block_steps_max);
    o.prolongation_steps_min =
        s.value("prolongation_steps_min", o.prolongation_steps_min);
    o.prolongation_steps_max =
        s.value("prolongation_steps_max", o.prolongation_steps_max);
    o.filler_tokens_max = s.value("filler_tokens_max", o.filler_tokens_max);
    o.sound_reps_max_g1 = s.value("sound_reps_max_g1", o.sound_reps_max_g1);
    o.sound_reps_max_g2 = s.value("sound_reps_max_g2", o.sound_reps_max_g2);
    o.sound_reps_max_g3 = s.value("sound_reps_max_g3", o.sound_reps_max_g3);
    o.phrase_len_min = s.value("phrase_len_min", o.phrase_len_min);
    o.phrase_len_max = s.value("phrase_len_max", o.phrase_len_max);
    o.phrase_reps_max_g1 = s.value("phrase_reps_max_g1", o.phrase_reps_max_g1);
    o.phrase_reps_max_g2 = s.value("phrase_reps_max_g2", o.phrase_reps_max_g2);
    o.phrase_reps_max_g3 = s.value("phrase_reps_max_g3", o.phrase_reps_max_g3);
    o.revision_len_min = s.value("revision_len_min", o.revision_len_min);
    o.revision_len_max = s.value("revision_len_max", o.revision_len_max);
  }
  if (j.contains("confusion")) {
    const json& s = j.at("confusion");
    CheckKeys(s,
              {"correct_logit_mean", "confusion_spread",
               "dysfluent_degradation", "epsilon_boost", "top_k_candidates"},
              "confusion");
    ConfusionModel& m = c.confusion;
    m.correct_logit_mean = s.value("correct_logit_mean", m.correct_logit_mean);
    m.confusion_spread = s.value("confusion_spread", m.confusion_spread);
    m.dysfluent_degradation =
        s.value("dysfluent_degradation", m.dysfluent_degradation);
    m.epsilon_boost = s.value("epsilon_boost", m.epsilon_boost);
    m.top_k_candidates = s.value("top_k_candidates", m.top_k_candidates);
  }
  if (j.contains("severity")) {
    const json& s = j.at("severity");
    CheckKeys(s, {"noise_sigma", "flip_rate"}, "severity");
    c.severity.noise_sigma = s.value("noise_sigma", c.severity.noise_sigma);
    c.severity.flip_rate = s.value("flip_rate", c.severity.flip_rate);
  }
  if (j.contains("nlu")) {
    const json& s = j.at("nlu");
    CheckKeys(s, {"similarity_threshold"}, "nlu");
    c.nlu.similarity_threshold =
        s.value("similarity_threshold", c.nlu.similarity_threshold);
  }
  if (j.contains("grid")) {
    const json& s = j.at("grid");
    CheckKeys(s,
              {"am_weights", "insertion_penalties", "beam_widths",
               "pruning_thresholds", "lattice_beams", "nbests"},
              "grid");
    ParamGrid& g = c.grid;
    g.am_weights = s.value("am_weights", g.am_weights);
    g.insertion_penalties =
        s.value("insertion_penalties", g.insertion_penalties);
    g.beam_widths = s.value("beam_widths", g.beam_widths);
    g.pruning_thresholds =
        s.value("pruning_thresholds", g.pruning_thresholds);
    g.lattice_beams = s.value("lattice_beams", g.lattice_beams);
    g.nbests = s.value("nbests", g.nbests);
  }
  if (j.contains("cv")) {
    const json& s = j.at("cv");
    CheckKeys(s, {"kind", "dev_fraction", "seed"}, "cv");
    if (s.contains("kind")) {
      c.cv.kind = ParseSplitKind(s.at("kind").get<std::string>());
    }
    c.cv.dev_fraction = s.value("dev_fraction", c.cv.dev_fraction);
    c.cv.seed = s.value("seed", c.cv.seed);
  }
  if (j.contains("decoder")) {
    c.decoder = DecoderFromJson(j.at("decoder"), "decoder");
  }
  return c;
}

namespace {

ordered_json RunConfigJson(const RunConfig& config) {
  ordered_json j;
  j["master_seed"] = config.master_seed;
  j["workers"] = config.workers;
  j["utterances_per_speaker"] = config.utterances_per_speaker;
  j["out_dir"] = config.out_dir;
  j["lm"] = ordered_json{
      {"order", config.lm.order},
      {"good_turing_cutoff", config.lm.good_turing_cutoff},
      {"min_unseen_count", config.lm.min_unseen_count},
      {"max_unseen_fraction", config.lm.max_unseen_fraction}};
  const InjectionOptions& o = config.injection;
  j["injection"] = ordered_json{
      {"sound_rep_initial_bias", o.sound_rep_initial_bias},
      {"onset_weight", o.onset_weight},
      {"max_retries", o.max_retries},
      {"block_steps_min", o.block_steps_min},
      {"block_steps_max", o.block_steps_max},
      {"prolongation_steps_min", o.prolongation_steps_min},
      {"prolongation_steps_max", o.prolongation_steps_max},
      {"filler_tokens_max", o.filler_tokens_max},
      {"sound_reps_max_g1", o.sound_reps_max_g1},
      {"sound_reps_max_g2", o.sound_reps_max_g2},
      {"sound_reps_max_g3", o.sound_reps_max_g3},
      {"phrase_len_min", o.phrase_len_min},
      {"phrase_len_max", o.phrase_len_max},
      {"phrase_reps_max_g1", o.phrase_reps_max_g1},
      {"phrase_reps_max_g2", o.phrase_reps_max_g2},
      {"phrase_reps_max_g3", o.phrase_reps_max_g3},
      {"revision_len_min", o.revision_len_min},
      {"revision_len_max", o.revision_len_max}};
  const ConfusionModel& m = config.confusion;
  j["confusion"] = ordered_json{
      {"correct_logit_mean", m.correct_logit_mean},
      {"confusion_spread", m.confusion_spread},
      {"dysfluent_degradation", m.dysfluent_degradation},
      {"epsilon_boost", m.epsilon_boost},
      {"top_k_candidates", m.top_k_candidates}};
  j["severity"] = ordered_json{{"noise_sigma", config.severity.noise_sigma},
                               {"flip_rate", config.severity.flip_rate}};
  j["nlu"] =
      ordered_json{{"similarity_threshold", config.nlu.similarity_threshold}};
  j["grid"] = ordered_json{
      {"am_weights", config.grid.am_weights},
      {"insertion_penalties", config.grid.insertion_penalties},
      {"beam_widths", config.grid.beam_widths},
      {"pruning_thresholds", config.grid.pruning_thresholds},
      {"lattice_beams", config.grid.lattice_beams},
      {"nbests", config.grid.nbests}};
  j["cv"] = ordered_json{{"kind", SplitKindName(config.cv.kind)},
                         {"dev_fraction", config.cv.dev_fraction},
                         {"seed", config.cv.seed}};
  j["decoder"] = DecoderToJson(config.decoder);
  return j;
}

}  // namespace

void SaveRunConfig(const RunConfig& config, const std::string& path) {
  WriteJsonFile(RunConfigJson(config), path);
}

const char* DecodePassName(DecodePass pass) {
  switch (pass) {
    case DecodePass::kDefault:
      return "default";
    case DecodePass::kTuned:
      return "tuned";
    case DecodePass::kFluent:
      return "fluent";
  }
  throw std::invalid_argument("bad decode pass");
}

// ---------------------------------------------------------------------
// Stages.

void StageGen(const RunConfig& config) {
  const auto speakers = DefaultSpeakers(config.master_seed);
  CorpusOptions options;
  options.utterances_per_speaker = config.utterances_per_speaker;
  options.master_seed = config.master_seed;
  options.injection = config.injection;
  const auto dysfluent =
      GenerateCorpus(BuiltinTemplates(), speakers, options);
  options.fluent = true;
  const auto fluent = GenerateCorpus(BuiltinTemplates(), speakers, options);
  fs::create_directories(config.out_dir);
  SaveCorpus(dysfluent, PathOf(config, "corpus_dysfluent.jsonl"));
  SaveCorpus(fluent, PathOf(config, "corpus_fluent.jsonl"));
}

void StageTrainLm(const RunConfig& config) {
  const std::string corpus_path = PathOf(config, "corpus_dysfluent.jsonl");
  RequireFile(corpus_path, "gen");
  const auto corpus = LoadCorpus(corpus_path);
  std::vector<TokenSeq> transcripts;
  transcripts.reserve(corpus.size());
  for (const auto& utt : corpus) transcripts.push_back(utt.intended);
  const NGramModel lm = NGramModel::Train(transcripts, config.lm);
  lm.Save(PathOf(config, "lm.json"));
}

void StageTune(const RunConfig& config) {
  const std::string corpus_path = PathOf(config, "corpus_dysfluent.jsonl");
  const std::string lm_path = PathOf(config, "lm.json");
  RequireFile(corpus_path, "gen");
  RequireFile(lm_path, "train-lm");
  const auto corpus = LoadCorpus(corpus_path);
  const NGramModel lm = NGramModel::Load(lm_path);
  const auto emissions = SimulateCorpusEmissions(
      corpus, config.confusion, config.master_seed, config.workers);
  const TuneResult result =
      CrossValidate(corpus, emissions, config.grid, config.cv, lm,
                    config.decoder, config.workers);

  auto csv = OpenOut(PathOf(config, "tune.csv"));
  csv << "am_weight,insertion_penalty,beam_width,pruning_threshold,"
         "lattice_beam,nbest,dev_iswer\n";
  for (const auto& point : result.grid) {
    csv << ConfigCsv(point.config) << ',' << Fixed(point.dev_iswer, 6)
        << "\n";
  }

  ordered_json summary;
  summary["scheme"] = ordered_json{{"kind", SplitKindName(config.cv.kind)},
                                   {"dev_fraction", config.cv.dev_fraction},
                                   {"seed", config.cv.seed}};
  summary["grid_size"] = result.grid.size();
  summary["num_folds"] = result.folds.size();
  summary["best"] = DecoderToJson(result.best);
  summary["dev_iswer"] = result.dev_iswer;
  summary["test_iswer"] = result.test_iswer;
  summary["default_test_iswer"] = result.default_test_iswer;
  summary["relative_improvement_test"] = result.relative_improvement;
  summary["reference_relative_improvement"] = 24.42;
  ordered_json folds = ordered_json::array();
  for (const auto& fold : result.folds) {
    folds.push_back(ordered_json{
        {"best", DecoderToJson(fold.best)},
        {"dev_iswer", fold.dev_iswer},
        {"test_iswer", fold.test_iswer},
        {"default_test_iswer", fold.default_test_iswer}});
  }
  summary["folds"] = folds;
  WriteJsonFile(summary, PathOf(config, "tune_summary.json"));
}

void StageDecode(const RunConfig& config, DecodePass pass) {
  const std::string corpus_path =
      pass == DecodePass::kFluent ? PathOf(config, "corpus_fluent.jsonl")
                                  : PathOf(config, "corpus_dysfluent.jsonl");
  const std::string lm_path = PathOf(config, "lm.json");
  RequireFile(corpus_path, "gen");
  RequireFile(lm_path, "train-lm");
  DecoderConfig decoder = config.decoder;
  if (pass == DecodePass::kTuned) {
    const std::string tune_path = PathOf(config, "tune_summary.json");
    RequireFile(tune_path, "tune");
    decoder = DecoderFromJson(ReadJsonFile(tune_path).at("best"),
                              "tune_summary best");
  }
  const auto corpus = LoadCorpus(corpus_path);
  const NGramModel lm = NGramModel::Load(lm_path);
  const auto emissions = SimulateCorpusEmissions(
      corpus, config.confusion, config.master_seed, config.workers);
  const auto nbests = DecodeCorpus(emissions, lm, decoder, config.workers);

  const std::string out_path =
      PathOf(config, std::string("nbest_") + DecodePassName(pass) + ".jsonl");
  auto out = OpenOut(out_path);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t rank = 0; rank < nbests[i].size(); ++rank) {
      const Hypothesis& hyp = nbests[i][rank];
      ordered_json line;
      line["utterance_id"] = corpus[i].id;
      line["rank"] = rank;
      line["tokens"] = hyp.tokens;
      line["am"] = hyp.am_logscore;
      line["lm"] = hyp.lm_logscore;
      line["combined"] = hyp.combined_score;
      out << line.dump() << "\n";
    }
  }
}

void StageSeverity(const RunConfig& config) {
  const std::string corpus_path = PathOf(config, "corpus_dysfluent.jsonl");
  const std::string nbest_path = PathOf(config, "nbest_default.jsonl");
  RequireFile(corpus_path, "gen");
  RequireFile(nbest_path, "decode");
  const auto corpus = LoadCorpus(corpus_path);
  const auto nbest = LoadNbest(nbest_path);
  const auto alignments = OneBestAlignments(corpus, nbest);

  const std::uint64_t base = MixSeed(config.master_seed, "sev");
  std::vector<SeverityRecord> records;
  records.reserve(corpus.size());
  auto csv = OpenOut(PathOf(config, "severity.csv"));
  csv << "utterance_id,score,bucket\n";
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Utterance& utt = corpus[i];
    Rng rng(MixSeed(base, utt.id));
    const auto probs = SimulateFramePredictions(utt, config.severity, rng);
    const double score = SeverityScore(probs);
    const SeverityBucket bucket = BucketOf(score);
    csv << utt.id << ',' << Fixed(score, 4) << ',' << BucketName(bucket)
        << "\n";
    records.push_back({score, bucket, utt.grade, alignments[i]});
  }
  const SeverityCorrelations corr = CorrelationAnalysis(records);

  ordered_json summary;
  summary["n"] = corr.n;
  summary["bucket_iswer"] = corr.bucket_iswer;
  summary["grade_iswer"] = corr.grade_iswer;
  summary["bucket_r"] = corr.bucket_r;
  // Three bucket points leave one degree of freedom, so no p-value is
  // reported at the bucket level.
  summary["bucket_r_note"] =
      "r over 3 bucket means; too few points for a p-value";
  summary["utterance_r"] = corr.utterance_r;
  summary["utterance_p"] = corr.utterance_p;
  WriteJsonFile(summary, PathOf(config, "severity_summary.json"));
}

void StageScore(const RunConfig& config) {
  const std::string dys_path = PathOf(config, "corpus_dysfluent.jsonl");
  const std::string flu_path = PathOf(config, "corpus_fluent.jsonl");
  RequireFile(dys_path, "gen");
  RequireFile(flu_path, "gen");
  const std::string nbest_default_path =
      PathOf(config, "nbest_default.jsonl");
  const std::string nbest_tuned_path = PathOf(config, "nbest_tuned.jsonl");
  const std::string nbest_fluent_path = PathOf(config, "nbest_fluent.jsonl");
  RequireFile(nbest_default_path, "decode");
  RequireFile(nbest_tuned_path, "decode");
  RequireFile(nbest_fluent_path, "decode");
  const std::string severity_path = PathOf(config, "severity.csv");
  RequireFile(severity_path, "severity");
  const std::string tune_csv_path = PathOf(config, "tune.csv");
  const std::string tune_summary_path = PathOf(config, "tune_summary.json");
  RequireFile(tune_csv_path, "tune");
  RequireFile(tune_summary_path, "tune");

  const auto dysfluent = LoadCorpus(dys_path);
  const auto fluent = LoadCorpus(flu_path);
  const auto align_default =
      OneBestAlignments(dysfluent, LoadNbest(nbest_default_path));
  const auto align_tuned =
      OneBestAlignments(dysfluent, LoadNbest(nbest_tuned_path));
  const auto align_fluent =
      OneBestAlignments(fluent, LoadNbest(nbest_fluent_path));

  // Fluent versus dysfluent speech under the stock decoder.
  {
    auto out = OpenOut(PathOf(config, "table2.csv"));
    out << "condition,n_utt,n_ref,iswer,ins,del,sub\n";
    WriteRatesRow(out, "fluent", PooledErrorRates(align_fluent));
    WriteRatesRow(out, "dysfluent", PooledErrorRates(align_default));
  }

  // Dysfluent speech by grade.
  {
    const auto by_grade =
        GroupedErrorRates(GradeKeys(dysfluent), align_default);
    auto out = OpenOut(PathOf(config, "table3.csv"));
    out << "grade,n_utt,n_ref,iswer,ins,del,sub\n";
    for (const auto& [grade, rates] : by_grade) {
      WriteRatesRow(out, grade, rates);
    }
  }

  // Dysfluent speech by severity bucket.
  {
    std::unordered_map<std::string, std::string> bucket_of;
    std::ifstream in(severity_path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + severity_path);
    std::string line;
    if (!std::getline(in, line) || line != "utterance_id,score,bucket") {
      throw std::runtime_error(severity_path + ": bad header");
    }
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto fields = SplitCsv(line);
      if (fields.size() != 3) {
        throw std::runtime_error(severity_path + ": bad row " + line);
      }
      bucket_of[fields[0]] = fields[2];
    }
    std::vector<std::string> keys;
    keys.reserve(dysfluent.size());
    for (const auto& utt : dysfluent) {
      auto it = bucket_of.find(utt.id);
      if (it == bucket_of.end()) {
        throw std::runtime_error("no severity row for utterance " + utt.id);
      }
      keys.push_back(it->second);
    }
    const auto by_bucket = GroupedErrorRates(keys, align_default);
    auto out = OpenOut(PathOf(config, "table4.csv"));
    out << "bucket,n_utt,n_ref,iswer,ins,del,sub\n";
    for (const char* bucket : {"Mild", "Moderate", "Severe"}) {
      auto it = by_bucket.find(bucket);
      if (it != by_bucket.end()) WriteRatesRow(out, bucket, it->second);
    }
    auto fig = OpenOut(PathOf(config, "fig_error_by_severity.csv"));
    fig << "bucket,iswer,ins,del,sub\n";
    for (const char* bucket : {"Mild", "Moderate", "Severe"}) {
      auto it = by_bucket.find(bucket);
      if (it == by_bucket.end()) continue;
      const ErrorRates& r = it->second;
      fig << bucket << ',' << Fixed(r.iswer, 4) << ','
          << Fixed(r.insertion_rate, 4) << ',' << Fixed(r.deletion_rate, 4)
          << ',' << Fixed(r.substitution_rate, 4) << "\n";
    }
  }

  // The tuning grid plus the two full-corpus operating points.
  {
    const DecoderConfig tuned = DecoderFromJson(
        ReadJsonFile(tune_summary_path).at("best"), "tune_summary best");
    std::ifstream in(tune_csv_path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + tune_csv_path);
    auto out = OpenOut(PathOf(config, "table5.csv"));
    out << "scope,am_weight,insertion_penalty,beam_width,pruning_threshold,"
           "lattice_beam,nbest,iswer\n";
    std::string line;
    if (!std::getline(in, line)) {
      throw std::runtime_error(tune_csv_path + ": empty");
    }
    while (std::getline(in, line)) {
      if (!line.empty()) out << "dev," << line << "\n";
    }
    out << "corpus_default," << ConfigCsv(config.decoder) << ','
        << Fixed(PooledErrorRates(align_default).iswer, 6) << "\n";
    out << "corpus_tuned," << ConfigCsv(tuned) << ','
        << Fixed(PooledErrorRates(align_tuned).iswer, 6) << "\n";
  }

  // Per grade default versus tuned, for the bar chart.
  {
    const auto by_grade_default =
        GroupedErrorRates(GradeKeys(dysfluent), align_default);
    const auto by_grade_tuned =
        GroupedErrorRates(GradeKeys(dysfluent), align_tuned);
    auto out = OpenOut(PathOf(config, "fig_default_vs_tuned.csv"));
    out << "grade,default_iswer,tuned_iswer\n";
    for (const auto& [grade, rates] : by_grade_default) {
      out << grade << ',' << Fixed(rates.iswer, 4) << ','
          << Fixed(by_grade_tuned.at(grade).iswer, 4) << "\n";
    }
  }
}

void StageNlu(const RunConfig& config) {
  const std::string dys_path = PathOf(config, "corpus_dysfluent.jsonl");
  RequireFile(dys_path, "gen");
  const std::string nbest_default_path =
      PathOf(config, "nbest_default.jsonl");
  const std::string nbest_tuned_path = PathOf(config, "nbest_tuned.jsonl");
  RequireFile(nbest_default_path, "decode");
  RequireFile(nbest_tuned_path, "decode");
  const auto corpus = LoadCorpus(dys_path);
  const auto slices_default =
      ClassifyCorpus(corpus, LoadNbest(nbest_default_path), config.nlu);
  const auto slices_tuned =
      ClassifyCorpus(corpus, LoadNbest(nbest_tuned_path), config.nlu);

  auto out = OpenOut(PathOf(config, "table6.csv"));
  out << "grade,model,n,domain_accuracy,intent_accuracy,garbage_rate\n";
  for (const char* grade : {"G1", "G2", "G3", "all"}) {
    for (const char* model : {"default", "tuned"}) {
      const auto& slices =
          std::string(model) == "default" ? slices_default : slices_tuned;
      auto it = slices.find(grade);
      if (it == slices.end()) continue;
      const NluMetrics m = EvaluateSlice(it->second);
      out << grade << ',' << model << ',' << m.n << ','
          << Fixed(m.domain_accuracy, 4) << ',' << Fixed(m.intent_accuracy, 4)
          << ',' << Fixed(m.garbage_rate, 4) << "\n";
    }
  }

  // Summary rows carry relative deltas, 100 * (tuned - default) / default.
  // Micro pools utterances; macro averages per-speaker metrics first.
  // A zero baseline leaves the cell empty.
  const auto rel = [](double base, double value) {
    return base == 0.0 ? std::string()
                       : Fixed(100.0 * (value - base) / base, 4);
  };
  const NluMetrics micro_default = EvaluateSlice(slices_default.at("all"));
  const NluMetrics micro_tuned = EvaluateSlice(slices_tuned.at("all"));
  double macro_default[3] = {0.0, 0.0, 0.0};
  double macro_tuned[3] = {0.0, 0.0, 0.0};
  int speakers = 0;
  for (const auto& [key, slice] : slices_default) {
    if (!key.starts_with("spk:")) continue;
    const NluMetrics d = EvaluateSlice(slice);
    const NluMetrics t = EvaluateSlice(slices_tuned.at(key));
    macro_default[0] += d.domain_accuracy;
    macro_default[1] += d.intent_accuracy;
    macro_default[2] += d.garbage_rate;
    macro_tuned[0] += t.domain_accuracy;
    macro_tuned[1] += t.intent_accuracy;
    macro_tuned[2] += t.garbage_rate;
    ++speakers;
  }
  for (double& v : macro_default) v /= speakers;
  for (double& v : macro_tuned) v /= speakers;
  out << "summary,relative_micro," << micro_default.n << ','
      << rel(micro_default.domain_accuracy, micro_tuned.domain_accuracy) << ','
      << rel(micro_default.intent_accuracy, micro_tuned.intent_accuracy) << ','
      << rel(micro_default.garbage_rate, micro_tuned.garbage_rate) << "\n";
  out << "summary,relative_macro," << speakers << ','
      << rel(macro_default[0], macro_tuned[0]) << ','
      << rel(macro_default[1], macro_tuned[1]) << ','
      << rel(macro_default[2], macro_tuned[2]) << "\n";
}

void StageSummary(const RunConfig& config) {
  const std::string dys_path = PathOf(config, "corpus_dysfluent.jsonl");
  const std::string flu_path = PathOf(config, "corpus_fluent.jsonl");
  const std::string lm_path = PathOf(config, "lm.json");
  RequireFile(dys_path, "gen");
  RequireFile(flu_path, "gen");
  RequireFile(lm_path, "train-lm");
  const std::string nbest_default_path =
      PathOf(config, "nbest_default.jsonl");
  const std::string nbest_tuned_path = PathOf(config, "nbest_tuned.jsonl");
  const std::string nbest_fluent_path = PathOf(config, "nbest_fluent.jsonl");
  RequireFile(nbest_default_path, "decode");
  RequireFile(nbest_tuned_path, "decode");
  RequireFile(nbest_fluent_path, "decode");
  const std::string tune_summary_path = PathOf(config, "tune_summary.json");
  const std::string severity_summary_path =
      PathOf(config, "severity_summary.json");
  RequireFile(tune_summary_path, "tune");
  RequireFile(severity_summary_path, "severity");

  const auto dysfluent = LoadCorpus(dys_path);
  const auto fluent = LoadCorpus(flu_path);
  const NGramModel lm = NGramModel::Load(lm_path);
  const auto nbest_default = LoadNbest(nbest_default_path);
  const auto nbest_tuned = LoadNbest(nbest_tuned_path);
  const auto align_default = OneBestAlignments(dysfluent, nbest_default);
  const auto align_tuned = OneBestAlignments(dysfluent, nbest_tuned);
  const auto align_fluent =
      OneBestAlignments(fluent, LoadNbest(nbest_fluent_path));
  const json tune_summary = ReadJsonFile(tune_summary_path);
  const json severity_summary = ReadJsonFile(severity_summary_path);

  std::set<std::string> speakers;
  for (const auto& utt : dysfluent) speakers.insert(utt.speaker_id);

  std::vector<TokenSeq> in_domain;
  in_domain.reserve(dysfluent.size());
  for (const auto& utt : dysfluent) in_domain.push_back(utt.intended);

  const ErrorRates rates_fluent = PooledErrorRates(align_fluent);
  const ErrorRates rates_default = PooledErrorRates(align_default);
  const ErrorRates rates_tuned = PooledErrorRates(align_tuned);

  ordered_json summary;
  summary["master_seed"] = config.master_seed;
  summary["speakers"] = speakers.size();
  summary["utterances"] = dysfluent.size();
  summary["templates"] = BuiltinTemplates().size();
  summary["perplexity"] = ordered_json{
      {"in_domain", lm.Perplexity(in_domain)},
      {"out_of_domain", lm.Perplexity(BuiltinOutOfDomainSentences())}};
  summary["fluent"] = RatesJson(rates_fluent);
  summary["dysfluent_default"] = RatesJson(rates_default);
  summary["dysfluent_tuned"] = RatesJson(rates_tuned);
  summary["relative_improvement"] =
      RelativeImprovement(rates_default.iswer, rates_tuned.iswer);

  const auto keys = GradeKeys(dysfluent);
  ordered_json by_grade_default;
  for (const auto& [grade, rates] : GroupedErrorRates(keys, align_default)) {
    by_grade_default[grade] = RatesJson(rates);
  }
  summary["by_grade_default"] = by_grade_default;
  ordered_json by_grade_tuned;
  for (const auto& [grade, rates] : GroupedErrorRates(keys, align_tuned)) {
    by_grade_tuned[grade] = RatesJson(rates);
  }
  summary["by_grade_tuned"] = by_grade_tuned;

  summary["tuning"] = ordered_json{
      {"best", tune_summary.at("best")},
      {"dev_iswer", tune_summary.at("dev_iswer")},
      {"test_iswer", tune_summary.at("test_iswer")},
      {"default_test_iswer", tune_summary.at("default_test_iswer")},
      {"relative_improvement_test",
       tune_summary.at("relative_improvement_test")}};
  summary["severity"] = ordered_json{
      {"bucket_r", severity_summary.at("bucket_r")},
      {"utterance_r", severity_summary.at("utterance_r")},
      {"utterance_p", severity_summary.at("utterance_p")},
      {"bucket_iswer", severity_summary.at("bucket_iswer")},
      {"grade_iswer", severity_summary.at("grade_iswer")}};

  const auto WordCountJson = [](const WordCountStats& stats) {
    ordered_json j;
    j["mean_len_correct"] = stats.mean_len_correct
                                ? ordered_json(*stats.mean_len_correct)
                                : ordered_json(nullptr);
    j["mean_len_incorrect"] = stats.mean_len_incorrect
                                  ? ordered_json(*stats.mean_len_incorrect)
                                  : ordered_json(nullptr);
    j["num_correct"] = stats.num_correct;
    j["num_incorrect"] = stats.num_incorrect;
    return j;
  };
  summary["word_counts"] =
      ordered_json{{"default", WordCountJson(WordCountAnalysis(align_default))},
                   {"tuned", WordCountJson(WordCountAnalysis(align_tuned))}};

  const auto slices_default =
      ClassifyCorpus(dysfluent, nbest_default, config.nlu);
  const auto slices_tuned = ClassifyCorpus(dysfluent, nbest_tuned, config.nlu);
  const NluMetrics g3_default = EvaluateSlice(slices_default.at("G3"));
  const NluMetrics g3_tuned = EvaluateSlice(slices_tuned.at("G3"));
  const NluComparison g3 = CompareNlu(g3_default, g3_tuned);
  summary["nlu"] = ordered_json{
      {"overall_default", NluMetricsJson(EvaluateSlice(slices_default.at("all")))},
      {"overall_tuned", NluMetricsJson(EvaluateSlice(slices_tuned.at("all")))},
      {"g3_default", NluMetricsJson(g3_default)},
      {"g3_tuned", NluMetricsJson(g3_tuned)},
      {"g3_intent_accuracy_gain", g3.intent_accuracy_gain},
      {"g3_garbage_rate_change", g3.garbage_rate_change}};

  // Echo the free parameters next to the numbers they produced. Workers and
  // out_dir do not influence artifact bytes and are dropped.
  ordered_json echoed = RunConfigJson(config);
  echoed.erase("workers");
  echoed.erase("out_dir");
  summary["config"] = echoed;

  WriteJsonFile(summary, PathOf(config, "summary.json"));
}

void RunPipeline(const RunConfig& config) {
  StageGen(config);
  StageTrainLm(config);
  StageTune(config);
  StageDecode(config, DecodePass::kDefault);
  StageDecode(config, DecodePass::kTuned);
  StageDecode(config, DecodePass::kFluent);
  StageSeverity(config);
  StageScore(config);
  StageNlu(config);
  StageSummary(config);
}

}  // namespace stutterlab
