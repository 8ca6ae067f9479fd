// Copyright 2026 The RUSS Authors.
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

#include "russ/cli.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "russ/eval.h"
#include "russ/lm.h"
#include "russ/search.h"

namespace russ {

using json = nlohmann::json;

namespace {

std::vector<EventRecord> ReadRecords(const RunConfig &config,
                                     std::ostream &err, int *bad = nullptr) {
  std::vector<std::string> diagnostics;
  std::vector<EventRecord> records = LoadRecords(config.records, &diagnostics);
  for (const std::string &d : diagnostics) {
    err << config.records << ": " << d << "\n";
  }
  if (bad != nullptr) *bad = static_cast<int>(diagnostics.size());
  if (!config.entities.empty()) {
    EntityDictionary dict = LoadEntityDictionary(config.entities);
    for (EventRecord &record : records) {
      record.entities = DetectEntities(record.tokens, dict);
    }
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const EventRecord &a, const EventRecord &b) {
                     return a.id < b.id;
                   });
  return records;
}

std::ofstream OpenOutput(const std::string &path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

json ScoreJson(const ScoreBreakdown &s) {
  return {{"slor", s.slor},         {"nu_lm", s.nu_lm},
          {"nu_entity", s.nu_entity}, {"nu_pred", s.nu_pred},
          {"nu_rc", s.nu_rc},       {"combined", s.combined}};
}

json CandidateJson(const Candidate &c) {
  return {{"op", std::string(EditOpName(c.op))},
          {"position", c.position.path},
          {"text", JoinText(c.tokens)}};
}

json ResultJson(const SimplificationResult &r, bool verbose) {
  json obj;
  obj["id"] = r.original.id;
  obj["original"] = JoinText(r.original.tokens);
  obj["simplified"] = JoinText(r.final_tokens);
  obj["iterations"] = r.iterations;
  json trace = json::array();
  for (const TraceStep &step : r.trace) {
    json item = CandidateJson(step.candidate);
    item["iteration"] = step.iteration;
    item["score"] = ScoreJson(step.score);
    trace.push_back(std::move(item));
  }
  obj["trace"] = std::move(trace);
  if (verbose) {
    json iterations = json::array();
    for (const auto &round : r.candidates) {
      json list = json::array();
      for (const ScoredCandidate &sc : round) {
        json item = CandidateJson(sc.candidate);
        item["score"] = ScoreJson(sc.score);
        list.push_back(std::move(item));
      }
      iterations.push_back(std::move(list));
    }
    obj["candidates"] = std::move(iterations);
  }
  return obj;
}

}  // namespace

std::unique_ptr<MrcBackend> MakeBackend(const RunConfig &config) {
  switch (config.backend) {
    case BackendKind::kHeuristic: {
      if (config.entities.empty() || config.predicates.empty()) {
        throw ConfigError(
            "heuristic backend needs --entities and --predicates");
      }
      return std::make_unique<HeuristicOracle>(
          LoadEntityDictionary(config.entities),
          LoadPredicateTable(config.predicates).All());
    }
    case BackendKind::kFixture:
      if (config.fixture.empty()) {
        throw ConfigError("fixture backend needs --fixture");
      }
      return std::make_unique<FixtureOracle>(FixtureOracle::Load(config.fixture));
    case BackendKind::kHttp:
      if (config.http.endpoint.empty()) {
        throw ConfigError("http backend needs --endpoint");
      }
      return std::make_unique<HttpMrcClient>(config.http);
  }
  throw ConfigError("unknown backend");
}

int CmdGenQa(const RunConfig &config, std::ostream &out, std::ostream &err) {
  int bad = 0;
  std::vector<EventRecord> records = ReadRecords(config, err, &bad);
  std::ofstream file;
  std::ostream *sink = &out;
  if (!config.out.empty()) {
    file = OpenOutput(config.out);
    sink = &file;
  }
  std::map<std::string, int> per_type;
  int missing = 0;
  int lines = 0;
  for (const EventRecord &record : records) {
    int record_missing = 0;
    for (const QAPair &qa : GenerateQuestions(record, &record_missing)) {
      *sink << json{{"id", record.id},
                    {"role", qa.role},
                    {"question", qa.question},
                    {"gold_answer", qa.gold_answer}}
                   .dump()
            << "\n";
      ++lines;
    }
    if (record_missing > 0) {
      err << "warning: record " << record.id << " lacks " << record_missing
          << " gold answer(s)\n";
    }
    missing += record_missing;
    ++per_type[record.event_type];
  }
  // Counts go to stdout unless stdout already carries the QA lines.
  std::ostream &summary = config.out.empty() ? err : out;
  for (const auto &[type, count] : per_type) {
    summary << type << "\t" << count << "\n";
  }
  summary << "records\t" << records.size() << "\nquestions\t" << lines << "\n";
  if (missing > 0) err << "warning: " << missing << " missing gold answer(s)\n";
  return bad > 0 ? kExitError : kExitOk;
}

int CmdTrainLm(const RunConfig &config, std::ostream &out, std::ostream &err) {
  if (config.lm.empty()) throw ConfigError("train-lm needs --lm (output path)");
  std::vector<EventRecord> records = ReadRecords(config, err);
  std::vector<Tokens> corpus;
  corpus.reserve(records.size());
  for (const EventRecord &record : records) corpus.push_back(record.tokens);
  LmOptions options;
  options.order = config.lm_order;
  options.pos_mix = config.pos_mix;
  NgramModel model = NgramModel::Train(corpus, options);
  model.Save(config.lm);
  out << "trained order-" << model.order() << " model on " << corpus.size()
      << " sentences, vocabulary " << model.vocabulary().size() << "\n";
  return kExitOk;
}

int CmdSimplify(const RunConfig &config, std::ostream &out, std::ostream &err) {
  if (config.lm.empty()) throw ConfigError("simplify needs --lm");
  if (config.predicates.empty()) throw ConfigError("simplify needs --predicates");
  config.score.Validate();
  std::vector<EventRecord> records = ReadRecords(config, err);
  PredicateTable predicates = LoadPredicateTable(config.predicates);
  NgramModel model = NgramModel::Load(config.lm);
  std::unique_ptr<MrcBackend> backend = MakeBackend(config);

  SearchOptions options;
  options.keep_candidates = config.verbose;
  std::vector<RecordOutcome> outcomes = SimplifyAll(
      records, *backend, model, config.score, predicates, options, config.workers);

  std::ofstream file;
  std::ostream *sink = &out;
  if (!config.out.empty()) {
    file = OpenOutput(config.out);
    sink = &file;
  }
  int failed = 0;
  for (size_t i = 0; i < outcomes.size(); ++i) {
    if (!outcomes[i].result) {
      ++failed;
      err << "record " << records[i].id << " dropped: " << outcomes[i].error
          << "\n";
      continue;
    }
    *sink << ResultJson(*outcomes[i].result, config.verbose).dump() << "\n";
  }
  err << "simplified " << outcomes.size() - failed << " of " << outcomes.size()
      << " record(s), dropped " << failed << "\n";
  if (!outcomes.empty() && failed == static_cast<int>(outcomes.size())) {
    return kExitAllFailed;
  }
  return kExitOk;
}

int CmdEval(const RunConfig &config, std::ostream &out, std::ostream &err) {
  if (config.simplified.empty()) throw ConfigError("eval needs --simplified");
  std::vector<EventRecord> records = ReadRecords(config, err);
  std::map<std::string, const EventRecord *> by_id;
  for (const EventRecord &record : records) by_id[record.id] = &record;

  std::ifstream in(config.simplified);
  if (!in) throw IoError("cannot read " + config.simplified);
  std::vector<EvalItem> items;
  std::set<std::string> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (SplitWhitespace(line).empty()) continue;
    json obj;
    std::string id, text;
    try {
      obj = json::parse(line);
      id = obj.at("id").get<std::string>();
      text = obj.at("simplified").get<std::string>();
    } catch (const json::exception &e) {
      err << config.simplified << ": line " << line_no << ": " << e.what()
          << "\n";
      return kExitError;
    }
    auto it = by_id.find(id);
    if (it == by_id.end() || !seen.insert(id).second) {
      err << config.simplified << ": line " << line_no << ": record id '" << id
          << "' does not match the records file\n";
      return kExitError;
    }
    Tokens simplified;
    for (std::string &word : SplitWhitespace(text)) {
      simplified.push_back({std::move(word), "", "",
                            static_cast<int>(simplified.size())});
    }
    items.push_back({*it->second, std::move(simplified)});
  }

  std::unique_ptr<MrcBackend> backend = MakeBackend(config);
  EvalReport report = Evaluate(items, *backend);
  if (!config.out.empty()) {
    std::ofstream file = OpenOutput(config.out);
    file << report.ToJson() << "\n";
  } else {
    out << report.ToJson() << "\n";
  }
  out << report.ToTable();
  return kExitOk;
}

int RunCli(int argc, const char *const *argv, std::ostream &out,
           std::ostream &err) {
  CLI::App app{"Reading-comprehension guided sentence simplification"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value config file");

  RunConfig config;
  std::string backend = "heuristic";
  std::string r_actor = "1";
  std::string r_target = "1";

  auto existing = CLI::ExistingFile;
  app.add_option("--records", config.records, "JSON-lines event records")
      ->envname("RUSS_RECORDS")
      ->check(existing);
  app.add_option("--predicates", config.predicates, "event_type<TAB>predicate")
      ->envname("RUSS_PREDICATES")
      ->check(existing);
  app.add_option("--entities", config.entities, "entity dictionary")
      ->envname("RUSS_ENTITIES")
      ->check(existing);
  app.add_option("--lm", config.lm, "n-gram model file")->envname("RUSS_LM");
  app.add_option("--out", config.out, "output path")->envname("RUSS_OUT");
  app.add_option("--simplified", config.simplified, "simplify output (eval)")
      ->envname("RUSS_SIMPLIFIED")
      ->check(existing);
  app.add_option("--backend", backend, "heuristic | fixture | http")
      ->envname("RUSS_BACKEND")
      ->check(CLI::IsMember({"heuristic", "fixture", "http"}));
  app.add_option("--fixture", config.fixture, "recorded answers (JSON lines)")
      ->envname("RUSS_FIXTURE")
      ->check(existing);
  app.add_option("--endpoint", config.http.endpoint, "MRC service base URL")
      ->envname("RUSS_ENDPOINT");
  app.add_option("--timeout-ms", config.http.timeout_ms, "HTTP timeout")
      ->envname("RUSS_TIMEOUT_MS");
  app.add_option("--retries", config.http.retries, "HTTP retries")
      ->envname("RUSS_RETRIES");
  app.add_option("--concurrency", config.http.max_in_flight,
                 "max in-flight HTTP requests")
      ->envname("RUSS_CONCURRENCY");
  app.add_option("--a", config.score.a, "LM score exponent")->envname("RUSS_A");
  app.add_option("--b", config.score.b, "entity score exponent (0|1)")
      ->envname("RUSS_B");
  app.add_option("--c", config.score.c, "predicate score exponent (0|1)")
      ->envname("RUSS_C");
  app.add_option("--r-actor", r_actor, "Actor MRC exponent")
      ->envname("RUSS_R_ACTOR");
  app.add_option("--r-target", r_target, "Target MRC exponent")
      ->envname("RUSS_R_TARGET");
  app.add_option("--t", config.score.t, "minimum candidate words (exclusive)")
      ->envname("RUSS_T");
  app.add_option("--max-iter", config.score.max_iter, "iteration limit")
      ->envname("RUSS_MAX_ITER");
  app.add_option("--order", config.lm_order, "n-gram order (train-lm)")
      ->envname("RUSS_ORDER");
  app.add_option("--pos-mix", config.pos_mix, "POS chain weight (train-lm)")
      ->envname("RUSS_POS_MIX");
  app.add_option("--workers", config.workers, "worker threads (0 = all)")
      ->envname("RUSS_WORKERS");
  app.add_option("--seed", config.seed, "reserved")->envname("RUSS_SEED");
  app.add_flag("--verbose", config.verbose, "log every scored candidate")
      ->envname("RUSS_VERBOSE");

  const std::pair<const char *, const char *> commands[] = {
      {"gen-qa", "write Actor/Target questions for each record"},
      {"train-lm", "train the n-gram model on the records (--lm is output)"},
      {"simplify", "run the guided search and write simplified records"},
      {"eval", "compare MRC answers before and after simplification"},
  };
  for (const auto &[name, help] : commands) {
    app.add_subcommand(name, help)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitError;
  }
  config.command = app.get_subcommands().front()->get_name();

  try {
    config.score.role_exponents = {{std::string(kActor), ParseRoleExponent(r_actor)},
                                   {std::string(kTarget), ParseRoleExponent(r_target)}};
    config.backend = backend == "fixture" ? BackendKind::kFixture
                     : backend == "http"  ? BackendKind::kHttp
                                          : BackendKind::kHeuristic;
    if (config.records.empty()) throw ConfigError("--records is required");
    if (config.command == "gen-qa") return CmdGenQa(config, out, err);
    if (config.command == "train-lm") return CmdTrainLm(config, out, err);
    if (config.command == "simplify") return CmdSimplify(config, out, err);
    return CmdEval(config, out, err);
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace russ
