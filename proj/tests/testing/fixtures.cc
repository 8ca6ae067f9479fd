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


#include "testing/fixtures.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

namespace russ::testing {

namespace fs = std::filesystem;

std::string DataPath(std::string_view relative) {
  return (fs::path(RUSS_DATA_DIR) / relative).string();
}

Fixture LoadFixture(std::string_view records_file) {
  Fixture fixture;
  fixture.predicates = LoadPredicateTable(DataPath("predicates.tsv"));
  fixture.entities = LoadEntityDictionary(DataPath("entities.txt"));
  std::vector<std::string> diagnostics;
  fixture.records = LoadRecords(
      DataPath(std::string("fixture/") + std::string(records_file)),
      &diagnostics);
  if (!diagnostics.empty()) {
    throw std::runtime_error("fixture " + std::string(records_file) + ": " +
                             diagnostics.front());
  }
  for (EventRecord &record : fixture.records) {
    record.entities = DetectEntities(record.tokens, fixture.entities);
  }
  return fixture;
}

Fixture ShippedFixture() { return LoadFixture("records.jsonl"); }

Fixture LongRangeFixture() { return LoadFixture("long_range.jsonl"); }

std::vector<Tokens> FixtureSentences() {
  std::vector<Tokens> out;
  for (const Fixture &f : {ShippedFixture(), LongRangeFixture()}) {
    for (const EventRecord &record : f.records) out.push_back(record.tokens);
  }
  return out;
}

NgramModel FixtureModel(const LmOptions &options) {
  std::vector<Tokens> corpus = FixtureSentences();
  return NgramModel::Train(corpus, options);
}

FourRecordFixture MakeFourRecordFixture() {
  FourRecordFixture out;
  const char *nouns[] = {"man", "woman", "boy", "girl"};
  // Actor answer on (original, simplified): 'N' is the gold noun.
  const std::pair<const char *, const char *> actor[] = {
      {"angry", "N"}, {"N", "yesterday"}, {"N", "N"}, {"angry", "yesterday"}};
  for (int i = 0; i < 4; ++i) {
    std::string noun = nouns[i];
    EventRecord record;
    record.id = "q" + std::to_string(i + 1);
    record.parse = ParseBracketed(
        "(S (NP (DT the) (NN " + noun +
        ")) (SBAR (WHNP (WP who)) (S (VP (VBD was) (ADJP (JJ angry))))) "
        "(VP (VBD sued) (NP (DT the) (NN firm)) (NP (NN yesterday))))");
    record.tokens = record.parse.Leaves();
    record.raw_text = JoinText(record.tokens);
    record.event_type = "Bring lawsuit against";
    record.matched_predicate = "sued";
    record.gold_answers = {{"Actor", "the " + noun}, {"Target", "the firm"}};
    Tokens simplified = RemoveSubtree(record.parse, Position{{1}}).Leaves();

    auto span = [&](const Tokens &context, std::string word) {
      if (word == "N") word = noun;
      for (const Token &t : context) {
        if (t.text == word) return SpanAnswer{word, t.index, t.index, 1.0};
      }
      throw std::logic_error("no token " + word);
    };
    const std::string active = ActiveQuestion("sued");
    const std::string passive = PassiveQuestion("sued");
    out.oracle.Add(record.raw_text, active, span(record.tokens, actor[i].first));
    out.oracle.Add(JoinText(simplified), active,
                   span(simplified, actor[i].second));
    out.oracle.Add(record.raw_text, passive,
                   SpanAnswer{"the firm", 6, 7, 1.0});
    out.oracle.Add(JoinText(simplified), passive,
                   SpanAnswer{"the firm", 3, 4, 1.0});
    out.records.push_back(std::move(record));
    out.simplified.push_back(std::move(simplified));
  }
  return out;
}

std::string TempDir(std::string_view name) {
  fs::path dir = fs::temp_directory_path() /
                 ("russ_" + std::string(name) + "_" + std::to_string(getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

std::string ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::string &path, const std::string &contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
}

}  // namespace russ::testing
