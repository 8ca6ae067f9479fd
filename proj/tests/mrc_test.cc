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


#include "russ/mrc.h"

#include <gtest/gtest.h>

#include <random>

#include "russ/corpus.h"
#include "testing/fixtures.h"

namespace russ {
namespace {

Tokens Words(const std::string &text) {
  Tokens out;
  for (const std::string &w : SplitWhitespace(text)) {
    out.push_back({w, "", "", static_cast<int>(out.size())});
  }
  return out;
}

HeuristicOracle ManFirm() {
  EntityDictionary dict;
  dict.Add("man");
  dict.Add("firm");
  return HeuristicOracle(dict, {"sued"});
}

TEST(HeuristicOracleTest, ActivePicksNearestEntityBefore) {
  SpanAnswer a = ManFirm().Answer("Who sued someone?", Words("the man sued the firm"));
  EXPECT_EQ(a, (SpanAnswer{"man", 1, 1, 0.5}));
}

// "firm" starts two tokens after "sued", so d = 2.
TEST(HeuristicOracleTest, PassivePicksNearestEntityAfter) {
  SpanAnswer a =
      ManFirm().Answer("Who was sued by someone?", Words("the man sued the firm"));
  EXPECT_EQ(a.text, "firm");
  EXPECT_EQ(a.start_token, 4);
  EXPECT_EQ(a.end_token, 4);
  EXPECT_DOUBLE_EQ(a.score, 1.0 / 3.0);
  SpanAnswer adjacent =
      ManFirm().Answer("Who was sued by someone?", Words("the man sued firm"));
  EXPECT_DOUBLE_EQ(adjacent.score, 0.5);
}

TEST(HeuristicOracleTest, NoEntityGivesMinusOne) {
  SpanAnswer a = ManFirm().Answer("Who sued someone?", Words("they sued us"));
  EXPECT_TRUE(a.empty());
  EXPECT_EQ(a.text, "");
  EXPECT_EQ(a.score, HeuristicOracle::kNoEntityScore);
  EXPECT_EQ(a.score, -1.0);
}

TEST(HeuristicOracleTest, AbsentPredicateScoresZero) {
  SpanAnswer a = ManFirm().Answer("Who sued someone?", Words("the man met the firm"));
  EXPECT_TRUE(a.empty());
  EXPECT_EQ(a.score, HeuristicOracle::kNoPredicateScore);
}

TEST(HeuristicOracleTest, FallsBackToOtherSide) {
  SpanAnswer a =
      ManFirm().Answer("Who sued someone?", Words("sued yesterday was the firm"));
  EXPECT_EQ(a.text, "firm");
  EXPECT_DOUBLE_EQ(a.score, 1.0 / 5.0);
  SpanAnswer b =
      ManFirm().Answer("Who was sued by someone?", Words("the man sued ."));
  EXPECT_EQ(b.text, "man");
}

TEST(HeuristicOracleTest, UsesFirstPredicateOccurrenceAndLeftmostTie) {
  SpanAnswer a = ManFirm().Answer("Who was sued by someone?",
                                  Words("sued firm and man sued"));
  EXPECT_EQ(a.text, "firm");
  EXPECT_EQ(a.start_token, 1);
}

TEST(HeuristicOracleTest, MultiwordPredicateMeasuresFromSpanEdges) {
  EntityDictionary dict;
  dict.Add("union");
  dict.Add("mining company");
  HeuristicOracle oracle(dict, {"filed a suit against"});
  Tokens context = Words("The union filed a suit against the mining company .");
  SpanAnswer actor = oracle.Answer("Who filed a suit against someone?", context);
  EXPECT_EQ(actor.text, "union");
  EXPECT_DOUBLE_EQ(actor.score, 0.5);
  SpanAnswer target =
      oracle.Answer("Who was filed a suit against by someone?", context);
  EXPECT_EQ(target.text, "mining company");
  EXPECT_EQ(target.start_token, 7);
  EXPECT_EQ(target.end_token, 8);
  EXPECT_DOUBLE_EQ(target.score, 1.0 / 3.0);
}

TEST(HeuristicOracleTest, FreeFormQuestionUsesLongestKnownPredicate) {
  EntityDictionary dict;
  dict.Add("man");
  HeuristicOracle oracle(dict, {"sued", "has sued"});
  SpanAnswer a = oracle.Answer("which man has sued?", Words("the man has sued"));
  EXPECT_EQ(a.text, "man");
  EXPECT_DOUBLE_EQ(a.score, 0.5);
  EXPECT_THROW(oracle.Answer("what happened?", Words("the man has sued")),
               BackendError);
}

TEST(HeuristicOracleTest, AnswersAreDeterministicAndValid) {
  testing::Fixture fixture = testing::ShippedFixture();
  HeuristicOracle oracle(fixture.entities, fixture.predicates.All());
  for (const EventRecord &record : fixture.records) {
    for (const QAPair &qa : GenerateQuestions(record)) {
      SpanAnswer a = oracle.Answer(qa.question, record.tokens);
      EXPECT_EQ(a, oracle.Answer(qa.question, record.tokens));
      ASSERT_FALSE(a.empty()) << record.id;
      EXPECT_NO_THROW(ValidateSpan(a, record.tokens));
      EXPECT_GT(a.score, 0.0);
      EXPECT_LE(a.score, 0.5);
    }
  }
}

// Deleting a token strictly between predicate and chosen entity raises the
// score, provided the same entity is still chosen.
TEST(HeuristicOracleProperty, DeletingInterveningTokensRaisesScore) {
  testing::Fixture fixture = testing::LongRangeFixture();
  HeuristicOracle oracle(fixture.entities, fixture.predicates.All());
  int checked = 0;
  for (const EventRecord &record : fixture.records) {
    for (const QAPair &qa : GenerateQuestions(record)) {
      SpanAnswer a = oracle.Answer(qa.question, record.tokens);
      if (a.empty()) continue;
      size_t p = FindPhrase(record.tokens, record.matched_predicate).front();
      size_t plen = SplitWhitespace(record.matched_predicate).size();
      size_t lo = a.end_token < static_cast<int>(p) ? a.end_token + 1 : p + plen;
      size_t hi = a.end_token < static_cast<int>(p) ? p : a.start_token;
      for (size_t k = lo; k < hi; ++k) {
        Tokens shorter = record.tokens;
        shorter.erase(shorter.begin() + k);
        SpanAnswer b = oracle.Answer(qa.question, shorter);
        if (b.text != a.text) continue;
        EXPECT_GT(b.score, a.score) << record.id << " token " << k;
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(ValidateSpanTest, BoundsAndText) {
  Tokens context = Words("the man sued the firm");
  EXPECT_NO_THROW(ValidateSpan({"man", 1, 1, 0.0}, context));
  EXPECT_NO_THROW(ValidateSpan({"the firm", 3, 4, 0.0}, context));
  EXPECT_THROW(ValidateSpan({"x", 1, 9, 0.0}, context), BackendError);
  EXPECT_THROW(ValidateSpan({"x", -1, 1, 0.0}, context), BackendError);
  EXPECT_THROW(ValidateSpan({"x", 3, 2, 0.0}, context), BackendError);
  EXPECT_THROW(ValidateSpan({"woman", 1, 1, 0.0}, context), BackendError);
  try {
    ValidateSpan({"x", 1, 9, 0.0}, context, "raw body");
  } catch (const BackendError &e) {
    EXPECT_EQ(e.payload(), "raw body");
  }
}

TEST(FixtureOracleTest, ReturnsStoredAnswerVerbatim) {
  FixtureOracle oracle;
  SpanAnswer stored{"man", 1, 1, 3.2};
  oracle.Add("the man sued the firm", "Who sued someone?", stored);
  EXPECT_EQ(oracle.Answer("Who sued someone?", Words("the man sued the firm")),
            stored);
}

TEST(FixtureOracleTest, UnknownKeyNamesIt) {
  FixtureOracle oracle;
  oracle.Add("the man sued the firm", "Who sued someone?", {"man", 1, 1, 3.2});
  try {
    oracle.Answer("Who sued someone?", Words("the man sued"));
    FAIL() << "expected BackendError";
  } catch (const BackendError &e) {
    EXPECT_NE(std::string(e.what()).find("the man sued"), std::string::npos);
  }
}

TEST(FixtureOracleTest, SerializationRoundTrips) {
  testing::Fixture fixture = testing::ShippedFixture();
  HeuristicOracle heuristic(fixture.entities, fixture.predicates.All());
  FixtureOracle recorded;
  for (const EventRecord &record : fixture.records) {
    for (const QAPair &qa : GenerateQuestions(record)) {
      recorded.Add(JoinText(record.tokens), qa.question,
                   heuristic.Answer(qa.question, record.tokens));
    }
  }
  recorded.Add("nobody here", "Who sued someone?", {"", -1, -1, -1.0});
  FixtureOracle back = FixtureOracle::Parse(recorded.Serialize());
  EXPECT_EQ(back.table(), recorded.table());
  std::string path = testing::TempDir("mrc_fixture") + "/answers.jsonl";
  recorded.Save(path);
  EXPECT_EQ(FixtureOracle::Load(path).table(), recorded.table());
}

TEST(FixtureOracleTest, RejectsMalformedLines) {
  EXPECT_THROW(FixtureOracle::Parse("{\"context\":\"a\"}\n"), BackendError);
  EXPECT_THROW(FixtureOracle::Parse("not json\n"), BackendError);
  EXPECT_THROW(FixtureOracle::Load("/nonexistent/answers.jsonl"), BackendError);
  EXPECT_TRUE(FixtureOracle::Parse("\n  \n").table().empty());
}

}  // namespace
}  // namespace russ
