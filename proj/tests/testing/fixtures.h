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


// Shared fixture loading for the test binaries.

#ifndef RUSS_TESTING_FIXTURES_H_
#define RUSS_TESTING_FIXTURES_H_

#include <string>
#include <string_view>
#include <vector>

#include "russ/corpus.h"
#include "russ/lm.h"
#include "russ/mrc.h"
#include "russ/treebank.h"

namespace russ::testing {

std::string DataPath(std::string_view relative);

struct Fixture {
  std::vector<EventRecord> records;
  PredicateTable predicates;
  EntityDictionary entities;
};

// Loads a record file under data/fixture with entities detected against the
// shipped dictionary. Throws if any line fails to parse.
Fixture LoadFixture(std::string_view records_file);

Fixture ShippedFixture();
Fixture LongRangeFixture();

// Token sequences of every fixture sentence.
std::vector<Tokens> FixtureSentences();

NgramModel FixtureModel(const LmOptions &options = {});

// Four records whose Actor answers change (+, -, same, same) between the
// original and the simplified sentence under the returned fixture oracle;
// Target answers never change.
struct FourRecordFixture {
  std::vector<EventRecord> records;
  std::vector<Tokens> simplified;
  FixtureOracle oracle;
};
FourRecordFixture MakeFourRecordFixture();

// Creates a fresh empty directory under the system temp dir.
std::string TempDir(std::string_view name);

std::string ReadFile(const std::string &path);
void WriteFile(const std::string &path, const std::string &contents);

}  // namespace russ::testing

#endif  // RUSS_TESTING_FIXTURES_H_
