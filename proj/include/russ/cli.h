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

#ifndef RUSS_CLI_H_
#define RUSS_CLI_H_

#include <memory>
#include <ostream>
#include <string>

#include "russ/corpus.h"
#include "russ/mrc.h"
#include "russ/scoring.h"

namespace russ {

enum class BackendKind { kHeuristic, kFixture, kHttp };

// Everything a command needs. Values come from flags, then a key = value
// config file (--config), then RUSS_* environment variables, then the
// defaults below.
struct RunConfig {
  std::string command;
  std::string records;
  std::string predicates;
  std::string entities;
  std::string lm;
  std::string out;
  std::string simplified;
  ScoreConfig score;
  BackendKind backend = BackendKind::kHeuristic;
  std::string fixture;
  HttpClientOptions http;
  int lm_order = 3;
  double pos_mix = 0.3;
  int workers = 0;
  // Reserved; the pipeline is deterministic.
  unsigned seed = 0;
  bool verbose = false;
};

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitAllFailed = 2;

// Builds the configured backend. Throws ConfigError / IoError.
std::unique_ptr<MrcBackend> MakeBackend(const RunConfig &config);

int CmdGenQa(const RunConfig &config, std::ostream &out, std::ostream &err);
int CmdTrainLm(const RunConfig &config, std::ostream &out, std::ostream &err);
int CmdSimplify(const RunConfig &config, std::ostream &out, std::ostream &err);
int CmdEval(const RunConfig &config, std::ostream &out, std::ostream &err);

// Parses the command line and dispatches to the subcommand.
int RunCli(int argc, const char *const *argv, std::ostream &out,
           std::ostream &err);

}  // namespace russ

#endif  // RUSS_CLI_H_
