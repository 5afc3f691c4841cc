// Copyright 2026 The scplan Authors
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

#include "harness.hpp"

#include "scplan/cli/commands.hpp"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace scplan::acceptance
{
namespace
{

namespace fs = std::filesystem;

int run(const std::vector<std::string> & args, std::string & err)
{
  std::vector<const char *> argv{"scplan"};
  for (const auto & a : args) argv.push_back(a.c_str());
  std::ostringstream out, errs;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, errs);
  err = errs.str();
  return code;
}

std::string slurp(const fs::path & p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// Every JSON artifact under `root`, keyed by relative path.
std::map<std::string, std::string> json_artifacts(const fs::path & root)
{
  std::map<std::string, std::string> out;
  for (const auto & e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file() && e.path().extension() == ".json") {
      out[e.path().lexically_relative(root).string()] = slurp(e.path());
    }
  }
  return out;
}

Outcome pipeline_is_reproducible()
{
  Stopwatch clock;
  const fs::path out = fs::temp_directory_path() / ("scplan_acceptance_" + std::to_string(::getpid()));
  const std::string config = std::string(SCPLAN_SOURCE_DIR) + "/configs/synthetic.json";
  std::array<std::map<std::string, std::string>, 2> runs;
  Outcome o;
  for (auto & artifacts : runs) {
    fs::remove_all(out);
    for (const std::string cmd : {"ingest", "train", "plan", "eval"}) {
      std::string err;
      if (const int code = run({cmd, "--config", config, "--out", out.string()}, err); code != 0) {
        o.detail = cmd + " exited " + std::to_string(code) + ": " + err;
        fs::remove_all(out);
        return o;
      }
    }
    artifacts = json_artifacts(out);
  }
  fs::remove_all(out);
  std::size_t same = 0;
  std::string first_diff;
  for (const auto & [path, bytes] : runs[0]) {
    const auto it = runs[1].find(path);
    if (it != runs[1].end() && it->second == bytes) {
      ++same;
    } else if (first_diff.empty()) {
      first_diff = " (first difference: " + path + ")";
    }
  }
  o.pass = !runs[0].empty() && same == runs[0].size() && runs[0].size() == runs[1].size();
  o.detail = std::to_string(same) + "/" + std::to_string(runs[0].size()) +
             " JSON artifacts byte-identical across two fresh runs of configs/synthetic.json" + first_diff + ", " +
             fmt(clock.seconds(), 1) + " s";
  return o;
}

}  // namespace

std::vector<Criterion> pipeline_criteria()
{
  return {{11, "ingest, train, plan, eval rerun is byte-identical", pipeline_is_reproducible}};
}

}  // namespace scplan::acceptance
