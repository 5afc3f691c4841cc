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

// Acceptance checks. Prints one line per criterion and exits nonzero when any
// fails. Arguments select criteria by number; none runs them all.

#include "harness.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <set>

int main(int argc, char ** argv)
{
  using namespace scplan::acceptance;
  std::vector<Criterion> all;
  for (auto group : {planner_criteria, learning_criteria, search_and_metric_criteria, pipeline_criteria}) {
    for (auto & c : group()) all.push_back(std::move(c));
  }
  std::sort(all.begin(), all.end(), [](const auto & a, const auto & b) { return a.number < b.number; });

  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto & c : all) {
    if (!wanted.empty() && wanted.count(c.number) == 0) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception & e) {
      o.detail = std::string("exception: ") + e.what();
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.number << " " << c.title << ": " << o.detail << std::endl;
  }
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
