// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Random tables plus a random query mix, written to disk and split for a
// distribution case. Used by the federated, scheduler and acceptance tests.

#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qca/engines.hpp"
#include "qca/federated.hpp"
#include "qca/ingest.hpp"
#include "qca/layout.hpp"
#include "qca/materializer.hpp"
#include "qca/partitioner.hpp"
#include "support/generators.hpp"

namespace qca::testing {

struct Scenario {
  std::vector<TestTable> tables;
  std::map<std::string, const TestTable*> by_name;  // lower-case name
  SchemaCatalog schema;
  std::string workload_text;
  WorkloadList workload;
  QueryCatalog queries;
  PartitionPlan plan;
  std::map<std::string, std::string> source_paths;  // table -> csv
};

struct ScenarioShape {
  int tables = 2;
  TableShape table;
  int simple = 4;   // single-instance queries
  int complex = 4;  // multi-instance queries
  bool with_load = true;
};

/// Writes the tables under `dir` and builds the plan. The workload always
/// has at least one simple and one complex query when both counts are > 0.
Scenario make_scenario(Rng& rng, const ScenarioShape& shape, const std::string& dir);

/// A layout materialized for a scenario, plus one node's engines.
struct Deployment {
  PartitionLayout layout;
  FragmentFiles files;
  std::vector<std::unique_ptr<RawConnection>> connections;
  LoadedStore store;
  EngineSet engines;
};

/// Splits every table for `layout` into `dir`. With `load`, all loaded
/// fragments are loaded; raw connections are opened for all raw fragments.
std::unique_ptr<Deployment> deploy(const Scenario& s, PartitionLayout layout, const std::string& dir, bool load = true);

}  // namespace qca::testing
