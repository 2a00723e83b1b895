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

// JSON files passed between pipeline steps. Each file embeds the one before
// it, so a layout file alone is enough to run a workload.

#pragma once

#include <string>
#include <string_view>

#include "qca/ingest.hpp"
#include "qca/layout.hpp"
#include "qca/materializer.hpp"
#include "qca/partitioner.hpp"
#include "qca/schema.hpp"

namespace qca {

inline constexpr int kArtifactSchemaVersion = 1;

struct PlanInputs {
  SchemaCatalog schema;
  WorkloadList workload;
  QueryCatalog queries;  // rebuilt from the statements when read

  bool operator==(const PlanInputs&) const = default;
};

struct PlanFile {
  PlanInputs inputs;
  int max_rounds = 1;
  PartitionPlan plan;

  bool operator==(const PlanFile&) const = default;
};

struct LayoutFile {
  PlanFile plan;
  PartitionLayout layout;
  FragmentFiles files;  // empty until materialized

  bool operator==(const LayoutFile&) const = default;
};

std::string to_json(const PlanInputs& inputs);
std::string to_json(const PlanFile& plan);
std::string to_json(const LayoutFile& layout);

/// Throw FormatError for malformed documents, the wrong kind of document,
/// or an unsupported schema version; statements are re-parsed, so parser
/// errors surface as well.
PlanInputs plan_inputs_from_json(std::string_view text);
PlanFile plan_from_json(std::string_view text);
LayoutFile layout_from_json(std::string_view text);

/// Throw IoFailure.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace qca
