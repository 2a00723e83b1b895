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

#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "qca/layout.hpp"

namespace qca::detail {

using Json = nlohmann::ordered_json;

Json replication_json(const ReplicationReport& r);
ReplicationReport replication_from(const Json& j);

/// Parses `text`, turning library exceptions into FormatError.
Json parse_json(std::string_view text, std::string_view what);
/// Member access that reports the missing key as FormatError.
const Json& member(const Json& j, const char* key, std::string_view what);

}  // namespace qca::detail
