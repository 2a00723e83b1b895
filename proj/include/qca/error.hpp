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

#include <stdexcept>
#include <string>
#include <string_view>

namespace qca {

enum class Errc {
  // Input validation.
  SyntaxError,
  DdlSyntaxError,
  DuplicateTable,
  DuplicateAttribute,
  DuplicateTask,
  UnknownTable,
  UnknownAttribute,
  AmbiguousColumn,
  MissingCatalogEntry,
  InvalidCase,
  EmptyPartition,
  MissingWidth,
  InfeasiblePattern,
  InvalidArgument,
  FormatError,
  // Runtime.
  IoFailure,
  HeaderMismatch,
  RowArityMismatch,
  ParseError,
  DuplicateKey,
  TypeError,
  AttributeNotInFragment,
  TableNotLoaded,
  CaseNotExecutable,
  RoutingError,
};

std::string_view errc_name(Errc code) noexcept;

/// True for codes that describe bad user input rather than a failure while
/// executing. The CLI maps these to distinct exit codes.
bool is_input_error(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }
  /// The message without the error-name prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace qca
