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

#include "qca/error.hpp"

namespace qca {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::DdlSyntaxError: return "DdlSyntaxError";
    case Errc::DuplicateTable: return "DuplicateTable";
    case Errc::DuplicateAttribute: return "DuplicateAttribute";
    case Errc::DuplicateTask: return "DuplicateTask";
    case Errc::UnknownTable: return "UnknownTable";
    case Errc::UnknownAttribute: return "UnknownAttribute";
    case Errc::AmbiguousColumn: return "AmbiguousColumn";
    case Errc::MissingCatalogEntry: return "MissingCatalogEntry";
    case Errc::InvalidCase: return "InvalidCase";
    case Errc::EmptyPartition: return "EmptyPartition";
    case Errc::MissingWidth: return "MissingWidth";
    case Errc::InfeasiblePattern: return "InfeasiblePattern";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::FormatError: return "FormatError";
    case Errc::IoFailure: return "IoFailure";
    case Errc::HeaderMismatch: return "HeaderMismatch";
    case Errc::RowArityMismatch: return "RowArityMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::DuplicateKey: return "DuplicateKey";
    case Errc::TypeError: return "TypeError";
    case Errc::AttributeNotInFragment: return "AttributeNotInFragment";
    case Errc::TableNotLoaded: return "TableNotLoaded";
    case Errc::CaseNotExecutable: return "CaseNotExecutable";
    case Errc::RoutingError: return "RoutingError";
  }
  return "Unknown";
}

bool is_input_error(Errc code) noexcept {
  switch (code) {
    case Errc::SyntaxError:
    case Errc::DdlSyntaxError:
    case Errc::DuplicateTable:
    case Errc::DuplicateAttribute:
    case Errc::DuplicateTask:
    case Errc::UnknownTable:
    case Errc::UnknownAttribute:
    case Errc::AmbiguousColumn:
    case Errc::MissingCatalogEntry:
    case Errc::InvalidCase:
    case Errc::EmptyPartition:
    case Errc::MissingWidth:
    case Errc::InfeasiblePattern:
    case Errc::InvalidArgument:
    case Errc::FormatError:
      return true;
    default:
      return false;
  }
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code), detail_(message) {}

}  // namespace qca
