// Copyright 2026 The laxcat Authors.
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

#ifndef LAXCAT_ERROR_HPP
#define LAXCAT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace laxcat {

enum class ErrorKind {
  kMalformedTable,
  kInvalidMarking,
  kInvalidFunctor,
  kInvalidDiagram,
  kUnknownObject,
  kUnknownMorphism,
  kParseError,
  kSizeBoundExceeded,
  kWordBoundExceeded,
  kSearchBudgetExceeded,
  kGenerationExhausted,
};

std::string_view to_string(ErrorKind kind);

// True for the kinds that mean "ran out of a configured resource" rather
// than "the input is wrong".
bool is_resource_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace laxcat

#endif  // LAXCAT_ERROR_HPP
