// Copyright 2026 The valgraph Authors. All rights reserved.
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

#ifndef VALGRAPH_ERRORS_HPP_
#define VALGRAPH_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace valgraph {

/// Base class of every domain error raised by the library. `name()` is the
/// stable error identifier surfaced by the command-line tool.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* name() const noexcept { return "Error"; }
};

#define VALGRAPH_DEFINE_ERROR(Type)                                   \
  class Type : public Error {                                         \
   public:                                                            \
    using Error::Error;                                               \
    const char* name() const noexcept override { return #Type; }      \
  }

// World model construction and queries.
VALGRAPH_DEFINE_ERROR(CycleError);
VALGRAPH_DEFINE_ERROR(CptError);
VALGRAPH_DEFINE_ERROR(UnknownVariableError);
VALGRAPH_DEFINE_ERROR(DuplicateVariableError);
VALGRAPH_DEFINE_ERROR(IncompleteAssignmentError);
VALGRAPH_DEFINE_ERROR(SameVariableError);
VALGRAPH_DEFINE_ERROR(ModelTooLargeError);

// Value engine.
VALGRAPH_DEFINE_ERROR(NotAChildError);
VALGRAPH_DEFINE_ERROR(InvalidValueError);

// Inference.
VALGRAPH_DEFINE_ERROR(ObservationError);
VALGRAPH_DEFINE_ERROR(ProblemError);
VALGRAPH_DEFINE_ERROR(ConfigError);
VALGRAPH_DEFINE_ERROR(GridTooLargeError);

// Files and scenarios.
VALGRAPH_DEFINE_ERROR(ParseError);
VALGRAPH_DEFINE_ERROR(UnknownScenarioError);
VALGRAPH_DEFINE_ERROR(IoError);

#undef VALGRAPH_DEFINE_ERROR

}  // namespace valgraph

#endif  // VALGRAPH_ERRORS_HPP_
