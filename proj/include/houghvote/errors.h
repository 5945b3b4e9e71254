// Copyright 2026 The HoughVote Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HOUGHVOTE_ERRORS_H_
#define HOUGHVOTE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace houghvote {

// Base class for every error raised by the library. The CLI maps all of
// these to exit code 2 (data/validation error).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid vote-field or evaluation configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Tensor dimensions that do not agree with each other or with a field.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Values outside their domain (non-finite scores, non-positive areas, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed input files, including dangling references in annotation sets.
class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace houghvote

#endif  // HOUGHVOTE_ERRORS_H_
