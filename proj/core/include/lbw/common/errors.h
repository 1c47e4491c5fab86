// Copyright 2026 The Authors.
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

// Exception hierarchy shared by every lbw module. Each failure class named in
// the module contracts has its own type so callers (and tests) can tell them
// apart without string matching.

#ifndef LBW_COMMON_ERRORS_H_
#define LBW_COMMON_ERRORS_H_

#include <stdexcept>
#include <string>

namespace lbw {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A dimension that must be positive was not.
class InvalidDimensionError : public Error {
 public:
  using Error::Error;
};

// alpha >= beta, or a non-finite level.
class InvalidLevelsError : public Error {
 public:
  using Error::Error;
};

class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// A filesystem path could not be opened. The message carries a hint.
class PathError : public Error {
 public:
  using Error::Error;
};

// Refusal to run an exhaustive computation beyond its supported size.
class SizeError : public Error {
 public:
  using Error::Error;
};

class TaskError : public Error {
 public:
  using Error::Error;
};

// Malformed weight file.
class ParseError : public Error {
 public:
  enum class Kind {
    kBadMagic,
    kBadVersion,
    kTruncated,
    kLevelOrder,
    kBadSign,
    kBadScale,
    kBadComponentCount,
    kTrailingBytes,
  };
  ParseError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Malformed IDX / CIFAR-10 input.
class DataFormatError : public Error {
 public:
  enum class Kind {
    kBadMagic,
    kCountMismatch,
    kTruncated,
    kBadRecordSize,
    kDimensionMismatch,
  };
  DataFormatError(Kind kind, const std::string& what)
      : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace lbw

#endif  // LBW_COMMON_ERRORS_H_
