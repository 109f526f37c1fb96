// Copyright 2026 The streamplace Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace streamplace {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// An input parsed but violates an invariant. The message names the record.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class UnknownRegion : public Error {
 public:
  using Error::Error;
};

class MissingOffer : public Error {
 public:
  using Error::Error;
};

class UnknownProfile : public Error {
 public:
  using Error::Error;
};

class ModeNotAllowed : public Error {
 public:
  using Error::Error;
};

class DimensionLimitExceeded : public Error {
 public:
  using Error::Error;
};

/// No placement exists. `item()` is the first item (by id) without a
/// placeable mode, or empty when the failure is global.
class Infeasible : public Error {
 public:
  Infeasible(const std::string& what, std::string item)
      : Error(what), item_(std::move(item)) {}
  const std::string& item() const noexcept { return item_; }

 private:
  std::string item_;
};

class LimitExceeded : public Error {
 public:
  using Error::Error;
};

class EventReferenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace streamplace
