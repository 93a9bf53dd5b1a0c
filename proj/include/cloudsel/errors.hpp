/*
 * Copyright 2026 The cloudsel Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <stdexcept>
#include <string>

namespace cloudsel {

/// Base of every error the library throws. Each subclass maps onto one
/// status code of the C API.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `path` is a field path such as
/// "providers[0].regions[1].compute[2].cores", or "line 3" for syntax errors.
class ParseError : public Error {
 public:
  ParseError(std::string path, const std::string& message)
      : Error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// A well-formed value that breaks a domain invariant (cores < 1, duplicate names...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Usage quantity falls outside what an offering can serve.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Bad request parameter. `param` names the offending parameter when known.
class ValidationError : public Error {
 public:
  ValidationError(std::string param, const std::string& message)
      : Error(param.empty() ? message : param + ": " + message), param_(std::move(param)) {}
  const std::string& param() const { return param_; }

 private:
  std::string param_;
};

class CurrencyError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cloudsel
