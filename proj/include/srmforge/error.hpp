// Copyright 2026 The srm-forge Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace srmforge {

/// Base class for every error raised by the toolchain.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::string uri, int line, int column, std::string expected)
        : Error(uri + ":" + std::to_string(line) + ":" + std::to_string(column) + ": expected " + expected),
          uri_(std::move(uri)), line_(line), column_(column), expected_(std::move(expected)) {}

    const std::string& uri() const noexcept { return uri_; }
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::string uri_;
    int line_;
    int column_;
    std::string expected_;
};

/// Malformed dataset, spec or model document. `path` is a JSON-pointer-like location.
class FormatError : public Error {
public:
    FormatError(std::string path, std::string reason)
        : Error(path + ": " + reason), path_(std::move(path)), reason_(std::move(reason)) {}

    const std::string& path() const noexcept { return path_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::string path_;
    std::string reason_;
};

class SchemaMismatch : public Error {
public:
    using Error::Error;
};

class EmptyAfterPruning : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class TooFewRows : public Error {
public:
    using Error::Error;
};

} // namespace srmforge
