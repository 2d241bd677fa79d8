// Copyright 2026 The infoeff Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace infoeff {

enum class ErrorKind {
  NegativeWeight,
  SumNotOne,
  DuplicateLabel,
  EmptyAlphabet,
  AllZero,
  LabelMismatch,
  ZeroProbabilitySignal,
  UnsupportedOutcome,
  NonpositiveQuote,
  DegenerateSystem,
  QuoteSumNotOne,
  MarginalMismatch,
  DomainViolation,
  UnsupportedAlphabet,
  InvalidArgument,
  InternalConsistency,
  ParseError,
  EmptyInput,
  Io,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NegativeWeight: return "NegativeWeight";
    case ErrorKind::SumNotOne: return "SumNotOne";
    case ErrorKind::DuplicateLabel: return "DuplicateLabel";
    case ErrorKind::EmptyAlphabet: return "EmptyAlphabet";
    case ErrorKind::AllZero: return "AllZero";
    case ErrorKind::LabelMismatch: return "LabelMismatch";
    case ErrorKind::ZeroProbabilitySignal: return "ZeroProbabilitySignal";
    case ErrorKind::UnsupportedOutcome: return "UnsupportedOutcome";
    case ErrorKind::NonpositiveQuote: return "NonpositiveQuote";
    case ErrorKind::DegenerateSystem: return "DegenerateSystem";
    case ErrorKind::QuoteSumNotOne: return "QuoteSumNotOne";
    case ErrorKind::MarginalMismatch: return "MarginalMismatch";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::UnsupportedAlphabet: return "UnsupportedAlphabet";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InternalConsistency: return "InternalConsistency";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library. The message is prefixed with the
/// kind name so diagnostics can be grepped.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failures carry the 1-based position of the offending input.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& reason)
      : Error(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " +
                                         std::to_string(column) + ": " + reason),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace infoeff
