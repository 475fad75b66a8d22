// Copyright 2026 The taskorder Authors
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

#include "taskorder/error.hpp"

namespace taskorder {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotUnitDiagonal: return "NotUnitDiagonal";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::EntryOutOfRange: return "EntryOutOfRange";
    case ErrorKind::UnsupportedSize: return "UnsupportedSize";
    case ErrorKind::RejectionBudgetExhausted: return "RejectionBudgetExhausted";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::MOutOfRange: return "MOutOfRange";
    case ErrorKind::TooManyTasks: return "TooManyTasks";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::Diverged: return "Diverged";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NonpositiveBaseline: return "NonpositiveBaseline";
    case ErrorKind::NegativeTransferError: return "NegativeTransferError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace taskorder
