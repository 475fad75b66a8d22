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

#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <functional>

#include "taskorder/error.hpp"

namespace oracle {

inline taskorder::ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const taskorder::Error& e) {
    return e.kind();
  }
  FAIL("expected a taskorder::Error");
  return taskorder::ErrorKind::InvalidArgument;
}

}  // namespace oracle
