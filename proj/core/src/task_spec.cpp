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

#include "taskorder/task_spec.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <sstream>

#include "taskorder/error.hpp"

namespace taskorder {

Ordering Ordering::from_zero_based(std::vector<int> perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<char> seen(n, 0);
  for (int t : perm) {
    if (t < 0 || t >= n || seen[t]) {
      std::ostringstream msg;
      msg << "ordering is not a permutation of " << n << " tasks";
      fail(ErrorKind::InvalidArgument, msg.str());
    }
    seen[t] = 1;
  }
  return Ordering(std::move(perm));
}

Ordering Ordering::from_one_based(const std::vector<int>& perm) {
  std::vector<int> zero(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) zero[i] = perm[i] - 1;
  return from_zero_based(std::move(zero));
}

Ordering Ordering::identity(int size) {
  std::vector<int> perm(size);
  for (int i = 0; i < size; ++i) perm[i] = i;
  return Ordering(std::move(perm));
}

Ordering Ordering::parse(std::string_view text) {
  std::vector<int> perm;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find_first_of(">,", start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view token = text.substr(start, end - start);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    int value = 0;
    if (token.size() == 1 && token[0] >= 'A' && token[0] <= 'Z') {
      value = token[0] - 'A' + 1;
    } else {
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc() || ptr != token.data() + token.size() || token.empty())
        fail(ErrorKind::ParseError, "bad ordering token '" + std::string(token) + "'");
    }
    perm.push_back(value);
    start = end + 1;
  }
  return from_one_based(perm);
}

Ordering Ordering::reversed() const {
  return Ordering(std::vector<int>(perm_.rbegin(), perm_.rend()));
}

Ordering Ordering::inverse() const {
  std::vector<int> inv(perm_.size());
  for (std::size_t k = 0; k < perm_.size(); ++k) inv[perm_[k]] = static_cast<int>(k);
  return Ordering(std::move(inv));
}

std::string Ordering::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < perm_.size(); ++k) {
    if (k) out += '>';
    out += std::to_string(perm_[k] + 1);
  }
  return out;
}

std::string Ordering::to_letters() const {
  if (perm_.size() > 26) return to_string();
  std::string out;
  for (std::size_t k = 0; k < perm_.size(); ++k) {
    if (k) out += '>';
    out += static_cast<char>('A' + perm_[k]);
  }
  return out;
}

TaskSetSpec::TaskSetSpec(CorrelationMatrix c_in, CorrelationMatrix c_out)
    : c_in_(std::move(c_in)), c_out_(std::move(c_out)) {
  if (c_in_.size() != c_out_.size()) {
    std::ostringstream msg;
    msg << "c_in has " << c_in_.size() << " tasks but c_out has " << c_out_.size();
    fail(ErrorKind::SizeMismatch, msg.str());
  }
}

std::string TaskSetSpec::digest() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const Matrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        unsigned char bytes[sizeof(double)];
        const double v = m(i, j);
        std::memcpy(bytes, &v, sizeof v);
        for (unsigned char b : bytes) {
          h ^= b;
          h *= 0x100000001b3ULL;
        }
      }
    }
  };
  mix(c_in_.entries());
  mix(c_out_.entries());
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Matrix permute_symmetric(const Matrix& m, const Ordering& ord) {
  const int p = ord.size();
  if (m.rows() != p || m.cols() != p) {
    std::ostringstream msg;
    msg << "ordering has " << p << " tasks but matrix is " << m.rows() << "x" << m.cols();
    fail(ErrorKind::SizeMismatch, msg.str());
  }
  Matrix out(p, p);
  for (int k = 0; k < p; ++k)
    for (int l = 0; l < p; ++l) out(k, l) = m(ord[k], ord[l]);
  return out;
}

TaskSetSpec apply_ordering(const TaskSetSpec& spec, const Ordering& ord) {
  if (ord.size() != spec.tasks()) {
    std::ostringstream msg;
    msg << "ordering has " << ord.size() << " tasks but spec has " << spec.tasks();
    fail(ErrorKind::SizeMismatch, msg.str());
  }
  return TaskSetSpec(spec.c_in().permuted(ord.tasks()), spec.c_out().permuted(ord.tasks()));
}

}  // namespace taskorder
