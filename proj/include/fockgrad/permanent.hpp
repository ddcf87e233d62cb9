// Copyright 2026 The fockgrad Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "fockgrad/linalg.hpp"

namespace fockgrad {

/**
 * @brief Matrix permanent by Ryser's formula with Gray-code subset order.
 *
 * O(2^k k) for a k x k matrix. The permanent of the 0 x 0 matrix is 1.
 */
[[nodiscard]] Complex permanent(const CMatrix &m);

namespace reference {
/// Sum over all k! permutations. Test oracle only.
[[nodiscard]] Complex permanent_naive(const CMatrix &m);
} // namespace reference

} // namespace fockgrad
