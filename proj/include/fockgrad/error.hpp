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

/**
 * @file
 * Exception types shared by all fockgrad modules.
 *
 * Precondition violations on plain arguments (wrong lengths, indices out of
 * range) throw std::invalid_argument / std::out_of_range. The types below
 * cover the domain-level failures callers may want to catch selectively.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace fockgrad {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Fock-space dimension exceeds the configured cap.
class ResourceLimitError : public Error {
  public:
    using Error::Error;
};

/// Heralding event has (numerically) zero probability.
class DegeneratePostselectionError : public Error {
  public:
    using Error::Error;
};

/// Observable cannot be estimated from photon-counting samples.
class UnsupportedMeasurementError : public Error {
  public:
    using Error::Error;
};

/// Malformed experiment configuration or serialized circuit.
class ConfigError : public Error {
  public:
    using Error::Error;
};

namespace detail {
[[noreturn]] inline void throw_invalid(const std::string &msg) {
    throw std::invalid_argument(msg);
}
} // namespace detail

} // namespace fockgrad

#define FOCKGRAD_REQUIRE(cond, msg)                                            \
    do {                                                                       \
        if (!(cond)) {                                                         \
            ::fockgrad::detail::throw_invalid(msg);                            \
        }                                                                      \
    } while (false)
