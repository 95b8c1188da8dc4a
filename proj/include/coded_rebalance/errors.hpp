/*
 * Copyright 2026 The coded-rebalance Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace coded_rebalance {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument is outside the mathematical domain of an operation (l > K, overflow).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Bad parameter: replication out of range, unknown node id, bad position.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The file size does not satisfy the divisibility needed by the schemes.
class DivisibilityError : public Error {
 public:
  DivisibilityError(const std::string& what, unsigned long long required_multiple)
      : Error(what), required_multiple_(required_multiple) {}

  unsigned long long required_multiple() const noexcept { return required_multiple_; }

 private:
  unsigned long long required_multiple_;
};

/// A payload cannot be split into the required number of equal parts.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

/// Removal would leave fewer than r nodes.
class InfeasibleRemovalError : public Error {
 public:
  using Error::Error;
};

/// A rebalancing step observed state the protocol guarantees cannot happen.
class ProtocolViolation : public Error {
 public:
  using Error::Error;
};

/// Delivery over a channel failed; the running operation is aborted.
class TransportError : public Error {
 public:
  using Error::Error;
};

}  // namespace coded_rebalance
