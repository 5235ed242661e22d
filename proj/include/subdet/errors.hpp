// Copyright 2026 The Authors.
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

#ifndef SUBDET_ERRORS_HPP_
#define SUBDET_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace subdet {

// Input violates the positive-definiteness hypothesis of the determinantal
// theorems (Cholesky pivot at or below threshold).
class NotPositiveDefinite : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An index or index set falls outside the ground set [1:n].
class IndexOutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Parameters violate an operation's preconditions (e.g. k > p).
class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Blocks are empty, overlap, or fail to cover the ground set.
class InvalidPartition : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An exhaustive enumeration would exceed the configured cap; the message
// carries the up-front cost estimate.
class GroundTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Schur complement requested with P = [1:n], leaving nothing to condition on.
class EmptyComplement : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Iterative eigensolver exceeded its sweep cap.
class NoConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file; the message carries line-level detail where known.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace subdet

#endif  // SUBDET_ERRORS_HPP_
