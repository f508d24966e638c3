// Copyright 2026 The cvnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace cvnet {

/// A parameter lies outside the domain of the element or quantity.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The API was misused (mixed registries, bad setting index, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// All photon-pair rates vanish, so the conditional correlator is 0/0.
class NoDetectionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The Duan weight is undefined for a block with a vacuum-level variance.
class CriterionUndefinedError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A probability model fails normalization, positivity or no-signaling.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace cvnet
