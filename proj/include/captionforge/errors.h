// Copyright 2026 The CaptionForge Authors.
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

#ifndef CAPTIONFORGE_ERRORS_H_
#define CAPTIONFORGE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace captionforge {

// Base of every error the toolkit raises. The CLI maps subclasses of
// InputError to exit code 2 and NumericalError to exit code 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Anything caused by malformed or inconsistent user input.
class InputError : public Error {
 public:
  using Error::Error;
};

class EmptyCorpusError : public InputError {
 public:
  using InputError::InputError;
};

class IdOutOfRangeError : public InputError {
 public:
  using InputError::InputError;
};

class MismatchedIdsError : public InputError {
 public:
  using InputError::InputError;
};

class EmptyReferenceSetError : public InputError {
 public:
  using InputError::InputError;
};

class EmptyIdfError : public InputError {
 public:
  using InputError::InputError;
};

class InvalidWeightsError : public InputError {
 public:
  using InputError::InputError;
};

class DimensionMismatchError : public InputError {
 public:
  using InputError::InputError;
};

class LengthMismatchError : public InputError {
 public:
  using InputError::InputError;
};

class MismatchedVocabError : public InputError {
 public:
  using InputError::InputError;
};

// A non-finite value showed up in a loss, reward, or parameter tensor.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace captionforge

#endif  // CAPTIONFORGE_ERRORS_H_
