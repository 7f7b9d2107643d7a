// Copyright 2026 The minival Authors
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

#ifndef MINIVAL_ERRORS_HPP
#define MINIVAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace minival {

/// Base class for all recoverable errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define MINIVAL_DECLARE_ERROR(Name)        \
  class Name final : public Error {        \
   public:                                 \
    using Error::Error;                    \
  }

// scoring
MINIVAL_DECLARE_ERROR(EmptyReference);
// ingestion
MINIVAL_DECLARE_ERROR(IoFailure);
MINIVAL_DECLARE_ERROR(MalformedRecord);
MINIVAL_DECLARE_ERROR(DuplicateId);
MINIVAL_DECLARE_ERROR(UnknownSample);
MINIVAL_DECLARE_ERROR(IncompleteRun);
// subsets
MINIVAL_DECLARE_ERROR(EmptySubset);
MINIVAL_DECLARE_ERROR(IndexOutOfRange);
MINIVAL_DECLARE_ERROR(DuplicateIndex);
// embeddings / pseudo-users
MINIVAL_DECLARE_ERROR(DimensionMismatch);
MINIVAL_DECLARE_ERROR(EmptyPool);
MINIVAL_DECLARE_ERROR(InsufficientSamples);
// optimization
MINIVAL_DECLARE_ERROR(DegenerateInput);
MINIVAL_DECLARE_ERROR(ConfigInvalid);
MINIVAL_DECLARE_ERROR(InsufficientCorrectSamples);
// early stopping
MINIVAL_DECLARE_ERROR(TrajectoryTooShort);
// reporting
MINIVAL_DECLARE_ERROR(KeyMismatch);

#undef MINIVAL_DECLARE_ERROR

}  // namespace minival

#endif  // MINIVAL_ERRORS_HPP
