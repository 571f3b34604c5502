// Copyright 2026 The qremote Authors
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

#ifndef QREMOTE_ERRORS_HPP
#define QREMOTE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qrc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A qubit label is unknown, duplicated, or otherwise inconsistent.
class LabelError : public Error {
   public:
    using Error::Error;
};

/// Operand shapes do not agree.
class DimensionError : public Error {
   public:
    using Error::Error;
};

/// Input failed a numerical validity check (normalization, Hermiticity, unitarity, range).
class ValidationError : public Error {
   public:
    using Error::Error;
};

/// A density operator has an eigenvalue below -tolerance.
class PositivityError : public Error {
   public:
    using Error::Error;
};

/// A party touched a qubit it does not own, or read classical data it never received.
class OwnershipError : public Error {
   public:
    using Error::Error;
};

/// A protocol was started without the resources it needs (e.g. a missing Bell pair).
class ProtocolError : public Error {
   public:
    using Error::Error;
};

/// A documented precondition of a verifier does not hold.
class PreconditionError : public Error {
   public:
    using Error::Error;
};

}  // namespace qrc

#endif  // QREMOTE_ERRORS_HPP
