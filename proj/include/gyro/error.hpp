/*
   Copyright 2026 The gyrokit Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef GYRO_ERROR_HPP
#define GYRO_ERROR_HPP

#include <stdexcept>
#include <string>

#include "gyro/element.hpp"

namespace gyro {

/// Base class of everything the library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An input lies outside the carrier's domain (e.g. |z| >= 1 on the disk).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Operation called with arguments that violate its stated precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

class MalformedTable : public Error {
public:
    using Error::Error;
};

/// Errors that carry a witness tuple explaining the failure.
class WitnessError : public Error {
public:
    WitnessError(const std::string& what, std::string property, Tuple witness)
        : Error(what), property_(std::move(property)), witness_(std::move(witness)) {}

    const std::string& property() const noexcept { return property_; }
    const Tuple& witness() const noexcept { return witness_; }

private:
    std::string property_;
    Tuple witness_;
};

class NotAGyrogroup : public WitnessError {
public:
    using WitnessError::WitnessError;
};

class InvalidGroup : public WitnessError {
public:
    using WitnessError::WitnessError;
};

/// Left cosets overlap or fail to cover the carrier.
class PartitionFailure : public WitnessError {
public:
    using WitnessError::WitnessError;
};

/// Coset operation depends on the representatives; witness is (a, a', b, b').
class IllDefined : public WitnessError {
public:
    using WitnessError::WitnessError;
};

/// A family lacks the V with V(+)V in U or (-)V in U required for U.
class ConditionsViolated : public WitnessError {
public:
    using WitnessError::WitnessError;
};

class ChainInvalid : public Error {
public:
    using Error::Error;
};

class CarrierMismatch : public Error {
public:
    using Error::Error;
};

/// Parse failure with a 1-based source position.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace gyro

#endif  // GYRO_ERROR_HPP
