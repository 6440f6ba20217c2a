/*
   Copyright 2026 The cmvmisp Authors

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

#ifndef CMVMISP_ERRORS_HPP
#define CMVMISP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cmvmisp {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (bad arity, |alpha| >= 1, odd n, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A numerical routine did not reach its stated accuracy.
class NumericalFailure : public Error {
public:
    using Error::Error;
};

/// An internal invariant that the theory guarantees was observed broken.
class ContractError : public Error {
public:
    using Error::Error;
};

class NotDivisible : public NumericalFailure {
public:
    explicit NotDivisible(double residual)
        : NumericalFailure("not divisible: remainder norm " + std::to_string(residual)),
          residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

} // namespace cmvmisp

#endif // CMVMISP_ERRORS_HPP
