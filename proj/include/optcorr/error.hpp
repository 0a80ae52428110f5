// Copyright 2026 The optcorr Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace optcorr {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
  public:
    using Error::Error;
};

/// Raised when the iterative eigensolver exhausts its iteration budget.
class ConvergenceError : public Error {
  public:
    ConvergenceError(const std::string &what, double residual)
        : Error(what), residual_(residual) {}
    [[nodiscard]] double residual() const noexcept { return residual_; }

  private:
    double residual_;
};

class InvalidState : public Error {
  public:
    using Error::Error;
};

class InconsistentCorrelators : public Error {
  public:
    using Error::Error;
};

class UnsupportedMeasurement : public Error {
  public:
    using Error::Error;
};

class NoFactorization : public Error {
  public:
    using Error::Error;
};

class FitUnderdetermined : public Error {
  public:
    using Error::Error;
};

} // namespace optcorr
