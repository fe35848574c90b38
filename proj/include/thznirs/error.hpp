// SPDX-License-Identifier: Apache-2.0
//
// thz-nirs: channel processing and coverage analysis for reflector-aided THz links
// Copyright (C) 2026 The thz-nirs authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef THZNIRS_ERROR_HPP
#define THZNIRS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace thznirs
{
    // Base class of every error raised for bad input, invalid configuration or
    // numerically undefined requests. The CLI maps it to exit code 2.
    class Error : public std::runtime_error
    {
      public:
        using std::runtime_error::runtime_error;
    };

    // A type invariant does not hold. The invariant name is part of the message
    // and is available separately for tests and tooling.
    class ValidationError : public Error
    {
      public:
        ValidationError(std::string invariant, const std::string &detail)
            : Error(invariant + ": " + detail), invariant_(std::move(invariant))
        {
        }

        const std::string &invariant() const noexcept { return invariant_; }

      private:
        std::string invariant_;
    };

    // Argument outside the mathematical domain of an operation.
    class DomainError : public Error
    {
      public:
        using Error::Error;
    };

    // Two sweeps or profiles that must share a frequency/delay grid do not.
    class GridMismatchError : public Error
    {
      public:
        using Error::Error;
    };

    class SingularCalibrationError : public Error
    {
      public:
        using Error::Error;
    };

    // A path delay does not fit inside the alias-free delay window 1/f_step.
    class AliasingError : public Error
    {
      public:
        using Error::Error;
    };

    // Every profile entry selected for a power sum is a noise sentinel.
    class NoSignalError : public Error
    {
      public:
        using Error::Error;
    };

    // The Tx-panel-Rx specular point does not lie on an active panel area.
    class NoSpecularGeometryError : public Error
    {
      public:
        using Error::Error;
    };

    // Too few samples, or too few distinct angles, to determine a fit.
    class FitError : public Error
    {
      public:
        using Error::Error;
    };

    class IoError : public Error
    {
      public:
        using Error::Error;
    };
} // namespace thznirs

#endif
