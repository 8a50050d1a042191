// Copyright 2026 The atomradio Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace atomradio {

/// Base class for all library errors. The three subfamilies map to distinct
/// process exit codes in the command line tool: configuration problems,
/// violated physics preconditions, and numerical failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad configuration input: unknown keys, out-of-range values, malformed files.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A physical precondition of a model was violated by otherwise valid input.
class PhysicsError : public Error {
 public:
  using Error::Error;
};

/// A numerical method failed to meet its accuracy or stability contract.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// -- configuration family --

/// Malformed or unsupported binary file content (e.g. a non-PCM WAV).
class FormatError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// -- physics precondition family --

/// AM modulation index times peak audio amplitude reached or exceeded one.
class OvermodulationError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

/// A requested tone or trajectory is too fast for its sample rate.
class AliasingError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

/// Trajectory spectral content extends too close to the sample rate for the
/// cavity model to be meaningful.
class SampleRateError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

/// The Liouvillian null space has dimension above one, so no unique steady
/// state exists (typically all decoherence rates are zero).
class DegenerateNullSpaceError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

/// A signal is too short for the requested analysis (e.g. lock-in settling).
class InsufficientDurationError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

/// No step edge was found in a trace handed to the response-time extractor.
class NoEdgeError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

// -- numerical family --

/// Density-matrix trace drifted beyond tolerance during integration.
class TraceDriftError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A density matrix acquired a negative eigenvalue beyond tolerance.
class PositivityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A matrix handed to a constructor failed a structural invariant.
class InvalidStateError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// An exponential fit did not reach the required residual.
class PoorFitError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// An interpolation table failed verification against direct solves.
class TableAccuracyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace atomradio
