// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blebsim Authors

#pragma once

#include <stdexcept>
#include <string>

namespace bleb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define BLEB_DEFINE_ERROR(Name)             \
  class Name : public Error {               \
   public:                                  \
    explicit Name(const std::string& what)  \
        : Error(std::string(#Name ": ") + what) {} \
  }

// mesh
BLEB_DEFINE_ERROR(DegenerateTriangle);
BLEB_DEFINE_ERROR(NonManifoldEdge);
BLEB_DEFINE_ERROR(InconsistentOrientation);
BLEB_DEFINE_ERROR(ProjectorFailure);
BLEB_DEFINE_ERROR(ZeroNormal);
// geometry
BLEB_DEFINE_ERROR(DomainError);
// assembly
BLEB_DEFINE_ERROR(NegativeCoefficient);
// forces
BLEB_DEFINE_ERROR(BadMode);
BLEB_DEFINE_ERROR(MissingEpsilon);
// solver
BLEB_DEFINE_ERROR(ZeroDiagonal);
BLEB_DEFINE_ERROR(SingularSystem);
// io / config
BLEB_DEFINE_ERROR(ParseError);
BLEB_DEFINE_ERROR(UnsupportedFace);
BLEB_DEFINE_ERROR(UnknownKey);
BLEB_DEFINE_ERROR(BadValue);
BLEB_DEFINE_ERROR(InvariantViolation);
BLEB_DEFINE_ERROR(IoError);

#undef BLEB_DEFINE_ERROR

// CG failure; keeps the last residual so callers can report how far it got.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, double residual, int iterations)
      : Error("NoConvergence: " + what), residual_(residual), iterations_(iterations) {}
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

// Raised by the time loop; wraps the solver failure with the step index.
class SolverFailure : public Error {
 public:
  SolverFailure(const std::string& what, long step)
      : Error("SolverFailure at step " + std::to_string(step) + ": " + what), step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

}  // namespace bleb
