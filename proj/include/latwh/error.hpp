// SPDX-FileCopyrightText: 2026 latwh contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace latwh {

using cplx = std::complex<double>;

enum class ErrorCode {
  InvalidArgument,
  NonRectilinearBoundary,
  MissingNeighborValue,
  UnsupportedClass,
  DomainClassificationFailed,
  DegenerateExtent,
  OnCut,
  KernelSingular,
  AtIncidencePole,
  ArityMismatch,
  NotApplicable,
  NotKhrapkov,
  NonzeroIndex,
  KernelVanishesOnContour,
  SlowCoefficientDecay,
  QuadratureNotConverged,
  SingularSystem,
  ExtentTooSmall,
  ParseError,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonRectilinearBoundary: return "NonRectilinearBoundary";
    case ErrorCode::MissingNeighborValue: return "MissingNeighborValue";
    case ErrorCode::UnsupportedClass: return "UnsupportedClass";
    case ErrorCode::DomainClassificationFailed: return "DomainClassificationFailed";
    case ErrorCode::DegenerateExtent: return "DegenerateExtent";
    case ErrorCode::OnCut: return "OnCut";
    case ErrorCode::KernelSingular: return "KernelSingular";
    case ErrorCode::AtIncidencePole: return "AtIncidencePole";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::NotKhrapkov: return "NotKhrapkov";
    case ErrorCode::NonzeroIndex: return "NonzeroIndex";
    case ErrorCode::KernelVanishesOnContour: return "KernelVanishesOnContour";
    case ErrorCode::SlowCoefficientDecay: return "SlowCoefficientDecay";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::ExtentTooSmall: return "ExtentTooSmall";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// True for failures of a numerical stage (as opposed to bad input).
inline bool is_numerical(ErrorCode c) {
  switch (c) {
    case ErrorCode::OnCut:
    case ErrorCode::KernelSingular:
    case ErrorCode::AtIncidencePole:
    case ErrorCode::NonzeroIndex:
    case ErrorCode::KernelVanishesOnContour:
    case ErrorCode::SlowCoefficientDecay:
    case ErrorCode::QuadratureNotConverged:
    case ErrorCode::SingularSystem:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace latwh
