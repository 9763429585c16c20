// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lyapinf Authors

#pragma once

#include <stdexcept>
#include <string>

namespace lyapinf {

enum class ErrorKind {
  Dimension,
  Input,
  Numerical,
  Precondition,
  CorruptData,
  Assumption,
  NotInformative,
  Uniqueness,
  DegenerateSet,
  Integrity,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base class of every error raised by the library. The kind selects the
/// status code reported across the C boundary.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

template <ErrorKind K>
class KindedError : public Error {
 public:
  explicit KindedError(const std::string& what) : Error(K, what) {}
};

using DimensionError = KindedError<ErrorKind::Dimension>;
using InputError = KindedError<ErrorKind::Input>;
using NumericalError = KindedError<ErrorKind::Numerical>;
using PreconditionError = KindedError<ErrorKind::Precondition>;
using CorruptDataError = KindedError<ErrorKind::CorruptData>;
// No member of the candidate set satisfies the standing spectral assumption,
// or the supplied ground truth contradicts the prior knowledge.
using AssumptionError = KindedError<ErrorKind::Assumption>;
using NotInformativeError = KindedError<ErrorKind::NotInformative>;
using UniquenessError = KindedError<ErrorKind::Uniqueness>;
using DegenerateSetError = KindedError<ErrorKind::DegenerateSet>;
using IntegrityError = KindedError<ErrorKind::Integrity>;
using IoError = KindedError<ErrorKind::Io>;

}  // namespace lyapinf
