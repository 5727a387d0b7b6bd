#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "latcomp/lattice.hpp"
#include "latcomp/minor.hpp"

namespace latcomp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The support branches and no unique walk cover exists.
class AmbiguousDecomposition : public Error {
 public:
  explicit AmbiguousDecomposition(std::vector<LatticePoint> branching);
  [[nodiscard]] const std::vector<LatticePoint>& branching() const { return branching_; }

 private:
  std::vector<LatticePoint> branching_;
};

class NotACircuit : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class NotReflex : public Error {
 public:
  using Error::Error;
};

class InvalidWitness : public Error {
 public:
  using Error::Error;
};

class InvalidWalk : public Error {
 public:
  using Error::Error;
};

class NotAStepAnchor : public Error {
 public:
  using Error::Error;
};

class SpanViolation : public Error {
 public:
  using Error::Error;
};

class CoverMismatch : public Error {
 public:
  using Error::Error;
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

/// A propagation minor's linear coefficient vanished (relative to its cofactors).
class GenericityViolation : public Error {
 public:
  GenericityViolation(LatticePoint entry, MinorSpec minor, double alpha, double scale);
  [[nodiscard]] LatticePoint entry() const { return entry_; }
  [[nodiscard]] const MinorSpec& minor() const { return minor_; }
  [[nodiscard]] double alpha() const { return alpha_; }
  [[nodiscard]] double scale() const { return scale_; }

 private:
  LatticePoint entry_;
  MinorSpec minor_;
  double alpha_;
  double scale_;
};

/// A scheduled entry admits no minor built from known entries.
class ScheduleGap : public Error {
 public:
  ScheduleGap(std::string what, std::vector<LatticePoint> entries);
  [[nodiscard]] const std::vector<LatticePoint>& entries() const { return entries_; }

 private:
  std::vector<LatticePoint> entries_;
};

class InexactInput : public Error {
 public:
  using Error::Error;
};

class MalformedCertificate : public Error {
 public:
  using Error::Error;
};

class DimensionTooSmall : public Error {
 public:
  using Error::Error;
};

class ProfileMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace latcomp
