#pragma once

#include <stdexcept>
#include <string>

namespace paperfold {

enum class ErrorKind {
  NotSimple,
  WrongOrientation,
  DegenerateVertex,
  PointOutside,
  NotOnPairing,
  LengthMismatch,
  VertexInInterval,
  Overlap,
  NotFull,
  SchemeNotPlain,
  InteriorPairPoint,
  MeshTooFine,
  BudgetExceeded,
  PolygonMismatch,
  NotSurjective,
  PreconditionViolated,
  ParseError,
  ArcNotPlain,
  ArcCrossesTwoVertices,
  PatternInvalid,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& detail);

}  // namespace paperfold
