#include "paperfold/errors.hpp"

namespace paperfold {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotSimple: return "NotSimple";
    case ErrorKind::WrongOrientation: return "WrongOrientation";
    case ErrorKind::DegenerateVertex: return "DegenerateVertex";
    case ErrorKind::PointOutside: return "PointOutside";
    case ErrorKind::NotOnPairing: return "NotOnPairing";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::VertexInInterval: return "VertexInInterval";
    case ErrorKind::Overlap: return "Overlap";
    case ErrorKind::NotFull: return "NotFull";
    case ErrorKind::SchemeNotPlain: return "SchemeNotPlain";
    case ErrorKind::InteriorPairPoint: return "InteriorPairPoint";
    case ErrorKind::MeshTooFine: return "MeshTooFine";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::PolygonMismatch: return "PolygonMismatch";
    case ErrorKind::NotSurjective: return "NotSurjective";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ArcNotPlain: return "ArcNotPlain";
    case ErrorKind::ArcCrossesTwoVertices: return "ArcCrossesTwoVertices";
    case ErrorKind::PatternInvalid: return "PatternInvalid";
  }
  return "Error";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

void fail(ErrorKind kind, const std::string& detail) { throw Error(kind, detail); }

}  // namespace paperfold
