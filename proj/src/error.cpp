#include "ocrep/error.hpp"

namespace ocrep {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Input: return "input";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::EstimatorUndefined: return "estimator-undefined";
    case ErrorKind::EstimatorSingular: return "estimator-singular";
    case ErrorKind::UnsupportedStrategy: return "unsupported-strategy";
    case ErrorKind::Numerical: return "numerical";
  }
  return "unknown";
}

}  // namespace ocrep
