#include "skewtent/error.hpp"

namespace skewtent {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidMap: return "InvalidMap";
    case ErrorCode::NotReducible: return "NotReducible";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::WrongRegion: return "WrongRegion";
    case ErrorCode::DepthOverflow: return "DepthOverflow";
    case ErrorCode::PrecisionLoss: return "PrecisionLoss";
    case ErrorCode::NotClassified: return "NotClassified";
    case ErrorCode::Inadmissible: return "Inadmissible";
    case ErrorCode::InvalidWord: return "InvalidWord";
    case ErrorCode::NoBoundedOrbit: return "NoBoundedOrbit";
  }
  return "Unknown";
}

}  // namespace skewtent
