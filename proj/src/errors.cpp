#include "psum/errors.hpp"

namespace psum {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::NegativeEntry: return "NegativeEntry";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::RaggedInput: return "RaggedInput";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::DegenerateSum: return "DegenerateSum";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::ZeroProbabilityCell: return "ZeroProbabilityCell";
    case Errc::AllZeroWeights: return "AllZeroWeights";
    case Errc::NotApplicable: return "NotApplicable";
    case Errc::SignedLimit: return "SignedLimit";
    case Errc::ZeroImage: return "ZeroImage";
    case Errc::FileNotFound: return "FileNotFound";
    case Errc::MalformedInput: return "MalformedInput";
  }
  return "UnknownError";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

Error::Error(Errc code, const std::string& message, long generation)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message),
      code_(code),
      generation_(generation) {}

}  // namespace psum
