#pragma once

#include <stdexcept>
#include <string>

namespace psum {

enum class Errc {
  NegativeEntry,
  NotNormalized,
  RaggedInput,
  InvalidParams,
  ShapeMismatch,
  DegenerateSum,
  LengthMismatch,
  ZeroProbabilityCell,
  AllZeroWeights,
  NotApplicable,
  SignedLimit,
  ZeroImage,
  FileNotFound,
  MalformedInput,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);
  // DegenerateSum raised mid-iteration carries the failing generation.
  Error(Errc code, const std::string& message, long generation);

  Errc code() const noexcept { return code_; }
  long generation() const noexcept { return generation_; }  // -1 when not set

 private:
  Errc code_;
  long generation_ = -1;
};

}  // namespace psum
