#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stitlab {

enum class Errc {
  NoIntersection,
  DegenerateCut,
  ZeroLength,
  EmptyPolytope,
  InvalidWindow,
  MaxCellsExceeded,
  SegmentOutsideWindow,
  NotContained,
  WindowMismatch,
  InsufficientFresh,
  NonPositiveFactor,
  BadInnerWindow,
  BadDimension,
  QuadratureFailure,
  InsufficientSamples,
  InvalidArgument,
  Config,
};

std::string_view to_string(Errc code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the engine's resampling loop, the CLI's exit-code mapping) can
/// dispatch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace stitlab
