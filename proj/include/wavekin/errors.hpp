#pragma once
#include <stdexcept>
#include <string>

namespace wavekin {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PoleError : Error { using Error::Error; };
struct ContourError : Error { using Error::Error; };
struct TailModelError : Error { using Error::Error; };
struct BracketError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct RegimeError : Error { using Error::Error; };
struct BranchError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct ResolutionError : Error { using Error::Error; };
struct StepCollapseError : Error { using Error::Error; };
struct TruncationError : Error { using Error::Error; };

}  // namespace wavekin
