#pragma once

#include <stdexcept>
#include <string>

namespace cotwin {

enum class Errc {
  CapExceeded,
  UnsupportedEntry,
  InvalidMatrix,
  Overflow,
  Disconnected,
  InvalidChamberSystem,
  NotInResidue,
  UnsupportedQ,
  NameClash,
  NotSpherical,
  PreconditionFailed,
  EndpointMismatch,
  NotConnected,
  NotParallel,
  NotAdjacent,
  NoWitnessPair,
  NotOpposite,
  HomotopyInconclusive,
  NotEquivalent,
  BuildingMismatch,
  Violation,
  BuildingInvalid,
  Parse,
  Io,
};

const char* to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace cotwin
