#include "cotwin/errors.hpp"

namespace cotwin {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::UnsupportedEntry: return "UnsupportedEntry";
    case Errc::InvalidMatrix: return "InvalidMatrix";
    case Errc::Overflow: return "Overflow";
    case Errc::Disconnected: return "Disconnected";
    case Errc::InvalidChamberSystem: return "InvalidChamberSystem";
    case Errc::NotInResidue: return "NotInResidue";
    case Errc::UnsupportedQ: return "UnsupportedQ";
    case Errc::NameClash: return "NameClash";
    case Errc::NotSpherical: return "NotSpherical";
    case Errc::PreconditionFailed: return "PreconditionFailed";
    case Errc::EndpointMismatch: return "EndpointMismatch";
    case Errc::NotConnected: return "NotConnected";
    case Errc::NotParallel: return "NotParallel";
    case Errc::NotAdjacent: return "NotAdjacent";
    case Errc::NoWitnessPair: return "NoWitnessPair";
    case Errc::NotOpposite: return "NotOpposite";
    case Errc::HomotopyInconclusive: return "HomotopyInconclusive";
    case Errc::NotEquivalent: return "NotEquivalent";
    case Errc::BuildingMismatch: return "BuildingMismatch";
    case Errc::Violation: return "Violation";
    case Errc::BuildingInvalid: return "BuildingInvalid";
    case Errc::Parse: return "Parse";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace cotwin
