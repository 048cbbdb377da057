#include "allgood/error.hpp"

namespace allgood {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_instance: return "invalid-instance";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::unsupported_mode: return "unsupported-mode";
    case Errc::infeasible_floor: return "infeasible-floor";
    case Errc::zero_weight: return "zero-weight";
    case Errc::degenerate_alternative: return "degenerate-alternative";
    case Errc::degenerate_instance: return "degenerate-instance";
    case Errc::no_bad_arm: return "no-bad-arm";
    case Errc::domain: return "domain";
    case Errc::io: return "io";
  }
  return "unknown";
}

}  // namespace allgood
