#pragma once

#include <stdexcept>
#include <string>

namespace allgood {

enum class Errc {
  invalid_instance,
  invalid_argument,
  unsupported_mode,
  infeasible_floor,
  zero_weight,
  degenerate_alternative,
  degenerate_instance,
  no_bad_arm,
  domain,
  io,
};

const char* to_string(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above so the
// CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace allgood
