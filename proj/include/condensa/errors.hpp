#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace condensa {

// Input data failed a structural contract (bad multiplication table,
// non-quadratic form, malformed scenario, ...).  The CLI maps this to exit
// code 2.  Messages carry a concrete witness whenever one exists.
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// An exhaustive operation would exceed its size cap.  The message names the
// cap so the caller can decide whether raising it is reasonable.  The CLI
// maps this to exit code 3.
class cap_error : public std::runtime_error {
 public:
  explicit cap_error(const std::string& what) : std::runtime_error(what) {}
};

// Default cap on group orders fed to exhaustive operations.
inline constexpr std::size_t kDefaultCap = 200;

// Default cap on brute-force cochain enumeration (h2_classes candidates).
inline constexpr std::size_t kDefaultCochainCap = 1000000;

[[noreturn]] inline void fail_validation(const std::string& msg) {
  throw validation_error(msg);
}

[[noreturn]] inline void fail_cap(const std::string& op, std::size_t size, std::size_t cap) {
  throw cap_error(op + ": size " + std::to_string(size) + " exceeds cap " +
                  std::to_string(cap));
}

}  // namespace condensa
