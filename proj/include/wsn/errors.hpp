#pragma once

#include <stdexcept>
#include <string>

namespace wsn {

// Base class for all domain errors raised by the simulator library.
struct SimError : std::runtime_error {
  explicit SimError(const std::string& msg) : std::runtime_error(msg) {}
};

// A configuration problem.  `field` names the offending key so the CLI can
// report "config error: <field>: <message>" and exit with code 1.
struct ConfigError : SimError {
  std::string field;
  ConfigError(std::string field_, const std::string& msg)
      : SimError(field_ + ": " + msg), field(std::move(field_)) {}
};

}  // namespace wsn
