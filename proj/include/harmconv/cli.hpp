#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "harmconv/families.hpp"

namespace harmconv {

enum ExitCode : int {
  kExitPass = 0,
  kExitFailure = 1,  // runtime failure or a failed verdict
  kExitConfiguration = 2,
  kExitInconclusive = 3,
};

// Reals and angles: plain numbers, fractions ("1/3") and multiples of pi
// ("pi", "-pi/2", "3pi/4", "2*pi/3"). Throws ParseError.
double parse_real(std::string_view text);

// "kind" or "kind:key=value,..." where keys are the family's parameters plus
// "order" and, for minus-t, "target" (plus|minus). Throws ConfigurationError.
FamilySpec parse_family_spec(std::string_view text, std::size_t default_order = kDefaultOrder);
// Canonical form accepted by parse_family_spec; values at 17 digits.
std::string format_family_spec(const FamilySpec& spec);

struct ConfigEntry {
  std::size_t line;
  std::string key;
  std::string value;
};

// Flat "key = value" lines; '#' starts a comment. Throws ParseError.
std::vector<ConfigEntry> parse_config(std::string_view text);

// Runs one invocation: args excludes the program name. Output goes to `out`
// unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace harmconv
