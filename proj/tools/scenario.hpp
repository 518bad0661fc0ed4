// Scenario inputs shared by every subcommand: read from a JSON document and
// overridden by command-line flags.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xdof/allocation.hpp"
#include "xdof/channel.hpp"
#include "xdof/numerics.hpp"
#include "xdof/rational.hpp"
#include "xdof/serialize.hpp"

namespace xdof::cli {

struct Scenario {
  AntennaConfig config{3, 3, 3, 3};
  std::optional<RankProfile> profile;  // nullopt: full rank
  MessageMask mask = MessageMask::x();
  int T_max = 6;
  std::array<Rational, 4> weights{1, 1, 1, 1};
  std::uint64_t seed = 1;
  TolerancePolicy tol;
  ExtensionMode mode = ExtensionMode::kConstant;

  RankProfile ranks() const { return profile ? *profile : RankProfile::full(config); }
  // Throws InvalidInput when fields are inconsistent.
  void validate() const;
};

Json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const Json& j);
Scenario load_scenario(const std::string& path);

// "lo:hi" (inclusive) or "a,b,c".
std::vector<int> parse_int_range(const std::string& text);
// Four comma-separated rationals.
std::array<Rational, 4> parse_weights(const std::string& text);
// Four comma-separated non-negative integers.
std::array<int, 4> parse_counts(const std::string& text);

}  // namespace xdof::cli
