#include "scenario.hpp"

#include <fstream>
#include <sstream>

#include "xdof/error.hpp"

namespace xdof::cli {
namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.push_back("");
  return out;
}

int parse_int(const std::string& text) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(text, &pos);
    if (pos == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw InvalidInput("expected an integer, got '" + text + "'");
}

const char* mode_name(ExtensionMode m) { return m == ExtensionMode::kConstant ? "constant" : "time-varying"; }

ExtensionMode parse_mode(const std::string& text) {
  if (text == "constant") return ExtensionMode::kConstant;
  if (text == "time-varying") return ExtensionMode::kTimeVarying;
  throw InvalidInput("channel mode must be 'constant' or 'time-varying', got '" + text + "'");
}

}  // namespace

void Scenario::validate() const {
  config.validate();
  if (profile) profile->validate(config);
  mask.validate();
  if (T_max < 1) throw InvalidInput("T_max must be >= 1");
  bool any = false;
  for (const auto& w : weights) {
    if (w.sign() < 0) throw InvalidInput("weights must be non-negative");
    any = any || !w.is_zero();
  }
  if (!any) throw InvalidInput("weights must not all be zero");
  tol.validate();
}

Json scenario_to_json(const Scenario& s) {
  Json j{{"config", s.config},
         {"profile", s.profile ? Json(*s.profile) : Json("full")},
         {"mask", s.mask.name()},
         {"T_max", s.T_max},
         {"weights", std::vector<Rational>(s.weights.begin(), s.weights.end())},
         {"seed", s.seed},
         {"tol_rank", s.tol.rank_rel_tol},
         {"tol_res", s.tol.residual_tol},
         {"mode", mode_name(s.mode)}};
  return j;
}

Scenario scenario_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidInput("scenario must be a JSON object");
  static const char* known[] = {"config", "profile", "mask", "T_max", "weights", "seed", "tol_rank", "tol_res", "mode"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) throw InvalidInput("unknown scenario field '" + it.key() + "'");
  }
  Scenario s;
  try {
    if (j.contains("config")) s.config = j.at("config").get<AntennaConfig>();
    if (j.contains("profile")) {
      const Json& p = j.at("profile");
      if (p.is_string() && p.get<std::string>() == "full") {
        s.profile.reset();
      } else {
        s.profile = p.get<RankProfile>();
      }
    }
    if (j.contains("mask")) s.mask = MessageMask::parse(j.at("mask").get<std::string>());
    if (j.contains("T_max")) s.T_max = j.at("T_max").get<int>();
    if (j.contains("weights")) {
      const auto w = j.at("weights").get<std::vector<Rational>>();
      if (w.size() != 4) throw InvalidInput("weights needs 4 entries");
      for (int m = 0; m < 4; ++m) s.weights[m] = w[m];
    }
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("tol_rank")) s.tol.rank_rel_tol = j.at("tol_rank").get<double>();
    if (j.contains("tol_res")) s.tol.residual_tol = j.at("tol_res").get<double>();
    if (j.contains("mode")) s.mode = parse_mode(j.at("mode").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("scenario: ") + e.what());
  }
  s.validate();
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open scenario file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("scenario '" + path + "': " + e.what());
  }
  return scenario_from_json(j);
}

std::vector<int> parse_int_range(const std::string& text) {
  std::vector<int> out;
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const int lo = parse_int(text.substr(0, colon)), hi = parse_int(text.substr(colon + 1));
    if (hi < lo) throw InvalidInput("empty range '" + text + "'");
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  for (const auto& item : split(text, ',')) out.push_back(parse_int(item));
  if (out.empty()) throw InvalidInput("empty list");
  return out;
}

std::array<Rational, 4> parse_weights(const std::string& text) {
  const auto items = split(text, ',');
  if (items.size() != 4) throw InvalidInput("weights need four comma-separated values");
  std::array<Rational, 4> w;
  for (int m = 0; m < 4; ++m) w[m] = Rational::parse(items[m]);
  return w;
}

std::array<int, 4> parse_counts(const std::string& text) {
  const auto items = split(text, ',');
  if (items.size() != 4) throw InvalidInput("stream counts need four comma-separated values");
  std::array<int, 4> c;
  for (int m = 0; m < 4; ++m) {
    c[m] = parse_int(items[m]);
    if (c[m] < 0) throw InvalidInput("stream counts must be non-negative");
  }
  return c;
}

}  // namespace xdof::cli
