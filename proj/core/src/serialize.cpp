#include "xdof/serialize.hpp"

#include "xdof/error.hpp"

namespace xdof {
namespace {

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

CMatrix matrix_from_json(const Json& j, int rows, int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw InvalidInput("channel JSON: wrong number of rows");
  CMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw InvalidInput("channel JSON: wrong number of columns");
    for (int c = 0; c < cols; ++c) {
      const Json& e = row[c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw InvalidInput("channel JSON: entries must be [re, im] pairs");
      m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  require_finite(m, "channel JSON");
  return m;
}

Json ints(const std::array<int, 4>& a) { return Json(std::vector<int>(a.begin(), a.end())); }

}  // namespace

void to_json(Json& j, const Rational& r) { j = r.str(); }

void from_json(const Json& j, Rational& r) {
  if (j.is_number_integer()) {
    r = Rational(j.get<long long>());
  } else if (j.is_string()) {
    r = Rational::parse(j.get<std::string>());
  } else {
    throw InvalidInput("expected a rational as \"p/q\" or an integer");
  }
}

void to_json(Json& j, const AntennaConfig& c) { j = c.str(); }
void from_json(const Json& j, AntennaConfig& c) {
  if (!j.is_string()) throw InvalidInput("config must be a string \"M1,M2,N1,N2\"");
  c = AntennaConfig::parse(j.get<std::string>());
}

void to_json(Json& j, const RankProfile& p) { j = p.str(); }
void from_json(const Json& j, RankProfile& p) {
  if (!j.is_string()) throw InvalidInput("profile must be a string \"r11,r12,r21,r22\"");
  p = RankProfile::parse(j.get<std::string>());
}

void to_json(Json& j, const StreamAllocation& a) {
  j = Json{{"T", a.T}, {"side", side_name(a.side)}, {"ia", ints(a.ia)}, {"ns", ints(a.ns)},
           {"dof", a.total_dof()}};
}

void from_json(const Json& j, StreamAllocation& a) {
  try {
    a.T = j.at("T").get<int>();
    const auto ia = j.at("ia").get<std::vector<int>>();
    const auto ns = j.at("ns").get<std::vector<int>>();
    if (ia.size() != 4 || ns.size() != 4) throw InvalidInput("allocation needs 4 ia and 4 ns entries");
    for (int m = 0; m < 4; ++m) {
      a.ia[m] = ia[m];
      a.ns[m] = ns[m];
    }
    const std::string side = j.value("side", std::string(side_name(Side::kOriginal)));
    if (side == side_name(Side::kOriginal)) {
      a.side = Side::kOriginal;
    } else if (side == side_name(Side::kReciprocal)) {
      a.side = Side::kReciprocal;
    } else {
      throw InvalidInput("unknown allocation side: " + side);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("allocation JSON: ") + e.what());
  }
  if (a.T < 1) throw InvalidInput("allocation JSON: T must be >= 1");
}

void to_json(Json& j, const DofConstraint& c) {
  j = Json{{"label", c.label}, {"a", std::vector<long long>(c.a.begin(), c.a.end())}, {"b", c.b}};
}

void to_json(Json& j, const DofRegion& r) { j = Json{{"constraints", r.constraints}}; }

void to_json(Json& j, const AllocationResult& r) {
  j = Json{{"dof", r.dof},
           {"allocation", r.best},
           {"per_message_dof", std::vector<Rational>(r.per_message_dof.begin(), r.per_message_dof.end())},
           {"nodes", r.stats.nodes},
           {"seconds", r.stats.seconds}};
}

void to_json(Json& j, const VerificationReport& r) {
  j = Json{{"seed", r.seed},
           {"passed", r.passed},
           {"max_zero_forcing_residual", r.max_zero_forcing_residual},
           {"max_alignment_residual", r.max_alignment_residual},
           {"min_G_singular_value", std::vector<double>(r.min_G_singular_value.begin(), r.min_G_singular_value.end())},
           {"decode_rank_ok", std::vector<bool>(r.decode_rank_ok.begin(), r.decode_rank_ok.end())},
           {"achieved_dof", r.achieved_dof},
           {"failure", r.failure}};
}

void to_json(Json& j, const ClosedFormResult& r) {
  j = Json{{"table", table_name(r.table)},
           {"row", r.row},
           {"regime", r.regime_label},
           {"via_reciprocal", r.via_reciprocal},
           {"row_dof", r.row_dof},
           {"dof_total", r.dof_total},
           {"printed", r.printed}};
  j["allocation_hint"] = r.allocation_hint ? Json(*r.allocation_hint) : Json(nullptr);
}

void to_json(Json& j, const GapReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"weights", std::vector<Rational>(e.weights.begin(), e.weights.end())},
                       {"outer", e.outer},
                       {"inner", e.inner},
                       {"gap", e.gap}});
  j = Json{{"config", r.config}, {"max_gap", r.max_gap}, {"entries", entries}};
}

Json channel_to_json(const ChannelSet& ch) {
  Json H = Json::array();
  for (const auto& m : ch.H) H.push_back(matrix_to_json(m));
  return Json{{"config", ch.config}, {"profile", ch.profile}, {"H", H}};
}

ChannelSet channel_from_json(const Json& j, const TolerancePolicy& pol) {
  if (!j.is_object() || !j.contains("config")) throw InvalidInput("channel JSON needs a \"config\"");
  const auto cfg = j.at("config").get<AntennaConfig>();
  cfg.validate();
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer())
      throw InvalidInput("channel JSON: seed must be an integer");
    const auto seed = j.at("seed").get<std::uint64_t>();
    if (!j.contains("profile")) return generate_full_rank(cfg, seed);
    const auto prof = j.at("profile").get<RankProfile>();
    prof.validate(cfg);
    return prof.is_full(cfg) ? generate_full_rank(cfg, seed) : generate_rank_deficient(cfg, prof, seed);
  }
  if (!j.contains("H") || !j.at("H").is_array() || j.at("H").size() != 4)
    throw InvalidInput("channel JSON needs a \"seed\" or four matrices in \"H\"");
  ChannelSet ch;
  ch.config = cfg;
  for (int i = 1; i <= 2; ++i)
    for (int t = 1; t <= 2; ++t) {
      ch.h(i, t) = matrix_from_json(j.at("H")[message_index(i, t)], cfg.rx(i), cfg.tx(t));
      ch.profile.at(i, t) = numerical_rank(ch.h(i, t), pol);
    }
  ch.validate(pol);
  return ch;
}

}  // namespace xdof
