// xdof: DoF bounds, stream allocation, table reproduction and precoder
// verification for the two-user MIMO X channel.
//
// Exit codes: 0 success, 2 invalid input, 3 verification failure,
// 4 table mismatch.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scenario.hpp"
#include "xdof/allocator.hpp"
#include "xdof/bounds.hpp"
#include "xdof/error.hpp"
#include "xdof/parallel.hpp"
#include "xdof/serialize.hpp"
#include "xdof/synthesis.hpp"
#include "xdof/tables.hpp"
#include "xdof/version.hpp"

namespace xdof::cli {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitVerify = 3;
constexpr int kExitMismatch = 4;

// Flags shared by all subcommands; unset flags keep the scenario value.
struct CommonFlags {
  std::string scenario_path;
  std::optional<std::string> config, ranks, mask, weights, mode;
  std::optional<int> tmax;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol_rank, tol_res;
  int jobs = 1;
  bool timing = false;

  void attach(CLI::App* app) {
    app->add_option("--scenario", scenario_path, "Scenario JSON file (flags override its fields)");
    app->add_option("--config", config, "Antenna counts M1,M2,N1,N2");
    app->add_option("--ranks", ranks, "Link ranks r11,r12,r21,r22 or 'full'");
    app->add_option("--mask", mask, "Active messages: x|ic|bc|mac|z11|z12|z21|z22");
    app->add_option("--weights", weights, "Message weights w11,w12,w21,w22 (rationals)");
    app->add_option("--tmax", tmax, "Largest symbol extension searched");
    app->add_option("--seed", seed, "Base random seed");
    app->add_option("--tol-rank", tol_rank, "Relative singular-value threshold for rank decisions");
    app->add_option("--tol-res", tol_res, "Relative residual threshold for verification");
    app->add_option("--mode", mode, "Channel extension: constant|time-varying");
    app->add_option("--jobs", jobs, "Worker threads for batch work (0 = all cores)");
    app->add_flag("--timing", timing, "Report elapsed time on stderr");
  }

  Scenario resolve() const {
    Scenario s = scenario_path.empty() ? Scenario{} : load_scenario(scenario_path);
    if (config) s.config = AntennaConfig::parse(*config);
    if (ranks) {
      if (*ranks == "full") {
        s.profile.reset();
      } else {
        s.profile = RankProfile::parse(*ranks);
      }
    }
    if (mask) s.mask = MessageMask::parse(*mask);
    if (weights) s.weights = parse_weights(*weights);
    if (tmax) s.T_max = *tmax;
    if (seed) s.seed = *seed;
    if (tol_rank) s.tol.rank_rel_tol = *tol_rank;
    if (tol_res) s.tol.residual_tol = *tol_res;
    if (mode) s = scenario_from_json([&] {
      Json j = scenario_to_json(s);
      j["mode"] = *mode;
      return j;
    }());
    s.validate();
    return s;
  }
};

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

Json bundle(const std::string& command, const Scenario& s, Json result) {
  return Json{{"command", command}, {"version", kVersion}, {"scenario", scenario_to_json(s)}, {"result", std::move(result)}};
}

std::array<Rational, 4> masked_weights(const Scenario& s) {
  std::array<Rational, 4> w = s.weights;
  for (int m = 0; m < 4; ++m)
    if (!s.mask.active[m]) w[m] = Rational(0);
  return w;
}

// Outer-bound region matching the mask: the Z region for three-message
// masks, otherwise the X region (valid for every sub-network).
DofRegion outer_region(const Scenario& s) {
  if (s.mask.count() == 3) {
    for (int m = 0; m < 4; ++m)
      if (!s.mask.active[m]) return z_outer_region(s.config, message_rx(m), message_tx(m));
  }
  return x_outer_region(s.config);
}

std::optional<Rational> weighted_outer(const Scenario& s) {
  const auto w = masked_weights(s);
  bool any = false;
  for (const auto& v : w) any = any || !v.is_zero();
  if (!any) return std::nullopt;
  return lp_max_weighted(outer_region(s), w).value;
}

int cmd_bound(const Scenario& s) {
  Json per_z;
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) per_z["z" + std::to_string(i) + std::to_string(j)] = z_total_outer(s.config, i, j);
  const auto outer = weighted_outer(s);
  Json result{{"outer_total", outer ? Json(*outer) : Json(nullptr)},
              {"x_total_outer", x_total_outer(s.config)},
              {"region_constraints", outer_region(s)},
              {"per_Z_totals", per_z}};
  print_json(bundle("bound", s, result));
  return kExitOk;
}

int cmd_allocate(const Scenario& s) {
  const AllocationResult r = sweep_best(s.config, s.ranks(), s.mask, s.weights, {s.T_max, true});
  Json result = r;
  result["side"] = side_name(r.best.side);
  result["T"] = r.best.T;
  // The outer regions assume generic full-rank links.
  std::optional<Rational> outer;
  if (s.ranks().is_full(s.config)) outer = weighted_outer(s);
  result["outer"] = outer ? Json(*outer) : Json(nullptr);
  result["gap_to_outer"] = outer && !outer->is_zero() ? Json((*outer - r.dof) / *outer) : Json(nullptr);
  print_json(bundle("allocate", s, result));
  return kExitOk;
}

struct VerifyFlags {
  int trials = 100;
  std::string ia, ns, side = "original";
  std::optional<int> T;
  std::string channel_path;
  bool resample = false;
  int resample_limit = 8;
};

StreamAllocation verify_allocation(const Scenario& s, const VerifyFlags& f) {
  if (f.ia.empty() && f.ns.empty() && !f.T) {
    return sweep_best(s.config, s.ranks(), s.mask, s.weights, {s.T_max, true}).best;
  }
  StreamAllocation a;
  a.T = f.T.value_or(1);
  if (a.T < 1) throw InvalidInput("--T must be >= 1");
  if (!f.ia.empty()) a.ia = parse_counts(f.ia);
  if (!f.ns.empty()) a.ns = parse_counts(f.ns);
  if (f.side == "original") {
    a.side = Side::kOriginal;
  } else if (f.side == "reciprocal") {
    a.side = Side::kReciprocal;
  } else {
    throw InvalidInput("--side must be 'original' or 'reciprocal'");
  }
  for (int m = 0; m < 4; ++m)
    if (!s.mask.active[m] && a.streams(m) > 0)
      throw InvalidInput("allocation carries streams for a message outside the mask");
  return a;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void print_report_row(const VerificationReport& r, std::optional<std::uint64_t> resampled_from) {
  std::cout << r.seed << ',' << (r.passed ? "true" : "false") << ',' << fmt(r.max_zero_forcing_residual) << ','
            << fmt(r.max_alignment_residual) << ',' << fmt(r.min_G_singular_value[0]) << ','
            << fmt(r.min_G_singular_value[1]) << ',' << r.achieved_dof.str() << ','
            << (resampled_from ? std::to_string(*resampled_from) : "") << ',' << csv_field(r.failure) << "\n";
}

int cmd_verify(const Scenario& s, const VerifyFlags& f, int jobs) {
  const StreamAllocation alloc = verify_allocation(s, f);
  if (!f.channel_path.empty()) {
    std::ifstream in(f.channel_path);
    if (!in) throw InvalidInput("cannot open channel file '" + f.channel_path + "'");
    Json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw InvalidInput(std::string("channel file: ") + e.what());
    }
    const ChannelSet ch = channel_from_json(doc, s.tol);
    if (!(ch.config == s.config)) throw InvalidInput("channel file config differs from the scenario config");
    VerificationReport rep;
    try {
      rep = design_and_verify(ch, alloc, derive_seed(s.seed, 0x5eed), s.tol).report;
    } catch (const FeasibilityFailure& e) {
      rep.failure = e.what();
    } catch (const InfeasibleAllocation& e) {
      rep.failure = std::string("infeasible allocation: ") + e.what();
    }
    rep.seed = s.seed;
    print_json(bundle("verify", s, Json{{"allocation", alloc}, {"report", rep}}));
    return rep.passed ? kExitOk : kExitVerify;
  }
  if (f.trials < 1) throw InvalidInput("--trials must be >= 1");
  const RankProfile ranks = s.ranks();
  // Trial k draws its channel from seed + k so a logged seed replays with
  // --seed <seed> --trials 1.
  auto rows = parallel_map(static_cast<std::size_t>(f.trials), jobs, [&](std::size_t k) {
    std::vector<std::pair<VerificationReport, std::optional<std::uint64_t>>> out;
    const std::uint64_t seed = s.seed + k;
    out.emplace_back(verify_trial(s.config, ranks, alloc, seed, s.tol, {}, s.mode), std::nullopt);
    for (int attempt = 1; f.resample && !out.back().first.passed && attempt <= f.resample_limit; ++attempt)
      out.emplace_back(verify_trial(s.config, ranks, alloc, derive_seed(seed, attempt), s.tol, {}, s.mode), seed);
    return out;
  });
  std::cout << "seed,passed,max_zero_forcing_residual,max_alignment_residual,min_sv_rx1,min_sv_rx2,achieved_dof,"
               "resampled_from,failure\n";
  int failures = 0;
  for (const auto& trial : rows) {
    for (const auto& [rep, from] : trial) print_report_row(rep, from);
    if (!trial.back().first.passed) ++failures;
  }
  std::cerr << "verify: " << (f.trials - failures) << "/" << f.trials << " trials passed (allocation T=" << alloc.T
            << ", side " << side_name(alloc.side) << ", dof " << alloc.total_dof() << ")\n";
  return failures == 0 ? kExitOk : kExitVerify;
}

struct TableRowOut {
  std::string line;
  bool match = true;
};

std::vector<TableId> select_tables(const std::string& which) {
  std::vector<TableId> out;
  for (TableId id : all_tables()) {
    const bool app = is_appendix_table(id);
    if (which == "all" || (which == "main" && !app) || (which == "appendix" && app)) out.push_back(id);
  }
  if (!out.empty()) return out;
  if (which.find(':') != std::string::npos) {
    const auto colon = which.find(':');
    const int lo = static_cast<int>(parse_table(which.substr(0, colon)));
    const int hi = static_cast<int>(parse_table(which.substr(colon + 1)));
    for (int i = lo; i <= hi; ++i) out.push_back(static_cast<TableId>(i));
    return out;
  }
  return {parse_table(which)};
}

// Mask whose allocator optimum the table's DoF column describes.
MessageMask table_mask(TableId id) {
  if (id == TableId::kXVII) return MessageMask::z(1, 2);
  if (static_cast<int>(id) >= static_cast<int>(TableId::kVIII)) return MessageMask::z(2, 1);
  return MessageMask::x();
}

Rational table_outer(TableId id, const AntennaConfig& cfg) {
  if (id == TableId::kXVII) return z_total_outer(cfg, 1, 2);
  if (static_cast<int>(id) >= static_cast<int>(TableId::kVIII)) return z_total_outer(cfg, 2, 1);
  return x_total_outer(cfg);
}

// Main tables: the closed-form total must equal the allocator's optimum.
// Appendix tables state their own program, so the printed DoF must equal
// that program's optimum at the row's T and the total must meet the outer
// bound.
TableRowOut table_row(TableId id, const AntennaConfig& cfg, int T_max) {
  const ClosedFormResult cf = evaluate_table(id, cfg);
  const AllocationResult best = sweep_best(cfg, RankProfile::full(cfg), table_mask(id), {1, 1, 1, 1}, {T_max, true});
  const Rational outer = table_outer(id, cfg);
  const IlpProblem prog = table_program(id, cfg, cf.printed.T);
  const Rational program_dof = solve_ilp(prog).dof;
  // The printed row as a program point: feasible, and optimal at its T.
  // Rows met through the reciprocal network print an original-side
  // construction whose optimality is not claimed.
  const auto x = program_vector(prog, cf.printed);
  const bool ok = x && prog.feasible(*x);
  const std::string feasible = ok ? "true" : "false";
  std::string optimal = "n/a";
  if (ok && !cf.via_reciprocal) optimal = program_dof == prog.weighted_dof(*x) ? "true" : "false";
  TableRowOut out;
  out.match = is_appendix_table(id) ? cf.row_dof == program_dof && cf.dof_total == outer : cf.dof_total == best.dof;
  std::ostringstream os;
  os << table_name(id) << ',' << csv_field(cfg.str()) << ',' << cf.row << ',' << csv_field(cf.regime_label) << ','
     << cf.printed.T;
  for (int m = 0; m < 4; ++m) os << ',' << cf.printed.ia[m] << ',' << cf.printed.ns[m];
  os << ',' << cf.row_dof << ',' << cf.dof_total << ',' << program_dof << ',' << best.dof << ',' << outer << ','
     << side_name(cf.via_reciprocal ? Side::kReciprocal : Side::kOriginal) << ',' << side_name(best.best.side) << ','
     << feasible << ',' << optimal << ',' << (out.match ? "true" : "false");
  out.line = os.str();
  return out;
}

int cmd_tables(const std::string& which, const std::string& range, int T_max, int jobs) {
  const auto values = parse_int_range(range);
  for (int v : values)
    if (v < 1) throw InvalidInput("antenna range must be >= 1");
  std::vector<std::pair<TableId, AntennaConfig>> work;
  for (TableId id : select_tables(which)) {
    const TableSpec& spec = table_spec(id);
    for (int M1 : values)
      for (int M2 : values)
        for (int N1 : values)
          for (int N2 : values) {
            const AntennaConfig cfg{M1, M2, N1, N2};
            if (!spec.precondition(cfg)) continue;
            bool any = false;
            for (const auto& row : spec.rows) any = any || row.guard(cfg);
            if (any) work.emplace_back(id, cfg);
          }
  }
  const auto rows = parallel_map(work.size(), jobs, [&](std::size_t k) {
    return table_row(work[k].first, work[k].second, T_max);
  });
  std::cout << "table,config,row,regime,T,d11ia,d11ns,d12ia,d12ns,d21ia,d21ns,d22ia,d22ns,row_dof,dof_total,"
               "program_dof,allocator_dof,outer,side,allocator_side,row_feasible,row_optimal,match\n";
  int mismatches = 0;
  for (const auto& r : rows) {
    std::cout << r.line << "\n";
    if (!r.match) ++mismatches;
  }
  std::cerr << "tables: " << rows.size() - mismatches << "/" << rows.size() << " rows match the allocator\n";
  return mismatches == 0 ? kExitOk : kExitMismatch;
}

int cmd_figure5(int M, const std::string& rd_text, const std::string& rc_text, int T_max, int jobs) {
  if (M < 1) throw InvalidInput("--M must be >= 1");
  std::vector<std::pair<int, int>> points;
  for (int rd : parse_int_range(rd_text))
    for (int rc : parse_int_range(rc_text)) {
      if (rd < 0 || rc < 0 || rd > M || rc > M) throw InvalidInput("ranks must lie in [0, M]");
      points.emplace_back(rd, rc);
    }
  const AntennaConfig cfg{M, M, M, M};
  const Rational full_x = x_total_outer(cfg);
  const auto rows = parallel_map(points.size(), jobs, [&](std::size_t k) {
    const auto [rd, rc] = points[k];
    const RankProfile ranks{{rd, rc, rc, rd}};
    const SweepOptions opt{T_max, true};
    const Rational bc = sweep_best(cfg, ranks, MessageMask::bc(), {1, 1, 1, 1}, opt).dof;
    const Rational ic = sweep_best(cfg, ranks, MessageMask::ic(), {1, 1, 1, 1}, opt).dof;
    const Rational x = sweep_best(cfg, ranks, MessageMask::x(), {1, 1, 1, 1}, opt).dof;
    // Cooperating sources: one 2M-antenna transmitter whose stacked links
    // have rank min(M, r_c + r_d); the second transmitter is unused.
    const AntennaConfig coop{2 * M, 1, M, M};
    const int r = std::min(M, rc + rd);
    const Rational cbc = sweep_best(coop, RankProfile{{r, 0, r, 0}}, MessageMask::bc(), {1, 1, 1, 1}, opt).dof;
    std::ostringstream os;
    os << M << ',' << rd << ',' << rc << ',' << bc << ',' << ic << ',' << cbc << ',' << x << ',' << full_x << ','
       << closed_form_rank_deficient(RankFamily::kBC, M, rc, rd) << ','
       << closed_form_rank_deficient(RankFamily::kIC, M, rc, rd) << ','
       << closed_form_rank_deficient(RankFamily::kX, M, rc, rd);
    return os.str();
  });
  std::cout << "M,r_d,r_c,dof_BC,dof_IC,dof_CoopBC,dof_X,dof_X_full_rank,closed_BC,closed_IC,closed_X\n";
  for (const auto& r : rows) std::cout << r << "\n";
  return kExitOk;
}

int cmd_probe(const std::string& range, int samples, std::uint64_t seed, int T_max, int jobs) {
  if (samples < 1) throw InvalidInput("--samples must be >= 1");
  const auto values = parse_int_range(range);
  std::vector<AntennaConfig> grid;
  for (int a : values)
    for (int b : values)
      for (int c : values)
        for (int d : values) {
          const AntennaConfig cfg{a, b, c, d};
          cfg.validate();
          grid.push_back(cfg);
        }
  const auto weights = sample_weights(samples, seed);
  const auto reports = parallel_map(grid.size(), jobs, [&](std::size_t k) {
    return conjecture_probe(grid[k], weights, T_max);
  });
  std::cout << "config,samples,max_gap,worst_weights,outer,inner\n";
  Rational overall(0);
  int tight = 0;
  for (const auto& r : reports) {
    const GapEntry* worst = &r.entries.front();
    for (const auto& e : r.entries)
      if (e.gap > worst->gap) worst = &e;
    std::ostringstream w;
    for (int m = 0; m < 4; ++m) w << (m ? ";" : "") << worst->weights[m];
    std::cout << csv_field(r.config.str()) << ',' << r.entries.size() << ',' << r.max_gap << ','
              << w.str() << ',' << worst->outer << ',' << worst->inner << "\n";
    overall = max_of({overall, r.max_gap});
    if (r.max_gap.is_zero()) ++tight;
  }
  std::cerr << "probe: " << tight << "/" << reports.size() << " configurations tight, max gap " << overall << "\n";
  return kExitOk;
}

}  // namespace
}  // namespace xdof::cli

int main(int argc, char** argv) {
  using namespace xdof::cli;
  CLI::App app{"DoF bounds, stream allocation and precoder verification for the two-user MIMO X channel"};
  app.require_subcommand(1);
  app.set_version_flag("--version", xdof::kVersion);

  CommonFlags common;
  auto* bound = app.add_subcommand("bound", "Outer bounds: total DoF, region constraints, Z-channel totals (JSON)");
  auto* allocate = app.add_subcommand("allocate", "Best stream allocation over T and network side (JSON)");
  auto* verify = app.add_subcommand("verify", "Synthesize and verify precoders on random channel draws (CSV)");
  auto* tables = app.add_subcommand("tables", "Reproduce the closed-form DoF tables against the allocator (CSV)");
  auto* figure5 = app.add_subcommand("figure5", "Rank-deficient DoF curves for BC, IC, cooperative BC and X (CSV)");
  auto* probe = app.add_subcommand("probe", "Weighted outer-vs-achievable gap over an antenna grid (CSV)");
  for (auto* sub : {bound, allocate, verify, tables, figure5, probe}) common.attach(sub);

  VerifyFlags vf;
  verify->add_option("--trials", vf.trials, "Number of channel draws");
  verify->add_option("--ia", vf.ia, "IA streams d11,d12,d21,d22 (default: allocator result)");
  verify->add_option("--ns", vf.ns, "NS streams d11,d12,d21,d22");
  verify->add_option("--T", vf.T, "Symbol extension of the given streams");
  verify->add_option("--side", vf.side, "Network side of the given streams: original|reciprocal");
  verify->add_option("--channel", vf.channel_path, "Verify one explicit channel from a JSON file");
  verify->add_flag("--resample-singular", vf.resample, "Redraw failing channels (each failure is still reported)");
  verify->add_option("--resample-limit", vf.resample_limit, "Redraws per failing trial");

  std::string which = "all", range = "1:6";
  tables->add_option("--table", which, "I..XVII, a span like I:VIII, main, appendix or all");
  tables->add_option("--range", range, "Antenna counts to enumerate: lo:hi or a,b,c");

  int fig_M = 4;
  std::string fig_rd = "1,2,3,4", fig_rc = "0:4";
  figure5->add_option("--M", fig_M, "Antennas at every node");
  figure5->add_option("--rd", fig_rd, "Direct-link ranks");
  figure5->add_option("--rc", fig_rc, "Cross-link ranks");

  std::string probe_range = "1:4";
  int samples = 50;
  probe->add_option("--range", probe_range, "Antenna counts of the grid: lo:hi or a,b,c");
  probe->add_option("--samples", samples, "Random weight vectors per configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  const auto start = std::chrono::steady_clock::now();
  int code = kExitOk;
  try {
    const Scenario s = common.resolve();
    if (*bound) code = cmd_bound(s);
    if (*allocate) code = cmd_allocate(s);
    if (*verify) code = cmd_verify(s, vf, common.jobs);
    if (*tables) code = cmd_tables(which, range, s.T_max, common.jobs);
    if (*figure5) code = cmd_figure5(fig_M, fig_rd, fig_rc, s.T_max, common.jobs);
    if (*probe) code = cmd_probe(probe_range, samples, s.seed, s.T_max, common.jobs);
  } catch (const xdof::InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const xdof::UnsupportedShape& e) {
    std::cerr << "unsupported shape: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const xdof::InfeasibleAllocation& e) {
    std::cerr << "infeasible allocation: " << e.what() << "\n";
    return kExitVerify;
  }
  if (common.timing)
    std::cerr << "elapsed " << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()
              << " s\n";
  return code;
}
