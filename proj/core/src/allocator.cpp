#include "xdof/allocator.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "xdof/error.hpp"
#include "xdof/numerics.hpp"

namespace xdof {
namespace {

int pos(int v) { return v > 0 ? v : 0; }

int overlap_dim(int n, int r1, int r2) { return r1 + r2 - std::min(n, r1 + r2); }

void check_T(int T) {
  if (T < 1) throw InvalidInput("symbol extension T must be >= 1");
}

void check_weights(const std::array<Rational, 4>& weights) {
  for (const auto& w : weights) {
    if (w.sign() < 0) throw InvalidInput("weights must be >= 0");
  }
}

// Adds a row unless an identical one is already present.
void add_row(IlpProblem& p, std::vector<int> coef, long long rhs, std::string label) {
  if (std::all_of(coef.begin(), coef.end(), [](int c) { return c == 0; })) return;
  for (const auto& r : p.rows) {
    if (r.coef == coef && r.rhs == rhs) return;
  }
  p.rows.push_back({std::move(coef), rhs, std::move(label)});
}

const char* msg_name(int m) {
  static const char* names[4] = {"11", "12", "21", "22"};
  return names[m];
}

// Depth-first branch and bound over bounded nonnegative integers with
// nonnegative constraint coefficients.
class Searcher {
 public:
  Searcher(const IlpProblem& p, std::vector<long long> c)
      : n_(static_cast<int>(p.vars.size())), c_(std::move(c)) {
    for (const auto& v : p.vars) ub_.push_back(v.ub);
    for (const auto& r : p.rows) {
      a_.push_back(r.coef);
      slack_.push_back(r.rhs);
    }
    // Every single row is a bound family; declared groups add more.
    std::vector<std::vector<int>> families;
    for (int r = 0; r < static_cast<int>(a_.size()); ++r) families.push_back({r});
    for (const auto& f : p.bound_families) families.push_back(f);
    for (const auto& f : families) {
      std::vector<long long> col(n_, 0);
      for (int r : f) {
        for (int v = 0; v < n_; ++v) col[v] += a_[r][v];
      }
      fam_rows_.push_back(f);
      fam_col_.push_back(std::move(col));
    }
    x_.assign(n_, 0);
    best_x_.assign(n_, 0);
    cap_.assign(n_, 0);
  }

  std::vector<int> solve(long long* value, long long* nodes) {
    best_ = 0;  // the origin is always feasible
    phase_ = 1;
    dfs(0, 0);
    if (best_ > 0) {
      target_ = best_;
      phase_ = 2;
      done_ = false;
      dfs(0, 0);
    }
    *value = best_;
    *nodes = nodes_;
    return best_x_;
  }

 private:
  long long cap_of(int v) const {
    long long cap = ub_[v];
    for (size_t r = 0; r < a_.size(); ++r) {
      if (a_[r][v] > 0) cap = std::min(cap, slack_[r] / a_[r][v]);
    }
    return cap;
  }

  // Upper bound on the objective contributed by variables k..n-1.
  long long bound(int k) {
    long long box = 0;
    long long cmax = 0;
    for (int v = k; v < n_; ++v) {
      cap_[v] = cap_of(v);
      box += c_[v] * cap_[v];
      cmax = std::max(cmax, c_[v]);
    }
    if (cmax == 0) return 0;
    long long best = box;
    for (size_t f = 0; f < fam_rows_.size(); ++f) {
      long long lambda = 0;
      for (int v = k; v < n_; ++v) {
        if (fam_col_[f][v] > 0) {
          lambda = std::max(lambda, (c_[v] + fam_col_[f][v] - 1) / fam_col_[f][v]);
        }
      }
      long long b = 0;
      for (int r : fam_rows_[f]) b += lambda * slack_[r];
      for (int v = k; v < n_ && b < best; ++v) {
        b += std::max(0LL, c_[v] - lambda * fam_col_[f][v]) * cap_[v];
      }
      best = std::min(best, b);
    }
    return best;
  }

  void dfs(int k, long long value) {
    if (done_) return;
    ++nodes_;
    if (k == n_) {
      if (phase_ == 1 && value > best_) {
        best_ = value;
        best_x_ = x_;
      } else if (phase_ == 2 && value == target_) {
        best_x_ = x_;
        done_ = true;
      }
      return;
    }
    const long long b = bound(k);
    if (phase_ == 1 && value + b <= best_) return;
    if (phase_ == 2 && value + b < target_) return;
    const long long cap = cap_[k];
    for (long long step = 0; step <= cap && !done_; ++step) {
      const long long val = phase_ == 1 ? cap - step : step;
      for (size_t r = 0; r < a_.size(); ++r) slack_[r] -= a_[r][k] * val;
      x_[k] = static_cast<int>(val);
      dfs(k + 1, value + c_[k] * val);
      for (size_t r = 0; r < a_.size(); ++r) slack_[r] += a_[r][k] * val;
    }
    x_[k] = 0;
  }

  int n_;
  std::vector<long long> c_;
  std::vector<long long> ub_;
  std::vector<std::vector<int>> a_;
  std::vector<long long> slack_;
  std::vector<std::vector<int>> fam_rows_;
  std::vector<std::vector<long long>> fam_col_;
  std::vector<int> x_, best_x_;
  std::vector<long long> cap_;
  long long best_ = 0, target_ = 0, nodes_ = 0;
  int phase_ = 1;
  bool done_ = false;
};

}  // namespace

SubspaceDims generic_dims(const AntennaConfig& cfg, const RankProfile& ranks) {
  cfg.validate();
  ranks.validate(cfg);
  SubspaceDims d;
  for (int k = 1; k <= 2; ++k) {
    d.s[k - 1] = overlap_dim(cfg.rx(k), ranks.at(k, 1), ranks.at(k, 2));
    for (int j = 1; j <= 2; ++j) d.phi[2 * (k - 1) + (j - 1)] = cfg.tx(j) - ranks.at(k, j);
  }
  return d;
}

SubspaceDims generic_dims(const AntennaConfig& cfg) {
  return generic_dims(cfg, RankProfile::full(cfg));
}

std::vector<long long> IlpProblem::objective(long long* scale) const {
  long long l = 1;
  for (const auto& w : weights) l = std::lcm(l, static_cast<long long>(w.den()));
  std::vector<long long> c;
  for (const auto& v : vars) {
    Rational sum = 0;
    for (const auto& s : v.slots) sum += weights[s.message];
    sum *= Rational(l);
    c.push_back(sum.num());
  }
  if (scale != nullptr) *scale = l;
  return c;
}

bool IlpProblem::feasible(const std::vector<int>& x) const {
  if (x.size() != vars.size()) return false;
  for (size_t v = 0; v < vars.size(); ++v) {
    if (x[v] < 0 || x[v] > vars[v].ub) return false;
  }
  for (const auto& r : rows) {
    long long lhs = 0;
    for (size_t v = 0; v < vars.size(); ++v) lhs += static_cast<long long>(r.coef[v]) * x[v];
    if (lhs > r.rhs) return false;
  }
  return true;
}

StreamAllocation IlpProblem::to_allocation(const std::vector<int>& x) const {
  StreamAllocation a;
  a.T = T;
  a.side = side;
  for (size_t v = 0; v < vars.size(); ++v) {
    for (const auto& s : vars[v].slots) (s.null_steer ? a.ns : a.ia)[s.message] = x[v];
  }
  return a;
}

Rational IlpProblem::weighted_dof(const std::vector<int>& x) const {
  long long scale = 1;
  const auto c = objective(&scale);
  long long total = 0;
  for (size_t v = 0; v < vars.size(); ++v) total += c[v] * x[v];
  return Rational(total, scale * 2 * T);
}

void IlpProblem::validate() const {
  check_T(T);
  check_weights(weights);
  for (const auto& v : vars) {
    if (v.ub < 0) throw InvalidInput("ILP variable " + v.name + " has a negative bound");
  }
  for (const auto& r : rows) {
    if (r.coef.size() != vars.size()) throw InvalidInput("ILP row " + r.label + " has wrong width");
    if (r.rhs < 0) throw InvalidInput("ILP row " + r.label + " excludes the origin");
    for (int c : r.coef) {
      if (c < 0) throw InvalidInput("ILP row " + r.label + " has a negative coefficient");
    }
  }
  for (const auto& f : bound_families) {
    for (int r : f) {
      if (r < 0 || r >= static_cast<int>(rows.size())) throw InvalidInput("bad bound family row");
    }
  }
}

IlpProblem build_p0(const AntennaConfig& cfg, const SubspaceDims& dims, int T,
                    const std::array<Rational, 4>& weights, const MessageMask& mask) {
  cfg.validate();
  mask.validate();
  check_T(T);
  check_weights(weights);
  IlpProblem p;
  p.kind = "P0";
  p.config = cfg;
  p.T = T;
  p.weights = weights;
  std::array<int, 4> ia_var{-1, -1, -1, -1}, ns_var{-1, -1, -1, -1};
  for (int m = 0; m < 4; ++m) {
    if (!mask.active[m]) continue;
    const int k = 3 - message_rx(m);
    ia_var[m] = static_cast<int>(p.vars.size());
    p.vars.push_back({std::string("ia") + msg_name(m), pos(2 * dims.s_at(k)), {{m, false}}});
  }
  for (int m = 0; m < 4; ++m) {
    if (!mask.active[m]) continue;
    const int k = 3 - message_rx(m);
    ns_var[m] = static_cast<int>(p.vars.size());
    p.vars.push_back(
        {std::string("ns") + msg_name(m), pos(2 * T * dims.phi_at(k, message_tx(m))), {{m, true}}});
  }
  const int n = static_cast<int>(p.vars.size());
  std::vector<int> rx_first;
  for (int i = 1; i <= 2; ++i) {
    const int k = 3 - i;
    std::vector<int> own(n, 0);
    for (int j = 1; j <= 2; ++j) {
      const int m = message_index(i, j);
      if (ia_var[m] >= 0) own[ia_var[m]] = 1;
      if (ns_var[m] >= 0) own[ns_var[m]] = 1;
    }
    for (int j = 1; j <= 2; ++j) {
      std::vector<int> row = own;
      const int interferer = message_index(k, j);
      if (ia_var[interferer] >= 0) row[ia_var[interferer]] = 1;
      const size_t before = p.rows.size();
      add_row(p, std::move(row), 2LL * T * cfg.rx(i),
              "rx" + std::to_string(i) + "_ia" + msg_name(interferer));
      if (j == 1 && p.rows.size() > before) rx_first.push_back(static_cast<int>(before));
    }
  }
  std::vector<int> tx_rows;
  for (int j = 1; j <= 2; ++j) {
    std::vector<int> row(n, 0);
    for (int i = 1; i <= 2; ++i) {
      const int m = message_index(i, j);
      if (ia_var[m] >= 0) row[ia_var[m]] = 1;
      if (ns_var[m] >= 0) row[ns_var[m]] = 1;
    }
    const size_t before = p.rows.size();
    add_row(p, std::move(row), 2LL * T * cfg.tx(j), "tx" + std::to_string(j));
    if (p.rows.size() > before) tx_rows.push_back(static_cast<int>(before));
  }
  if (!rx_first.empty()) p.bound_families.push_back(rx_first);
  if (!tx_rows.empty()) p.bound_families.push_back(tx_rows);
  return p;
}

IlpProblem build_p1(const AntennaConfig& cfg, const SubspaceDims& dims, const RankProfile& ranks,
                    int T, const std::array<Rational, 4>& weights, const MessageMask& mask) {
  ranks.validate(cfg);
  IlpProblem p = build_p0(cfg, dims, T, weights, mask);
  p.kind = "P1";
  if (ranks.is_full(cfg)) return p;
  const int n = static_cast<int>(p.vars.size());
  for (int m = 0; m < 4; ++m) {
    if (!mask.active[m]) continue;
    std::vector<int> row(n, 0);
    for (int v = 0; v < n; ++v) {
      if (p.vars[v].slots.front().message == m) row[v] = 1;
    }
    const long long cap = 2LL * T * ranks.r[m];
    for (int v = 0; v < n; ++v) {
      if (row[v] != 0) p.vars[v].ub = static_cast<int>(std::min<long long>(p.vars[v].ub, cap));
    }
    add_row(p, std::move(row), cap, std::string("rank") + msg_name(m));
  }
  return p;
}

IlpProblem build_px21(const AntennaConfig& cfg, const SubspaceDims& dims, int T) {
  cfg.validate();
  check_T(T);
  IlpProblem p;
  p.kind = "PX21";
  p.config = cfg;
  p.T = T;
  p.weights = {1, 1, 0, 1};
  const int m11 = message_index(1, 1), m12 = message_index(1, 2), m22 = message_index(2, 2);
  p.vars = {
      {"d1", pos(2 * dims.s_at(2)), {{m11, false}, {m12, false}}},
      {"d2", pos(2 * dims.s_at(1)), {{m22, false}}},
      {"ns11", pos(2 * T * dims.phi_at(2, 1)), {{m11, true}}},
      {"ns12", pos(2 * T * dims.phi_at(2, 2)), {{m12, true}}},
      {"ns22", pos(2 * T * dims.phi_at(1, 2)), {{m22, true}}},
  };
  p.rows = {
      {{2, 1, 1, 1, 0}, 2LL * T * cfg.N1, "rx1"},
      {{1, 2, 0, 0, 1}, 2LL * T * cfg.N2, "rx2"},
      {{1, 0, 1, 0, 0}, 2LL * T * cfg.M1, "tx1"},
      {{1, 1, 0, 1, 1}, 2LL * T * cfg.M2, "tx2"},
  };
  p.bound_families = {{0, 1}, {2, 3}};
  return p;
}

IlpProblem build_px12(const AntennaConfig& cfg, int T) {
  cfg.validate();
  check_T(T);
  IlpProblem p;
  p.kind = "PX12";
  p.config = cfg;
  p.T = T;
  p.weights = {1, 0, 1, 1};
  const int m11 = message_index(1, 1), m21 = message_index(2, 1), m22 = message_index(2, 2);
  p.vars = {
      {"d1", 2 * pos(cfg.M1 + cfg.M2 - cfg.N2), {{m11, false}}},
      {"d2", 2 * cfg.N1, {{m21, false}, {m22, false}}},
      {"ns21", 2 * T * pos(cfg.M1 - cfg.N1), {{m21, true}}},
      {"ns22", 2 * T * pos(cfg.M2 - cfg.N1), {{m22, true}}},
  };
  p.rows = {
      {{1, 1, 0, 0}, 2LL * T * cfg.N1, "rx1"},
      {{1, 2, 1, 1}, 2LL * T * cfg.N2, "rx2"},
      {{1, 1, 1, 0}, 2LL * T * cfg.M1, "tx1"},
      {{0, 1, 0, 1}, 2LL * T * cfg.M2, "tx2"},
  };
  p.bound_families = {{0, 1}, {2, 3}};
  return p;
}

AllocationResult solve_ilp(const IlpProblem& problem) {
  problem.validate();
  const auto start = std::chrono::steady_clock::now();
  long long scale = 1;
  Searcher searcher(problem, problem.objective(&scale));
  long long value = 0;
  AllocationResult out;
  out.x = searcher.solve(&value, &out.stats.nodes);
  out.best = problem.to_allocation(out.x);
  out.dof = Rational(value, scale * 2 * problem.T);
  for (int m = 0; m < 4; ++m) out.per_message_dof[m] = out.best.message_dof(m);
  out.stats.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

AllocationResult sweep_best(const AntennaConfig& cfg, const RankProfile& ranks,
                            const MessageMask& mask, const std::array<Rational, 4>& weights,
                            const SweepOptions& options) {
  if (options.T_max < 1) throw InvalidInput("T_max must be >= 1");
  const AntennaConfig rcfg = cfg.reciprocal();
  const RankProfile rranks = ranks.transposed();
  const MessageMask rmask = mask.reciprocal();
  std::array<Rational, 4> rweights{};
  for (int m = 0; m < 4; ++m) rweights[reciprocal_message(m)] = weights[m];
  const SubspaceDims dims = generic_dims(cfg, ranks);
  const SubspaceDims rdims = generic_dims(rcfg, rranks);

  AllocationResult best;
  bool have = false;
  SolverStats total;
  auto consider = [&](AllocationResult r) {
    total.nodes += r.stats.nodes;
    total.seconds += r.stats.seconds;
    if (!have || r.dof > best.dof) {
      best = std::move(r);
      have = true;
    }
  };
  for (int T = 1; T <= options.T_max; ++T) {
    consider(solve_ilp(build_p1(cfg, dims, ranks, T, weights, mask)));
    if (options.use_reciprocal) {
      AllocationResult r = solve_ilp(build_p1(rcfg, rdims, rranks, T, rweights, rmask));
      r.best = r.best.relabeled_reciprocal();
      for (int m = 0; m < 4; ++m) r.per_message_dof[m] = r.best.message_dof(m);
      consider(std::move(r));
    }
  }
  best.stats = total;
  return best;
}

InnerRegionCaps inner_region_bounds(const AntennaConfig& cfg, const RankProfile& ranks, int T,
                                    Side side) {
  check_T(T);
  if (side == Side::kReciprocal) {
    const InnerRegionCaps under =
        inner_region_bounds(cfg.reciprocal(), ranks.transposed(), T, Side::kOriginal);
    InnerRegionCaps out;
    out.T = T;
    out.side = Side::kReciprocal;
    for (int m = 0; m < 4; ++m) {
      const int rm = reciprocal_message(m);
      out.ia_cap[m] = under.ia_cap[rm];
      out.ns_cap[m] = under.ns_cap[rm];
      out.rank_cap[m] = under.rank_cap[rm];
    }
    for (const auto& row : under.sum_rows) {
      DofConstraint c = row;
      for (int m = 0; m < 4; ++m) c.a[m] = row.a[reciprocal_message(m)];
      out.sum_rows.push_back(c);
    }
    return out;
  }
  const SubspaceDims dims = generic_dims(cfg, ranks);
  InnerRegionCaps out;
  out.T = T;
  out.side = Side::kOriginal;
  for (int m = 0; m < 4; ++m) {
    const int k = 3 - message_rx(m);
    out.ia_cap[m] = 2 * dims.s_at(k);
    out.ns_cap[m] = 2 * T * dims.phi_at(k, message_tx(m));
    out.rank_cap[m] = 2 * T * ranks.r[m];
  }
  if (!ranks.is_full(cfg)) {
    auto r = [&](int i, int j) { return ranks.at(i, j); };
    out.sum_rows = {
        {{1, 1, 1, 0}, cfg.N1 + cfg.M1 - r(1, 1), "no22"},
        {{1, 1, 0, 1}, cfg.N1 + cfg.M2 - r(1, 2), "no21"},
        {{1, 0, 1, 1}, cfg.N2 + cfg.M1 - r(2, 1), "no12"},
        {{0, 1, 1, 1}, cfg.N2 + cfg.M2 - r(2, 2), "no11"},
        {{1, 0, 1, 0}, cfg.M1, "tx1"},
        {{0, 1, 0, 1}, cfg.M2, "tx2"},
    };
  }
  return out;
}

InnerRegionCaps literal_reciprocal_caps(const AntennaConfig& cfg, const RankProfile& ranks,
                                        int T) {
  cfg.validate();
  ranks.validate(cfg);
  check_T(T);
  InnerRegionCaps out;
  out.T = T;
  out.side = Side::kReciprocal;
  const bool full = ranks.is_full(cfg);
  for (int m = 0; m < 4; ++m) {
    const int i = message_rx(m), j = message_tx(m), k = 3 - j;
    const int r1 = ranks.at(1, k), r2 = ranks.at(2, k);
    out.ia_cap[m] = 2 * (r1 + r2 - std::min(cfg.tx(k), r1 + r2));
    out.ns_cap[m] = full ? 2 * T * (std::max(cfg.tx(k), cfg.rx(i)) - cfg.rx(i))
                         : 2 * T * (cfg.rx(i) - ranks.at(i, k));
    out.rank_cap[m] = 2 * T * ranks.r[m];
  }
  if (!full) {
    auto r = [&](int i, int j) { return ranks.at(i, j); };
    out.sum_rows = {
        {{1, 1, 1, 0}, cfg.N1 + cfg.M1 - r(1, 1), "no22"},
        {{1, 1, 0, 1}, cfg.N1 + cfg.M2 - r(1, 2), "no21"},
        {{1, 0, 1, 1}, cfg.N2 + cfg.M1 - r(2, 1), "no12"},
        {{0, 1, 1, 1}, cfg.N1 + cfg.M2 - r(2, 2), "no11"},
        {{1, 1, 0, 0}, cfg.N1, "rx1"},
        {{0, 0, 1, 1}, cfg.N2, "rx2"},
    };
  }
  return out;
}

GapReport conjecture_probe(const AntennaConfig& cfg,
                           const std::vector<std::array<Rational, 4>>& weight_samples,
                           int T_max) {
  const DofRegion region = x_outer_region(cfg);
  GapReport report;
  report.config = cfg;
  report.max_gap = 0;
  SweepOptions options;
  options.T_max = T_max;
  for (const auto& w : weight_samples) {
    GapEntry e;
    e.weights = w;
    e.outer = lp_max_weighted(region, w).value;
    e.inner = sweep_best(cfg, RankProfile::full(cfg), MessageMask::x(), w, options).dof;
    e.gap = e.outer.is_zero() ? Rational(0) : (e.outer - e.inner) / e.outer;
    report.max_gap = std::max(report.max_gap, e.gap);
    report.entries.push_back(e);
  }
  return report;
}

std::vector<std::array<Rational, 4>> sample_weights(int count, std::uint64_t seed,
                                                    int max_weight) {
  if (count < 0 || max_weight < 1) throw InvalidInput("sample_weights: bad arguments");
  RandomStream rng(seed, 77);
  std::vector<std::array<Rational, 4>> out;
  while (static_cast<int>(out.size()) < count) {
    std::array<Rational, 4> w{};
    bool any = false;
    for (auto& v : w) {
      const int x = rng.uniform_int(0, max_weight);
      v = x;
      any = any || x != 0;
    }
    if (any) out.push_back(w);
  }
  return out;
}

}  // namespace xdof
