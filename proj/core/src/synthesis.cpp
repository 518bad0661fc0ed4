#include "xdof/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "xdof/error.hpp"

namespace xdof {
namespace {

constexpr int kOther[3] = {0, 2, 1};

RMatrix hcat(const std::vector<RMatrix>& blocks, Eigen::Index rows) {
  Eigen::Index cols = 0;
  for (const auto& b : blocks) cols += b.cols();
  RMatrix out(rows, cols);
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    if (b.cols() == 0) continue;
    out.middleCols(at, b.cols()) = b;
    at += b.cols();
  }
  return out;
}

RMatrix normalize_columns(const RMatrix& m) {
  RMatrix out = m;
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    const double n = out.col(c).norm();
    if (n > 0.0) out.col(c) /= n;
  }
  return out;
}

// Smallest singular value of the column-normalized matrix; zero when the
// matrix is wider than tall, one when it has no columns.
double normalized_min_sv(const RMatrix& m) {
  if (m.cols() == 0) return 1.0;
  if (m.cols() > m.rows()) return 0.0;
  return min_singular_value(normalize_columns(m));
}

double relative_residual(const RMatrix& filter, const RMatrix& channel, const RMatrix& signal) {
  if (filter.rows() == 0 || signal.cols() == 0) return 0.0;
  const double scale = spectral_norm(filter) * spectral_norm(channel) * spectral_norm(signal);
  if (scale == 0.0) return 0.0;
  return spectral_norm(RMatrix(filter * channel * signal)) / scale;
}

int rank_or_zero(const RMatrix& m, const TolerancePolicy& pol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return numerical_rank(m, pol);
}

// Signal blocks seen by receiver i, labeled for diagnostics. Index
// 0..3: desired IA (j=1,2), desired NS (j=1,2); 4..7 the same for the
// messages of the other receiver.
struct ReceivedBlock {
  std::string label;
  int message;
  bool null_steer;
  RMatrix image;
};

std::vector<ReceivedBlock> received_blocks(int i, const ExtendedChannelSet& ext, const PrecoderSet& pre) {
  std::vector<ReceivedBlock> out;
  for (int owner : {i, kOther[i]}) {
    for (bool ns : {false, true}) {
      for (int j = 1; j <= 2; ++j) {
        const int m = message_index(owner, j);
        std::ostringstream label;
        label << (ns ? "NS" : "IA") << owner << j;
        out.push_back({label.str(), m, ns, ext.h(i, j) * (ns ? pre.Z[m] : pre.V[m])});
      }
    }
  }
  return out;
}

void check_ext(const ExtendedChannelSet& ext, const PrecoderSet& pre) {
  if (!(ext.config == pre.config)) throw InvalidInput("synthesis: precoders and channels differ in config");
  if (ext.T != pre.allocation.T) throw InvalidInput("synthesis: precoders and channels differ in T");
}

}  // namespace

MessageBases constant_bases(const ChannelSet& channels, int T, std::uint64_t mixer_seed,
                            const TolerancePolicy& pol) {
  if (T < 1) throw InvalidInput("constant_bases: T must be >= 1");
  MessageBases out;
  out.T = T;
  std::array<OverlapPairBasis, 2> overlap;  // by receiver k - 1
  for (int k = 1; k <= 2; ++k) overlap[k - 1] = overlap_pair_basis(channels.h(k, 1), channels.h(k, 2), pol, k);
  // Messages to receiver i align at k != i.
  out.mixers = make_mixers({overlap[1].s_k, overlap[0].s_k}, T, mixer_seed);
  for (int i = 1; i <= 2; ++i) {
    const int k = kOther[i];
    for (int j = 1; j <= 2; ++j) {
      const int m = message_index(i, j);
      const NullSteerBasis ns = null_steer_basis(channels.h(k, j), pol, k);
      const EmbeddedBases eb = embed_bases(overlap[k - 1], j, ns, T);
      out.omega_hat[m] = build_extended_overlap(eb.omega_tilde, out.mixers, i);
      out.psi_hat[m] = eb.psi_hat;
    }
  }
  return out;
}

MessageBases extended_bases(const ExtendedChannelSet& ext, std::uint64_t mixer_seed,
                            const TolerancePolicy& pol) {
  const ExtendedSubspaces sub = time_varying_bases(ext, pol);
  MessageBases out;
  out.T = ext.T;
  out.mixers.seed = mixer_seed;
  for (int i = 1; i <= 2; ++i) {
    const int k = kOther[i];
    const int s = sub.s[k - 1];
    RandomStream shared(mixer_seed, static_cast<std::uint64_t>(i));
    const RMatrix mixer = shared.gaussian_matrix(s, s);
    for (int j = 1; j <= 2; ++j) {
      const int m = message_index(i, j);
      out.omega_hat[m] = sub.omega(k, j) * mixer;
      const RMatrix& psi = sub.psi_at(k, j);
      RandomStream own(mixer_seed, 10 + static_cast<std::uint64_t>(m));
      out.psi_hat[m] = psi * own.gaussian_matrix(psi.cols(), psi.cols());
    }
  }
  return out;
}

PrecoderSet build_precoders(const MessageBases& bases, const AntennaConfig& cfg,
                            const StreamAllocation& alloc) {
  if (alloc.T != bases.T) throw InvalidInput("build_precoders: allocation T differs from bases T");
  PrecoderSet out;
  out.config = cfg;
  out.allocation = alloc;
  for (int m = 0; m < 4; ++m) {
    const int ia = alloc.ia[m], ns = alloc.ns[m];
    if (ia < 0 || ns < 0) throw InvalidInput("build_precoders: negative stream count");
    const RMatrix& om = bases.omega_hat[m];
    const RMatrix& ps = bases.psi_hat[m];
    if (ia > om.cols() || ns > ps.cols()) {
      std::ostringstream os;
      os << "message " << message_rx(m) << message_tx(m) << " needs " << ia << " IA / " << ns
         << " NS columns but the bases provide " << om.cols() << " / " << ps.cols();
      throw InfeasibleAllocation(os.str());
    }
    const Eigen::Index rows = 2 * alloc.T * cfg.tx(message_tx(m));
    out.V[m] = ia > 0 ? RMatrix(om.leftCols(ia)) : RMatrix(rows, 0);
    out.Z[m] = ns > 0 ? RMatrix(ps.leftCols(ns)) : RMatrix(rows, 0);
  }
  return out;
}

ReceiverSet build_receivers(const ExtendedChannelSet& ext, const PrecoderSet& pre,
                            const TolerancePolicy& pol) {
  check_ext(ext, pre);
  ReceiverSet out;
  for (int i = 1; i <= 2; ++i) {
    const Eigen::Index rows = 2 * ext.T * ext.config.rx(i);
    const auto blocks = received_blocks(i, ext, pre);
    // Own blocks 0..3 are decoded; IA images of the other receiver's
    // messages (4, 5) are interference to cancel. Their null-steering
    // images (6, 7) vanish by construction and are checked in verification.
    for (int b = 0; b < 4; ++b) {
      const ReceivedBlock& own = blocks[b];
      const int d = static_cast<int>(own.image.cols());
      RMatrix& filter = own.null_steer ? out.F[own.message] : out.L[own.message];
      if (d == 0) {
        filter = RMatrix(0, rows);
        continue;
      }
      std::vector<RMatrix> nuisance;
      for (int c = 0; c < 6; ++c)
        if (c != b) nuisance.push_back(blocks[c].image);
      const RMatrix nm = normalize_columns(hcat(nuisance, rows));
      const RMatrix U = nm.cols() > 0 && nm.norm() > 0.0 ? left_null_space_basis(nm, pol)
                                                          : RMatrix(RMatrix::Identity(rows, rows));
      if (U.cols() < d) {
        std::ostringstream os;
        os << "receiver " << i << ": " << own.label << " needs " << d << " dimensions, only "
           << U.cols() << " free of the other signals";
        throw FeasibilityFailure(os.str());
      }
      const RMatrix B = U.transpose() * own.image;
      Eigen::JacobiSVD<RMatrix> svd(B, Eigen::ComputeThinU);
      filter = (U * svd.matrixU().leftCols(d)).transpose();
    }
  }
  return out;
}

SignalSpaceMatrix assemble_G(int receiver, const ExtendedChannelSet& ext, const PrecoderSet& pre) {
  check_ext(ext, pre);
  if (receiver != 1 && receiver != 2) throw InvalidInput("assemble_G: receiver must be 1 or 2");
  const int i = receiver, k = kOther[i];
  SignalSpaceMatrix out;
  out.receiver = i;
  std::vector<RMatrix> cols;
  auto add = [&](const std::string& label, const RMatrix& image) {
    out.blocks.emplace_back(label, static_cast<int>(image.cols()));
    cols.push_back(image);
  };
  for (int j = 1; j <= 2; ++j) add("IA" + std::to_string(i) + std::to_string(j), ext.h(i, j) * pre.V[message_index(i, j)]);
  for (int j = 1; j <= 2; ++j) add("NS" + std::to_string(i) + std::to_string(j), ext.h(i, j) * pre.Z[message_index(i, j)]);
  const int wide = pre.allocation.d_ia(k, 1) >= pre.allocation.d_ia(k, 2) ? 1 : 2;
  add("IA" + std::to_string(k) + std::to_string(wide), ext.h(i, wide) * pre.V[message_index(k, wide)]);
  out.G = hcat(cols, 2 * ext.T * ext.config.rx(i));
  return out;
}

VerificationReport verify_feasibility(const ExtendedChannelSet& ext, const PrecoderSet& pre,
                                      const ReceiverSet& rec, const TolerancePolicy& pol,
                                      const VerifyOptions& options) {
  check_ext(ext, pre);
  VerificationReport rep;
  std::ostringstream why;
  long long achieved = 0;
  for (int i = 1; i <= 2; ++i) {
    const int k = kOther[i];
    const auto blocks = received_blocks(i, ext, pre);
    // Zero forcing: every own filter against every signal block but its own.
    for (int b = 0; b < 4; ++b) {
      const ReceivedBlock& own = blocks[b];
      const RMatrix& filter = own.null_steer ? rec.F[own.message] : rec.L[own.message];
      if (filter.rows() != own.image.cols()) throw InvalidInput("verify_feasibility: filter size mismatch");
      for (std::size_t c = 0; c < blocks.size(); ++c) {
        if (static_cast<int>(c) == b) continue;
        const ReceivedBlock& other = blocks[c];
        const int j = message_tx(other.message);
        const RMatrix& signal = other.null_steer ? pre.Z[other.message] : pre.V[other.message];
        rep.max_zero_forcing_residual =
            std::max(rep.max_zero_forcing_residual, relative_residual(filter, ext.h(i, j), signal));
      }
      const int r = rank_or_zero(filter * own.image, pol);
      achieved += r;
      if (r != own.image.cols()) rep.decode_rank_ok[own.message] = false;
    }
    // Interference alignment: narrower image inside the wider one.
    const RMatrix a1 = ext.h(i, 1) * pre.V[message_index(k, 1)];
    const RMatrix a2 = ext.h(i, 2) * pre.V[message_index(k, 2)];
    const RMatrix& wide = a1.cols() >= a2.cols() ? a1 : a2;
    const RMatrix& narrow = a1.cols() >= a2.cols() ? a2 : a1;
    if (narrow.cols() > 0 && narrow.norm() > 0.0) {
      const RMatrix Q = column_space_basis(wide, pol);
      const RMatrix resid = narrow - Q * (Q.transpose() * narrow);
      rep.max_alignment_residual = std::max(rep.max_alignment_residual, spectral_norm(resid) / spectral_norm(narrow));
    }
    rep.min_G_singular_value[i - 1] = normalized_min_sv(assemble_G(i, ext, pre).G);
  }
  rep.achieved_dof = Rational(achieved, 2LL * ext.T);

  if (rep.max_zero_forcing_residual > pol.residual_tol)
    why << "zero-forcing residual " << rep.max_zero_forcing_residual << " > " << pol.residual_tol << "; ";
  for (int m = 0; m < 4; ++m)
    if (!rep.decode_rank_ok[m]) why << "message " << message_rx(m) << message_tx(m) << " not decodable; ";
  for (int i = 0; i < 2; ++i)
    if (!(rep.min_G_singular_value[i] > options.min_sv))
      why << "G at receiver " << (i + 1) << " rank deficient (min sv " << rep.min_G_singular_value[i] << "); ";
  if (options.require_alignment && rep.max_alignment_residual > pol.residual_tol)
    why << "alignment residual " << rep.max_alignment_residual << " > " << pol.residual_tol << "; ";
  rep.failure = why.str();
  if (!rep.failure.empty()) rep.failure.resize(rep.failure.size() - 2);
  rep.passed = rep.failure.empty();
  return rep;
}

std::pair<PrecoderSet, ReceiverSet> reciprocal_transfer(const PrecoderSet& pre, const ReceiverSet& rec) {
  PrecoderSet p;
  ReceiverSet r;
  p.config = pre.config.reciprocal();
  p.allocation = pre.allocation.relabeled_reciprocal();
  for (int m = 0; m < 4; ++m) {
    const int t = reciprocal_message(m);
    p.V[t] = rec.L[m].transpose();
    p.Z[t] = rec.F[m].transpose();
    r.L[t] = pre.V[m].transpose();
    r.F[t] = pre.Z[m].transpose();
  }
  return {p, r};
}

DesignOutcome design_and_verify(const ChannelSet& channels, const StreamAllocation& alloc,
                                std::uint64_t mixer_seed, const TolerancePolicy& pol,
                                const VerifyOptions& options) {
  DesignOutcome out;
  if (alloc.side == Side::kOriginal) {
    out.ext = extend_constant(channels, alloc.T);
    out.precoders = build_precoders(constant_bases(channels, alloc.T, mixer_seed, pol), channels.config, alloc);
    out.receivers = build_receivers(out.ext, out.precoders, pol);
  } else {
    const ChannelSet rch = reciprocal(channels);
    StreamAllocation ralloc = alloc.relabeled_reciprocal();
    ralloc.side = Side::kOriginal;
    const ExtendedChannelSet rext = extend_constant(rch, alloc.T);
    const PrecoderSet rpre = build_precoders(constant_bases(rch, alloc.T, mixer_seed, pol), rch.config, ralloc);
    const ReceiverSet rrec = build_receivers(rext, rpre, pol);
    auto [p, r] = reciprocal_transfer(rpre, rrec);
    p.allocation.side = Side::kReciprocal;
    out.ext = reciprocal(rext);
    out.precoders = std::move(p);
    out.receivers = std::move(r);
  }
  out.report = verify_feasibility(out.ext, out.precoders, out.receivers, pol, options);
  out.report.seed = mixer_seed;
  return out;
}

DesignOutcome design_and_verify(const ExtendedChannelSet& ext, const StreamAllocation& alloc,
                                std::uint64_t mixer_seed, const TolerancePolicy& pol,
                                const VerifyOptions& options) {
  if (alloc.T != ext.T) throw InvalidInput("design_and_verify: allocation T differs from extension length");
  DesignOutcome out;
  out.ext = ext;
  if (alloc.side == Side::kOriginal) {
    out.precoders = build_precoders(extended_bases(ext, mixer_seed, pol), ext.config, alloc);
    out.receivers = build_receivers(ext, out.precoders, pol);
  } else {
    const ExtendedChannelSet rext = reciprocal(ext);
    StreamAllocation ralloc = alloc.relabeled_reciprocal();
    ralloc.side = Side::kOriginal;
    const PrecoderSet rpre = build_precoders(extended_bases(rext, mixer_seed, pol), rext.config, ralloc);
    const ReceiverSet rrec = build_receivers(rext, rpre, pol);
    auto [p, r] = reciprocal_transfer(rpre, rrec);
    p.allocation.side = Side::kReciprocal;
    out.precoders = std::move(p);
    out.receivers = std::move(r);
  }
  out.report = verify_feasibility(out.ext, out.precoders, out.receivers, pol, options);
  out.report.seed = mixer_seed;
  return out;
}

namespace {

ChannelSet draw_channel(const AntennaConfig& cfg, const RankProfile& ranks, std::uint64_t seed) {
  return ranks.is_full(cfg) ? generate_full_rank(cfg, seed) : generate_rank_deficient(cfg, ranks, seed);
}

}  // namespace

VerificationReport verify_trial(const AntennaConfig& cfg, const RankProfile& ranks,
                                const StreamAllocation& alloc, std::uint64_t seed,
                                const TolerancePolicy& pol, const VerifyOptions& options,
                                ExtensionMode mode) {
  try {
    VerificationReport rep;
    if (mode == ExtensionMode::kConstant) {
      rep = design_and_verify(draw_channel(cfg, ranks, seed), alloc, derive_seed(seed, 0x5eed), pol, options).report;
    } else {
      std::vector<ChannelSet> snapshots;
      for (int t = 0; t < alloc.T; ++t) snapshots.push_back(draw_channel(cfg, ranks, derive_seed(seed, 100 + t)));
      rep = design_and_verify(extend_time_varying(snapshots), alloc, derive_seed(seed, 0x5eed), pol, options).report;
    }
    rep.seed = seed;
    return rep;
  } catch (const FeasibilityFailure& e) {
    VerificationReport rep;
    rep.seed = seed;
    rep.failure = e.what();
    return rep;
  } catch (const InfeasibleAllocation& e) {
    VerificationReport rep;
    rep.seed = seed;
    rep.failure = std::string("infeasible allocation: ") + e.what();
    return rep;
  }
}

RMatrix lemma16_matrix(int N, int s, int T, int d, std::uint64_t seed,
                       std::optional<double> phase_difference) {
  if (N < 1 || s < 1 || T < 1 || d < 1) throw InvalidInput("lemma16_matrix: sizes must be >= 1");
  RandomStream rng(seed, 16);
  auto block_matrix = [&](const RMatrix& modulus, const RMatrix& phase) {
    RMatrix phi(2 * N, 2 * s);
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < s; ++b) {
        const double c = std::cos(phase(a, b)), sn = std::sin(phase(a, b));
        phi.block(2 * a, 2 * b, 2, 2) << c, -sn, sn, c;
        phi.block(2 * a, 2 * b, 2, 2) *= modulus(a, b);
      }
    return phi;
  };
  auto draw_modulus = [&] {
    RMatrix m(N, s);
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < s; ++b) m(a, b) = std::abs(rng.complex_gaussian());
    return m;
  };
  const RMatrix mod_a = draw_modulus(), mod_b = draw_modulus();
  const RMatrix ph_a = rng.uniform_matrix(N, s, 0.0, 2.0 * std::numbers::pi);
  const RMatrix ph_b = phase_difference ? RMatrix(ph_a.array() + *phase_difference)
                                        : rng.uniform_matrix(N, s, 0.0, 2.0 * std::numbers::pi);
  const RMatrix phi_a = block_matrix(mod_a, ph_a), phi_b = block_matrix(mod_b, ph_b);
  RMatrix D(2 * N * T, 2 * d);
  for (int t = 0; t < T; ++t) {
    const RMatrix Tt = rng.gaussian_matrix(2 * s, d);
    D.block(2 * N * t, 0, 2 * N, d) = phi_a * Tt;
    D.block(2 * N * t, d, 2 * N, d) = phi_b * Tt;
  }
  return D;
}

bool lemma16_check(int N, int s, int T, int d, std::uint64_t seed,
                   std::optional<double> phase_difference, double min_sv) {
  return normalized_min_sv(lemma16_matrix(N, s, T, d, seed, phase_difference)) > min_sv;
}

}  // namespace xdof
