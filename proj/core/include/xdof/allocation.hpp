// Message indexing, message masks and symbol-stream allocations.
//
// Messages are indexed 0..3 in the order 11, 12, 21, 22, where message ij
// travels from transmitter j to receiver i.
#pragma once

#include <array>
#include <string>

#include "xdof/rational.hpp"

namespace xdof {

constexpr int message_index(int i, int j) { return 2 * (i - 1) + (j - 1); }
constexpr int message_rx(int m) { return m / 2 + 1; }
constexpr int message_tx(int m) { return m % 2 + 1; }
// Message ij becomes message ji in the reciprocal network.
constexpr int reciprocal_message(int m) { return message_index(message_tx(m), message_rx(m)); }

struct MessageMask {
  std::array<bool, 4> active{true, true, true, true};

  bool at(int i, int j) const { return active[message_index(i, j)]; }
  int count() const;
  // Throws InvalidInput when no message is active.
  void validate() const;
  MessageMask reciprocal() const;

  static MessageMask x();    // all four messages
  static MessageMask ic();   // 11, 22
  static MessageMask bc();   // 11, 21: transmitter 1 only
  static MessageMask mac();  // 11, 12: receiver 1 only
  static MessageMask z(int i, int j);  // all but message ij
  // "x", "ic", "bc", "mac", "z11", "z12", "z21", "z22".
  static MessageMask parse(const std::string& name);
  std::string name() const;

  friend bool operator==(const MessageMask&, const MessageMask&) = default;
};

enum class Side { kOriginal, kReciprocal };
const char* side_name(Side s);

// Integer stream counts per message plus the extension length.
struct StreamAllocation {
  std::array<int, 4> ia{};  // d_ij^(IA)
  std::array<int, 4> ns{};  // d_ij^(NS)
  int T = 1;
  Side side = Side::kOriginal;

  int& d_ia(int i, int j) { return ia[message_index(i, j)]; }
  int& d_ns(int i, int j) { return ns[message_index(i, j)]; }
  int d_ia(int i, int j) const { return ia[message_index(i, j)]; }
  int d_ns(int i, int j) const { return ns[message_index(i, j)]; }

  int streams(int m) const { return ia[m] + ns[m]; }
  int total_streams() const;
  // (d^IA + d^NS) / 2T for message m.
  Rational message_dof(int m) const;
  Rational total_dof() const;
  // Streams of message ij become streams of message ji (same T).
  StreamAllocation relabeled_reciprocal() const;

  friend bool operator==(const StreamAllocation&, const StreamAllocation&) = default;
};

}  // namespace xdof
