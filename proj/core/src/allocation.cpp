#include "xdof/allocation.hpp"

#include "xdof/error.hpp"

namespace xdof {

int MessageMask::count() const {
  int n = 0;
  for (bool a : active) n += a ? 1 : 0;
  return n;
}

void MessageMask::validate() const {
  if (count() == 0) throw InvalidInput("MessageMask: at least one message must be active");
}

MessageMask MessageMask::reciprocal() const {
  MessageMask out;
  for (int m = 0; m < 4; ++m) out.active[reciprocal_message(m)] = active[m];
  return out;
}

MessageMask MessageMask::x() { return {}; }
MessageMask MessageMask::ic() { return {{true, false, false, true}}; }
MessageMask MessageMask::bc() { return {{true, false, true, false}}; }
MessageMask MessageMask::mac() { return {{true, true, false, false}}; }
MessageMask MessageMask::z(int i, int j) {
  MessageMask out;
  out.active[message_index(i, j)] = false;
  return out;
}

MessageMask MessageMask::parse(const std::string& name) {
  if (name == "x") return x();
  if (name == "ic") return ic();
  if (name == "bc") return bc();
  if (name == "mac") return mac();
  if (name.size() == 3 && name[0] == 'z') {
    int i = name[1] - '0', j = name[2] - '0';
    if ((i == 1 || i == 2) && (j == 1 || j == 2)) return z(i, j);
  }
  throw InvalidInput("MessageMask: unknown mask '" + name + "'");
}

std::string MessageMask::name() const {
  if (*this == x()) return "x";
  if (*this == ic()) return "ic";
  if (*this == bc()) return "bc";
  if (*this == mac()) return "mac";
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      if (*this == z(i, j)) return "z" + std::to_string(i) + std::to_string(j);
  std::string out = "custom:";
  for (bool a : active) out += a ? '1' : '0';
  return out;
}

const char* side_name(Side s) { return s == Side::kOriginal ? "original" : "reciprocal"; }

int StreamAllocation::total_streams() const {
  int n = 0;
  for (int m = 0; m < 4; ++m) n += streams(m);
  return n;
}

Rational StreamAllocation::message_dof(int m) const { return Rational(streams(m), 2 * T); }

Rational StreamAllocation::total_dof() const { return Rational(total_streams(), 2 * T); }

StreamAllocation StreamAllocation::relabeled_reciprocal() const {
  StreamAllocation out;
  out.T = T;
  out.side = side == Side::kOriginal ? Side::kReciprocal : Side::kOriginal;
  for (int m = 0; m < 4; ++m) {
    out.ia[reciprocal_message(m)] = ia[m];
    out.ns[reciprocal_message(m)] = ns[m];
  }
  return out;
}

}  // namespace xdof
