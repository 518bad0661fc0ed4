#include "xdof/tables.hpp"

#include <array>
#include <map>

#include "xdof/bounds.hpp"
#include "xdof/error.hpp"

namespace xdof {
namespace {

using Cfg = const AntennaConfig&;

// Stream counts in column order d11ia, d11ns, d12ia, d12ns, d21ia, d21ns,
// d22ia, d22ns.
StreamAllocation columns(std::array<int, 8> d, int T) {
  StreamAllocation a;
  a.T = T;
  for (int m = 0; m < 4; ++m) {
    a.ia[m] = d[2 * m];
    a.ns[m] = d[2 * m + 1];
  }
  return a;
}

StreamAllocation sym(int ia, int ns, int T) { return columns({ia, ns, ia, ns, ia, ns, ia, ns}, T); }

// Tied program without message 21: (d1, d2, d11ns, d12ns, d22ns).
StreamAllocation no21(std::array<int, 5> d, int T) {
  return columns({d[0], d[2], d[0], d[3], 0, 0, d[1], d[4]}, T);
}

// Tied program without message 12: (d1, d2, d21ns, d22ns).
StreamAllocation no12(std::array<int, 4> d, int T) {
  return columns({d[0], 0, 0, 0, d[1], d[2], d[1], d[3]}, T);
}

Rational R(long long num, long long den = 1) { return Rational(num, den); }

// Row helpers: the configuration is unpacked into M1, M2, N1, N2 (and the
// symmetric aliases M = M1, N = N1) inside each lambda.
#define XDOF_CFG                                                   \
  [[maybe_unused]] const int M1 = c.M1, M2 = c.M2, N1 = c.N1, N2 = c.N2; \
  [[maybe_unused]] const int M = c.M1, N = c.N1
#define GUARD(...) [](Cfg c) -> bool { XDOF_CFG; return __VA_ARGS__; }
#define DOF(...) [](Cfg c) -> Rational { XDOF_CFG; return __VA_ARGS__; }
#define COLS(T, ...) [](Cfg c) { XDOF_CFG; return columns({__VA_ARGS__}, T); }
#define SYM(T, ia, ns) [](Cfg c) { XDOF_CFG; return sym(ia, ns, T); }
#define NO21(T, ...) [](Cfg c) { XDOF_CFG; return no21({__VA_ARGS__}, T); }
#define NO12(T, ...) [](Cfg c) { XDOF_CFG; return no12({__VA_ARGS__}, T); }

std::vector<TableSpec> build_specs() {
  std::vector<TableSpec> t;

  t.push_back({TableId::kI, "M1=M2=M, N1=N2=N", GUARD(M1 == M2 && N1 == N2),
               {
                   {"M >= 3N/2", 1, false, GUARD(2 * M >= 3 * N), SYM(1, 0, N), DOF(2 * N), ""},
                   {"N <= M < 3N/2", 3, false, GUARD(N <= M && 2 * M < 3 * N),
                    SYM(3, 6 * N - 4 * M, 6 * M - 6 * N), DOF(R(4, 3) * M), ""},
                   {"N/2 <= M < N", 3, true, GUARD(N <= 2 * M && M < N), SYM(3, 4 * M - 2 * N, 0),
                    DOF(R(4, 3) * (2 * M - N)), ""},
                   {"M < N/2", 1, true, GUARD(2 * M < N), SYM(1, 0, 0), DOF(0), ""},
               }});

  t.push_back({TableId::kII, "M1 >= N, M2 >= N, N1=N2=N",
               GUARD(N1 == N2 && M1 >= N && M2 >= N),
               {
                   {"2N <= M1", 1, false, GUARD(2 * N <= M1), COLS(1, 0, 2 * N, 0, 0, 0, 2 * N, 0, 0),
                    DOF(2 * N), ""},
                   {"N <= M1 < 2N, M1+M2 < 3N", 3, false, GUARD(M1 < 2 * N && M1 + M2 < 3 * N),
                    COLS(3, 6 * N - 2 * M1 - 2 * M2, 6 * M1 - 6 * N, 6 * N - 2 * M1 - 2 * M2,
                         6 * M2 - 6 * N, 6 * N - 2 * M1 - 2 * M2, 6 * M1 - 6 * N,
                         6 * N - 2 * M1 - 2 * M2, 6 * M2 - 6 * N),
                    DOF(R(2 * M1 + 2 * M2, 3)), ""},
                   {"N <= M1 < 2N, 3N <= M1+M2", 1, false, GUARD(M1 < 2 * N && 3 * N <= M1 + M2),
                    COLS(1, 0, 2 * M1 - 2 * N, 0, 4 * N - 2 * M1, 0, 2 * M1 - 2 * N, 0,
                         4 * N - 2 * M1),
                    DOF(2 * N), ""},
               }});

  t.push_back({TableId::kIII, "N1=N2=N, exactly one of M1, M2 below N",
               GUARD(N1 == N2 && ((M1 < N && M2 >= N) || (M1 >= N && M2 < N))),
               {
                   {"M1 < N, N <= M1+M2 < 2N", 3, true, GUARD(M1 < N && N <= M1 + M2 && M1 + M2 < 2 * N),
                    COLS(3, 2 * M1, 0, 2 * M1, 6 * M2 - 6 * N, 2 * M1, 0, 2 * M1, 6 * M2 - 6 * N),
                    DOF(R(4 * M1, 3) + 2 * M2 - 2 * N), ""},
                   {"M1 < N, 2N <= M1+M2, M2 < 2N", 3, false,
                    GUARD(M1 < N && 2 * N <= M1 + M2 && M2 < 2 * N),
                    COLS(3, 4 * N - 2 * M2, 0, 4 * N - 2 * M2, 6 * M2 - 6 * N, 4 * N - 2 * M2, 0,
                         4 * N - 2 * M2, 6 * M2 - 6 * N),
                    DOF(R(2 * M2 + 2 * N, 3)), ""},
                   {"M1 < N, 2N <= M2", 1, false, GUARD(M1 < N && 2 * N <= M2),
                    COLS(1, 0, 0, 0, 2 * N, 0, 0, 0, 2 * N), DOF(2 * N), ""},
                   {"M2 < N, N <= M1+M2 < 2N", 3, true, GUARD(M2 < N && N <= M1 + M2 && M1 + M2 < 2 * N),
                    COLS(3, 2 * M2, 6 * M1 - 6 * N, 2 * M2, 0, 2 * M2, 6 * M1 - 6 * N, 2 * M2, 0),
                    DOF(R(4 * M2, 3) + 2 * M1 - 2 * N), ""},
                   {"M2 < N, 2N <= M1+M2, M1 < 2N", 3, false,
                    GUARD(M2 < N && 2 * N <= M1 + M2 && M1 < 2 * N),
                    COLS(3, 4 * N - 2 * M1, 6 * M1 - 6 * N, 4 * N - 2 * M1, 0, 4 * N - 2 * M1,
                         6 * M1 - 6 * N, 4 * N - 2 * M1, 0),
                    DOF(R(2 * M1 + 2 * N, 3)), ""},
                   {"M2 < N, 2N <= M1", 1, false, GUARD(M2 < N && 2 * N <= M1),
                    COLS(1, 0, 2 * N, 0, 0, 0, 2 * N, 0, 0), DOF(2 * N), ""},
               }});

  const char* kGuardRepair =
      "guard N1 + N2/3 <= M replaced by N1 + N2/2 <= M (the printed guard admits "
      "configurations where the row violates the transmit-dimension constraint)";
  const char* kGuardRepairV =
      "guard N2 + N1/3 <= M replaced by N2 + N1/2 <= M (mirror of the Table IV repair)";

  t.push_back({TableId::kIV, "M1=M2=M >= N1 > N2", GUARD(M1 == M2 && N1 > N2 && M >= N1),
               {
                   {"3N2/2 <= N1, N1 + N2/2 <= M", 1, false,
                    GUARD(3 * N2 <= 2 * N1 && 2 * N1 + N2 <= 2 * M),
                    COLS(1, 0, N1, 0, N1, 0, N2, 0, N2), DOF(N1 + N2), ""},
                   {"3N2/2 <= N1, N1 <= M < N1 + N2/2", 2, false,
                    GUARD(3 * N2 <= 2 * N1 && 2 * M < 2 * N1 + N2),
                    COLS(2, 0, 2 * M - N2, 0, 2 * M - N2, 4 * N1 + 2 * N2 - 4 * M, 4 * M - 4 * N1,
                         4 * N1 + 2 * N2 - 4 * M, 4 * M - 4 * N1),
                    DOF(R(2 * M + N2, 2)), ""},
                   {"N2 <= N1 < 3N2/2, N1 + N2/2 <= M", 1, false,
                    GUARD(2 * N1 < 3 * N2 && 2 * N1 + N2 <= 2 * M),
                    COLS(1, 0, N1, 0, N1, 0, N2, 0, N2), DOF(N1 + N2), kGuardRepair},
                   {"N2 <= N1 < 3N2/2, 3N2/2 <= M < N1 + N2/2", 2, false,
                    GUARD(2 * N1 < 3 * N2 && 3 * N2 <= 2 * M && 2 * M < 2 * N1 + N2),
                    COLS(2, 0, 2 * M - N2, 0, 2 * M - N2, 4 * N1 + 2 * N2 - 4 * M, 4 * M - 4 * N1,
                         4 * N1 + 2 * N2 - 4 * M, 4 * M - 4 * N1),
                    DOF(R(2 * M + N2, 2)), kGuardRepair},
                   {"N2 <= N1 < 3N2/2, N1 <= M < 3N2/2", 3, false,
                    GUARD(2 * N1 < 3 * N2 && 2 * M < 3 * N2),
                    COLS(3, 6 * N2 - 4 * M, 6 * M - 6 * N2, 6 * N2 - 4 * M, 6 * M - 6 * N2,
                         6 * N1 - 4 * M, 6 * M - 6 * N1, 6 * N1 - 4 * M, 6 * M - 6 * N1),
                    DOF(R(4 * M, 3)), ""},
               }});

  t.push_back({TableId::kV, "M1=M2=M >= N2 > N1", GUARD(M1 == M2 && N2 > N1 && M >= N2),
               {
                   {"3N1/2 <= N2, N1/2 + N2 <= M", 1, false,
                    GUARD(3 * N1 <= 2 * N2 && N1 + 2 * N2 <= 2 * M),
                    COLS(1, 0, N1, 0, N1, 0, N2, 0, N2), DOF(N1 + N2), ""},
                   {"3N1/2 <= N2, 3N1/2 <= M < N1/2 + N2", 2, false,
                    GUARD(3 * N1 <= 2 * N2 && 3 * N1 <= 2 * M && 2 * M < N1 + 2 * N2),
                    COLS(2, 4 * N2 + 2 * N1 - 4 * M, 4 * M - 4 * N2, 4 * N2 + 2 * N1 - 4 * M,
                         4 * M - 4 * N2, 0, 2 * M - N1, 0, 2 * M - N1),
                    DOF(R(2 * M + N1, 2)), ""},
                   {"N1 <= N2 < 3N1/2, N2 + N1/2 <= M", 1, false,
                    GUARD(2 * N2 < 3 * N1 && N1 + 2 * N2 <= 2 * M),
                    COLS(1, 0, N1, 0, N1, 0, N2, 0, N2), DOF(N1 + N2), kGuardRepairV},
                   {"N1 <= N2 < 3N1/2, 3N1/2 <= M < N2 + N1/2", 2, false,
                    GUARD(2 * N2 < 3 * N1 && 3 * N1 <= 2 * M && 2 * M < N1 + 2 * N2),
                    COLS(2, 4 * N2 + 2 * N1 - 4 * M, 4 * M - 4 * N2, 4 * N2 + 2 * N1 - 4 * M,
                         4 * M - 4 * N2, 0, 2 * M - N1, 0, 2 * M - N1),
                    DOF(R(2 * M + N1, 2)), kGuardRepairV},
                   {"N1 <= N2 < 3N1/2, N2 <= M < 3N1/2", 3, false,
                    GUARD(2 * N2 < 3 * N1 && 2 * M < 3 * N1),
                    COLS(3, 6 * N2 - 4 * M, 6 * M - 6 * N2, 6 * N2 - 4 * M, 6 * M - 6 * N2,
                         6 * N1 - 4 * M, 6 * M - 6 * N1, 6 * N1 - 4 * M, 6 * M - 6 * N1),
                    DOF(R(4 * M, 3)), ""},
               }});

  t.push_back({TableId::kVI, "M1=M2=M, N1 <= M < N2", GUARD(M1 == M2 && N1 <= M && M < N2),
               {
                   {"N2/2 <= M < N1/2 + N2/2", 3, true, GUARD(N2 <= 2 * M && 2 * M < N1 + N2),
                    COLS(3, 4 * M - 2 * N2, 0, 4 * M - 2 * N2, 0, 2 * N1, 6 * M - 6 * N1, 2 * N1,
                         6 * M - 6 * N1),
                    DOF(R(10 * M - 4 * N1 - 2 * N2, 3)), ""},
                   {"N1/2 + N2/2 <= M < 3N1/4 + N2/2", 3, false,
                    GUARD(N1 + N2 <= 2 * M && 4 * M < 3 * N1 + 2 * N2),
                    COLS(3, 4 * M - 2 * N2, 0, 4 * M - 2 * N2, 0, 6 * N1 + 4 * N2 - 8 * M,
                         6 * M - 6 * N1, 6 * N1 + 4 * N2 - 8 * M, 6 * M - 6 * N1),
                    DOF(R(2 * M + 2 * N2, 3)), ""},
                   {"3N1/4 + N2/2 <= M < N2", 2, false, GUARD(3 * N1 + 2 * N2 <= 4 * M),
                    COLS(2, 2 * N1, 0, 2 * N1, 0, 0, 2 * N2 - N1, 0, 2 * N2 - N1),
                    DOF(R(N1 + 2 * N2, 2)), ""},
                   {"M < N2/2", 3, true, GUARD(2 * M < N2),
                    COLS(3, 0, 0, 0, 0, 2 * N1, 6 * M - 6 * N1, 2 * N1, 6 * M - 6 * N1),
                    DOF(2 * M - R(4 * N1, 3)), ""},
               }});

  t.push_back({TableId::kVII, "M1=M2=M, N2 <= M < N1", GUARD(M1 == M2 && N2 <= M && M < N1),
               {
                   {"N1/2 <= M < N1/2 + N2/2", 3, true, GUARD(N1 <= 2 * M && 2 * M < N1 + N2),
                    COLS(3, 2 * N2, 6 * M - 6 * N2, 2 * N2, 6 * M - 6 * N2, 4 * M - 2 * N1, 0,
                         4 * M - 2 * N1, 0),
                    DOF(R(10 * M - 4 * N2 - 2 * N1, 3)),
                    "DoF printed as (10M - 4N1 - 2N2)/3; the row's streams give the mirror of "
                    "Table VI, (10M - 4N2 - 2N1)/3"},
                   {"N1/2 + N2/2 <= M < 3N2/4 + N1/2", 3, false,
                    GUARD(N1 + N2 <= 2 * M && 4 * M < 3 * N2 + 2 * N1),
                    COLS(3, 6 * N2 + 4 * N1 - 8 * M, 6 * M - 6 * N2, 6 * N2 + 4 * N1 - 8 * M,
                         6 * M - 6 * N2, 4 * M - 2 * N1, 0, 4 * M - 2 * N1, 0),
                    DOF(R(2 * M + 2 * N1, 3)), ""},
                   {"3N2/4 + N1/2 <= M < N1", 2, false, GUARD(3 * N2 + 2 * N1 <= 4 * M),
                    COLS(2, 0, 2 * N1 - N2, 0, 2 * N1 - N2, 2 * N2, 0, 2 * N2, 0),
                    DOF(R(2 * N1 + N2, 2)),
                    "null-steering entries printed as 2N2 - N1; 2N1 - N2 is the mirror of "
                    "Table VI and the value consistent with the DoF column"},
                   {"M < N1/2", 3, true, GUARD(2 * M < N1),
                    COLS(3, 2 * N2, 6 * M - 6 * N2, 2 * N2, 6 * M - 6 * N2, 0, 0, 0, 0),
                    DOF(2 * M - R(4 * N2, 3)), ""},
               }});

  t.push_back({TableId::kVIII, "X channel without message 21, M1=M2=M > N1=N2=N",
               GUARD(M1 == M2 && N1 == N2 && M > N),
               {
                   {"N <= M < 4N/3", 3, false, GUARD(3 * M < 4 * N),
                    COLS(3, 2 * N, 6 * M - 6 * N, 2 * N, 0, 0, 0, 8 * N - 6 * M, 6 * M - 6 * N),
                    DOF(M), ""},
                   {"4N/3 <= M < 5N/3", 3, false, GUARD(4 * N <= 3 * M && 3 * M < 5 * N),
                    COLS(3, 2 * N, 6 * M - 8 * N, 2 * N, 0, 0, 0, 10 * N - 6 * M, 6 * M - 6 * N),
                    DOF(M), ""},
                   {"5N/3 <= M < 2N", 1, false, GUARD(5 * N <= 3 * M && M < 2 * N),
                    COLS(1, 2 * N - M, 2 * M - 2 * N, 2 * N - M, 0, 0, 0, 0, 2 * M - 2 * N),
                    DOF(M), ""},
                   {"2N <= M", 1, false, GUARD(2 * N <= M), COLS(1, 0, 2 * N, 0, 0, 0, 0, 0, 2 * N),
                    DOF(2 * N), ""},
               }});

  t.push_back({TableId::kIX, "M1, M2 >= N1, N2; N2 >= N1",
               GUARD(M1 >= N1 && M1 >= N2 && M2 >= N1 && M2 >= N2 && N2 >= N1),
               {
                   {"N1 >= 3M2 + 3M1 - 6N2", 3, false, GUARD(N1 >= 3 * M2 + 3 * M1 - 6 * N2),
                    NO21(3, 2 * N1, 2 * N1 - 6 * M2 - 6 * M1 + 12 * N2, 6 * M1 - 6 * N2,
                         6 * M2 - 6 * N2, 6 * M2 - 6 * N1),
                    DOF(M2), ""},
                   {"N1 >= M2 + M1 - 2N2, N1 < 3M2 + 3M1 - 6N2", 3, false,
                    GUARD(N1 >= M2 + M1 - 2 * N2 && N1 < 3 * M2 + 3 * M1 - 6 * N2),
                    NO21(3, 3 * N1 - 3 * M2 - 3 * M1 + 6 * N2, 0, 6 * M1 - 6 * N2, 6 * M2 - 6 * N2,
                         6 * M2 - 6 * N1),
                    DOF(M2), ""},
                   {"N1 >= M2 - N2, N1 < M2 + M1 - 2N2", 1, false,
                    GUARD(N1 >= M2 - N2 && N1 < M2 + M1 - 2 * N2),
                    NO21(1, 0, 0, 2 * N1 - 3 * M2 + 6 * N2, 2 * M2 - 2 * N2, 2 * M2 - 2 * N1),
                    DOF(M2), ""},
                   {"N1 < M2 - N2", 1, false, GUARD(N1 < M2 - N2), NO21(1, 0, 0, 0, 2 * N2, 2 * N1),
                    DOF(N1 + N2), ""},
               }});

  t.push_back({TableId::kX, "M1, M2 >= N1, N2; N2 < N1",
               GUARD(M1 >= N1 && M1 >= N2 && M2 >= N1 && M2 >= N2 && N2 < N1),
               {
                   {"N1 >= 3/2 M2 - N2", 3, false, GUARD(R(N1) >= R(3, 2) * M2 - N2),
                    NO21(3, 2 * N1, 2 * N2, 0, 2 * N1 - 2 * N2, 6 * M2 - 6 * N1), DOF(M2), ""},
                   {"N1 < 3/2 M2 - N2", 3, false, GUARD(R(N1) < R(3, 2) * M2 - N2),
                    NO21(3, 2 * N1, 4 * N1 - 6 * M2 + 6 * N2, 0, 6 * M2 - 2 * N1 - 6 * N2,
                         6 * M2 - 6 * N1),
                    DOF(M2), ""},
               }});

  t.push_back({TableId::kXI, "M1 >= N1, M1 < N2, M2 >= N1, M2 >= N2",
               GUARD(M1 >= N1 && M1 < N2 && M2 >= N1 && M2 >= N2),
               {
                   {"N1 >= 3M2 - 6N2", 3, false, GUARD(N1 >= 3 * M2 - 6 * N2),
                    NO21(3, 2 * N1, 2 * N1, 0, 0, 6 * M2 - 6 * N1), DOF(M2), ""},
                   {"N1 >= 3/2 M2 - 3/2 N2, N1 < 3M2 - 6N2", 3, false,
                    GUARD(R(N1) >= R(3, 2) * (M2 - N2) && N1 < 3 * M2 - 6 * N2),
                    NO21(3, 2 * N1, 2 * N1, 0, 6 * M2 - 2 * N1 - 6 * N2, 6 * M2 - 6 * N1), DOF(M2),
                    ""},
                   {"N1 >= M2 - N2, N1 >= 3/2 M2 - 3/2 N2", 1, false,
                    GUARD(N1 >= M2 - N2 && R(N1) >= R(3, 2) * (M2 - N2)),
                    NO21(1, 2 * N1 - 2 * M2 + 2 * N2, 0, 0, 4 * M2 - 2 * N1 - 4 * N2,
                         2 * M2 - 2 * N1),
                    DOF(M2), ""},
                   {"N1 < M2 - N2", 1, false, GUARD(N1 < M2 - N2), NO21(1, 0, 0, 0, 2 * N2, 2 * N1),
                    DOF(N1 + N2), ""},
               }});

  t.push_back({TableId::kXII, "M1 >= N1, M1 >= N2, M2 >= N1, M2 < N2",
               GUARD(M1 >= N1 && M1 >= N2 && M2 >= N1 && M2 < N2),
               {
                   {"N1 >= 3M2 - 3N2", 3, false, GUARD(N1 >= 3 * M2 - 3 * N2),
                    NO21(3, 2 * N1, 2 * N1, 0, 0, 6 * M2 - 6 * N1), DOF(M2), ""},
                   {"N1 >= 3/2 M2 - 3/2 N2, N1 < 2M2 - 3/2 N2", 3, false,
                    GUARD(R(N1) >= R(3, 2) * (M2 - N2) && R(N1) < 2 * M2 - R(3, 2) * N2),
                    NO21(3, 2 * N1, 4 * N1 - 6 * M2 + 6 * N2, 6 * M2 - 2 * N1 - 6 * N2, 0,
                         6 * M2 - 6 * N1),
                    DOF(M2), ""},
                   {"N1 >= 2M2 - 3/2 N2, N1 < 1/3 M2", 1, false,
                    GUARD(R(N1) >= 2 * M2 - R(3, 2) * N2 && R(N1) < R(M2, 3)),
                    NO21(1, 0, 2 * N1, 0, 0, 2 * M2 - 2 * N1), DOF(M2), ""},
                   {"N1 >= 1/3 M2, N1 < 3/2 M2 - 3/2 N2", 3, false,
                    GUARD(R(N1) >= R(M2, 3) && R(N1) < R(3, 2) * (M2 - N2)),
                    NO21(3, 3 * N1 - M2, 2 * M2, 0, 0, 6 * M2 - 6 * N1), DOF(M2), ""},
                   {"N1 < 3/2 M2 - 3/2 N2", 3, false, GUARD(R(N1) < R(3, 2) * (M2 - N2)),
                    NO21(3, 2 * N1, 2 * N1, 0, 0, 6 * M2 - 6 * N1), DOF(M2), ""},
               }});

  t.push_back({TableId::kXIII, "M1 < N1, M1 >= N2, M2 >= N1, M2 >= N2",
               GUARD(M1 < N1 && M1 >= N2 && M2 >= N1 && M2 >= N2),
               {
                   {"N1 < M2 - N2", 1, false, GUARD(N1 < M2 - N2), NO21(1, 0, 0, 0, 2 * N1, 2 * N1),
                    DOF(N1 + N2), ""},
                   {"N1 >= M2 - N2, N1 < 1/3 M1 + M2 - N2", 1, false,
                    GUARD(N1 >= M2 - N2 && R(N1) < R(M1, 3) + M2 - N2),
                    NO21(1, 2 * N1 - 2 * M2 + 2 * N2, 0, 0, 4 * M2 - 2 * N1 + 4 * N2,
                         2 * M2 - 2 * N1),
                    DOF(M2), ""},
                   {"N1 >= 1/3 M1 + M2 - N2, N1 < 1/3 M1 + M2 - 2/3 N2, N2 < M2 - 1/3 M1", 3, false,
                    GUARD(R(N1) >= R(M1, 3) + M2 - N2 && R(N1) < R(M1, 3) + M2 - R(2 * N2, 3) &&
                          R(N2) < M2 - R(M1, 3)),
                    NO21(3, 2 * M1, 6 * N1 - 6 * M2 + 6 * N2 - 2 * M1, 0, 6 * M2 - 2 * M1 - 6 * N2,
                         6 * M2 - 6 * N1),
                    DOF(M2), ""},
                   {"N1 >= 1/3 M1 + M2 - N2, N1 < 1/3 M1 + M2 - 2/3 N2, N2 >= M2 - 1/3 M1", 3, false,
                    GUARD(R(N1) >= R(M1, 3) + M2 - N2 && R(N1) < R(M1, 3) + M2 - R(2 * N2, 3) &&
                          R(N2) >= M2 - R(M1, 3)),
                    NO21(3, 2 * M1, 0, 0, 6 * N1 - 4 * M1, 6 * M2 - 6 * N1), DOF(M2), ""},
                   {"N1 >= 1/3 M1 + M2 - 2/3 N2, N1 < 2/3 M1 + M2 - 2/3 N2", 3, false,
                    GUARD(R(N1) >= R(M1, 3) + M2 - R(2 * N2, 3) &&
                          R(N1) < R(2 * M1, 3) + M2 - R(2 * N2, 3)),
                    NO21(3, 2 * M1, 2 * N2, 0, 6 * N1 - 4 * M1 - 2 * N2, 6 * M2 - 6 * N1), DOF(M2),
                    ""},
                   {"N1 >= 2/3 M1 + M2 - 2/3 N2, N1 < M1 + M2 - 2N2", 3, false,
                    GUARD(R(N1) >= R(2 * M1, 3) + M2 - R(2 * N2, 3) && N1 < M1 + M2 - 2 * N2),
                    NO21(3, 2 * M1, 2 * N2, 6 * N1 - 6 * M2 - 4 * M1 + 2 * N2, 6 * M2 - 6 * N2,
                         6 * M2 - 6 * N1),
                    DOF(M2), ""},
                   {"N1 >= M1 + M2 - 2N2, N1 < M2 - 2/3 N2", 3, false,
                    GUARD(N1 >= M1 + M2 - 2 * N2 && R(N1) < M2 - R(2 * N2, 3)),
                    NO21(3, 6 * N1 - 6 * M2 + 4 * N2, 2 * N2, 0, 6 * M2 - 6 * N2, 6 * M2 - 6 * N1),
                    DOF(M2), ""},
                   {"N1 >= M2 - 2/3 N2", 1, false, GUARD(R(N1) >= M2 - R(2 * N2, 3)),
                    NO21(1, 0, 2 * N1 - 2 * M2 + 2 * N2, 0, 2 * M2 - 2 * N2, 2 * M2 - 2 * N1),
                    DOF(M2), ""},
               }});

  t.push_back({TableId::kXIV, "M1 < N1, M1 < N2, M2 >= N1, M2 >= N2",
               GUARD(M1 < N1 && M1 < N2 && M2 >= N1 && M2 >= N2),
               {
                   {"N1 < 1/3 M1 + M2 - N2", 1, false, GUARD(R(N1) < R(M1, 3) + M2 - N2),
                    NO21(1, 2 * N1 - 2 * M2 + 2 * N2, 0, 0, 4 * M2 - 2 * N1 - 4 * N2,
                         2 * M2 - 2 * N1),
                    DOF(M2), ""},
                   {"N1 >= 1/3 M1 + M2 - N2, N1 < 2/3 M1 + M2 - N2", 3, false,
                    GUARD(R(N1) >= R(M1, 3) + M2 - N2 && R(N1) < R(2 * M1, 3) + M2 - N2),
                    NO21(3, 2 * M1, 6 * N1 - 6 * M2 - 2 * M1 + 6 * N2, 0, 6 * M2 - 2 * M1 - 6 * N2,
                         6 * M2 - 6 * N1),
                    DOF(M2), ""},
                   {"N1 >= 2/3 M1 + M2 - N2, N1 < M1 + M2 - N2", 3, false,
                    GUARD(R(N1) >= R(2 * M1, 3) + M2 - N2 && N1 < M1 + M2 - N2),
                    NO21(3, 2 * M1, 2 * M1, 0, 6 * M2 - 6 * N2, 6 * M2 - 6 * N1), DOF(M2), ""},
                   {"N1 >= M1 + M2 - N2", 3, true, GUARD(N1 >= M1 + M2 - N2),
                    NO21(3, 2 * M1, 2 * M1, 0, 6 * N1 - 6 * M2 - 6 * M1 + 6 * N2, 6 * M2 - 6 * N1),
                    DOF(M1 + 2 * M2 - N1 - N2), ""},
               }});

  t.push_back({TableId::kXV, "M1 >= N1, M1 >= N2, M2 < N1, M2 >= N2",
               GUARD(M1 >= N1 && M1 >= N2 && M2 < N1 && M2 >= N2),
               {
                   {"N1 < 1/3 M2 + N2", 3, false, GUARD(R(N1) < R(M2, 3) + N2),
                    NO21(3, 2 * M2, 6 * N1 - 4 * M2, 0, 0, 0), DOF(N1), ""},
                   {"N1 >= 1/3 M2 + N2, N2 < 1/3 M2", 1, false,
                    GUARD(R(N1) >= R(M2, 3) + N2 && R(N2) < R(M2, 3)),
                    NO21(1, 2 * N2, 0, 2 * N1 - 4 * N2, 0, 0), DOF(N1), ""},
                   {"N1 >= 1/3 M2 + N2, 1/3 M2 <= N2 < 1/2 M2, N1 < 1/3 M2 + M1", 3, false,
                    GUARD(R(N1) >= R(M2, 3) + N2 && R(M2, 3) <= R(N2) && R(N2) < R(M2, 2) &&
                          R(N1) < R(M2, 3) + M1),
                    NO21(3, 2 * M2, 6 * N2 - 2 * M2, 6 * N1 - 2 * M2 - 6 * N2, 0, 0), DOF(N1), ""},
                   {"N1 >= 1/3 M2 + N2, 1/3 M2 <= N2 < 1/2 M2, N1 >= 1/3 M2 + M1", 3, false,
                    GUARD(R(N1) >= R(M2, 3) + N2 && R(M2, 3) <= R(N2) && R(N2) < R(M2, 2) &&
                          R(N1) >= R(M2, 3) + M1),
                    NO21(3, 2 * M2, 6 * N2 - 2 * M2, 6 * N1 - 6 * M2 + 6 * N2,
                         6 * N1 - 2 * M2 - 6 * M1, 0),
                    DOF(N1), ""},
                   {"N1 >= 1/3 M2 + N2, N2 >= 1/2 M2", 3, false,
                    GUARD(R(N1) >= R(M2, 3) + N2 && R(N2) >= R(M2, 2)),
                    NO21(3, 2 * M2, 2 * N2, 6 * N1 - 4 * M2 - 2 * N2, 0, 0), DOF(N1), ""},
               }});

  t.push_back({TableId::kXVI, "M1 >= N1, M1 >= N2, M2 < N1, M2 < N2",
               GUARD(M1 >= N1 && M1 >= N2 && M2 < N1 && M2 < N2),
               {
                   {"N1 < M2 + M1 - N2", 3, false, GUARD(N1 < M2 + M1 - N2),
                    NO21(3, 2 * M2, 2 * M2, 6 * N1 - 6 * M2, 0, 0), DOF(N1), ""},
                   {"N1 >= M2 + M1 - N2", 3, true, GUARD(N1 >= M2 + M1 - N2),
                    NO21(3, 2 * M2, 2 * M2, 6 * M1 - 6 * N2, 0, 0), DOF(M1 + M2 - N2), ""},
               }});

  t.push_back({TableId::kXVII,
               "reciprocal configuration: M1+M2 > N1+N2, N1 < M1 < N2, N1 < M2 < N2",
               GUARD(M1 + M2 > N1 + N2 && M1 > N1 && M1 < N2 && M2 > N1 && M2 < N2),
               {
                   {"M1 < 4/3 N1 + N2 - M2", 3, false, GUARD(R(M1) < R(4 * N1, 3) + N2 - M2),
                    NO12(3, 8 * N1 + 6 * N2 - 6 * M1 - 6 * M2, 2 * N1, 6 * M1 - 6 * N1,
                         6 * M2 - 6 * N1),
                    DOF(N2), ""},
                   {"M1 >= 4/3 N1 + N2 - M2, M1 < 2N1 + N2 - M2", 1, false,
                    GUARD(R(M1) >= R(4 * N1, 3) + N2 - M2 && M1 < 2 * N1 + N2 - M2),
                    NO12(1, 0, 2 * N1 - M1 - M2 + N2, 2 * M1 - 2 * N1, 2 * M2 - 2 * N1), DOF(N2),
                    ""},
                   {"M1 >= 2N1 + N2 - M2", 1, false, GUARD(M1 >= 2 * N1 + N2 - M2),
                    NO12(1, 0, 0, 2 * N1 - 2 * M2 + 2 * N2, 2 * M2 - 2 * N1), DOF(N2), ""},
               }});
  return t;
}

#undef XDOF_CFG
#undef GUARD
#undef DOF
#undef COLS
#undef SYM
#undef NO21
#undef NO12

const std::vector<TableSpec>& specs() {
  static const std::vector<TableSpec> s = build_specs();
  return s;
}

ClosedFormResult match_row(const TableSpec& spec, const AntennaConfig& cfg) {
  cfg.validate();
  if (!spec.precondition(cfg)) {
    throw UnsupportedShape("table " + table_name(spec.id) + " does not cover " + cfg.str());
  }
  for (size_t r = 0; r < spec.rows.size(); ++r) {
    const TableRow& row = spec.rows[r];
    if (!row.guard(cfg)) continue;
    ClosedFormResult out;
    out.table = spec.id;
    out.row = static_cast<int>(r) + 1;
    out.regime_label = row.label;
    out.via_reciprocal = row.via_reciprocal;
    out.row_dof = row.dof(cfg);
    out.printed = row.streams(cfg);
    out.dof_total = out.row_dof;
    return out;
  }
  throw UnsupportedShape("no regime of table " + table_name(spec.id) + " matches " + cfg.str());
}

bool nonnegative(const StreamAllocation& a) {
  for (int m = 0; m < 4; ++m) {
    if (a.ia[m] < 0 || a.ns[m] < 0) return false;
  }
  return true;
}

// Reciprocity rows of Tables I..VII: the total comes from the reciprocal
// configuration's own table row.
void resolve_reciprocal_x(ClosedFormResult& out, const AntennaConfig& cfg) {
  const ClosedFormResult under = closed_form_X(cfg.reciprocal());
  if (under.via_reciprocal || !under.allocation_hint) {
    throw UnsupportedShape("reciprocal configuration of " + cfg.str() + " is not resolved directly");
  }
  out.dof_total = under.dof_total;
  out.allocation_hint = under.allocation_hint->relabeled_reciprocal();
}

}  // namespace

std::string table_name(TableId id) {
  static const char* names[] = {"I",  "II",  "III",  "IV",  "V",  "VI",  "VII",  "VIII", "IX",
                                "X",  "XI",  "XII",  "XIII", "XIV", "XV", "XVI", "XVII"};
  const int i = static_cast<int>(id);
  if (i < 1 || i > 17) throw InvalidInput("unknown table id");
  return names[i - 1];
}

TableId parse_table(const std::string& name) {
  for (TableId id : all_tables()) {
    if (table_name(id) == name) return id;
  }
  throw InvalidInput("unknown table '" + name + "' (expected I..XVII)");
}

std::vector<TableId> all_tables() {
  std::vector<TableId> out;
  for (int i = 1; i <= 17; ++i) out.push_back(static_cast<TableId>(i));
  return out;
}

bool is_appendix_table(TableId id) { return static_cast<int>(id) >= static_cast<int>(TableId::kIX); }

const TableSpec& table_spec(TableId id) {
  const int i = static_cast<int>(id);
  if (i < 1 || i > 17) throw InvalidInput("unknown table id");
  return specs()[i - 1];
}

ClosedFormResult evaluate_table(TableId id, const AntennaConfig& cfg) {
  ClosedFormResult out = match_row(table_spec(id), cfg);
  if (!is_appendix_table(id)) {
    if (out.via_reciprocal) {
      resolve_reciprocal_x(out, cfg);
    } else if (nonnegative(out.printed)) {
      out.allocation_hint = out.printed;
    }
    return out;
  }
  if (out.via_reciprocal) {
    // The outer bound is met through the reciprocal network.
    out.dof_total = z_total_outer(cfg, 2, 1);
  } else if (nonnegative(out.printed) && out.printed.total_dof() == out.dof_total) {
    out.allocation_hint = out.printed;
  }
  return out;
}

ClosedFormResult closed_form_X(const AntennaConfig& cfg) {
  cfg.validate();
  const int M1 = cfg.M1, M2 = cfg.M2, N1 = cfg.N1, N2 = cfg.N2;
  TableId id;
  if (N1 == N2) {
    const int N = N1;
    if (M1 == M2) {
      id = TableId::kI;
    } else if (M1 >= N && M2 >= N) {
      id = TableId::kII;
    } else if ((M1 < N) != (M2 < N)) {
      id = TableId::kIII;
    } else {
      throw UnsupportedShape("closed_form_X: no table covers " + cfg.str());
    }
  } else if (M1 == M2) {
    const int M = M1;
    if (M >= N1 && M >= N2) {
      id = N1 > N2 ? TableId::kIV : TableId::kV;
    } else if (N1 <= M && M < N2) {
      id = TableId::kVI;
    } else if (N2 <= M && M < N1) {
      id = TableId::kVII;
    } else {
      throw UnsupportedShape("closed_form_X: no table covers " + cfg.str());
    }
  } else {
    throw UnsupportedShape("closed_form_X: no table covers " + cfg.str());
  }
  return evaluate_table(id, cfg);
}

ClosedFormResult closed_form_X21(int M, int N) {
  if (M < 1 || N < 1) throw InvalidInput("closed_form_X21: antenna counts must be >= 1");
  return evaluate_table(TableId::kVIII, AntennaConfig{M, M, N, N});
}

ClosedFormResult closed_form_Z_appendix(const AntennaConfig& cfg, TableId variant) {
  if (!is_appendix_table(variant)) {
    throw InvalidInput("closed_form_Z_appendix: variant must be one of IX..XVII");
  }
  return evaluate_table(variant, cfg);
}

IlpProblem table_program(TableId id, const AntennaConfig& cfg, int T) {
  if (id == TableId::kXVII) return build_px12(cfg, T);
  if (is_appendix_table(id)) return build_px21(cfg, generic_dims(cfg), T);
  const MessageMask mask = id == TableId::kVIII ? MessageMask::z(2, 1) : MessageMask::x();
  return build_p0(cfg, generic_dims(cfg), T, {1, 1, 1, 1}, mask);
}

std::optional<std::vector<int>> program_vector(const IlpProblem& problem,
                                               const StreamAllocation& alloc) {
  std::vector<int> x;
  std::array<bool, 8> covered{};
  for (const auto& v : problem.vars) {
    const auto& first = v.slots.front();
    const int value = first.null_steer ? alloc.ns[first.message] : alloc.ia[first.message];
    for (const auto& s : v.slots) {
      const int other = s.null_steer ? alloc.ns[s.message] : alloc.ia[s.message];
      if (other != value) return std::nullopt;
      covered[2 * s.message + (s.null_steer ? 1 : 0)] = true;
    }
    x.push_back(value);
  }
  for (int m = 0; m < 4; ++m) {
    if ((!covered[2 * m] && alloc.ia[m] != 0) || (!covered[2 * m + 1] && alloc.ns[m] != 0)) {
      return std::nullopt;
    }
  }
  return x;
}

}  // namespace xdof
