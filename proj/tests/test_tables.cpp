#include <set>

#include "doctest.h"
#include "xdof/allocator.hpp"
#include "xdof/bounds.hpp"
#include "xdof/error.hpp"
#include "xdof/tables.hpp"

using namespace xdof;

namespace {

const std::array<Rational, 4> kUnit{1, 1, 1, 1};

Rational sweep(const AntennaConfig& cfg, const MessageMask& mask = MessageMask::x()) {
  return sweep_best(cfg, RankProfile::full(cfg), mask, kUnit).dof;
}

}  // namespace

TEST_CASE("table names") {
  CHECK(all_tables().size() == 17);
  CHECK(table_name(TableId::kXIV) == "XIV");
  CHECK(parse_table("VIII") == TableId::kVIII);
  CHECK_THROWS_AS(parse_table("XVIII"), InvalidInput);
  CHECK_FALSE(is_appendix_table(TableId::kVIII));
  CHECK(is_appendix_table(TableId::kIX));
}

TEST_CASE("symmetric X examples") {
  const ClosedFormResult a = closed_form_X({3, 3, 3, 3});
  CHECK(a.table == TableId::kI);
  CHECK(a.dof_total == Rational(4));
  CHECK(a.printed.T == 3);
  CHECK(a.printed.ia[0] == 6);

  const ClosedFormResult b = closed_form_X({6, 6, 3, 3});
  CHECK(b.dof_total == Rational(6));
  CHECK(b.printed.ns[0] == 3);
  CHECK_FALSE(b.via_reciprocal);

  const ClosedFormResult c = closed_form_X({2, 2, 3, 3});
  CHECK(c.dof_total == Rational(4));
  CHECK(c.via_reciprocal);

  const ClosedFormResult d = closed_form_X({8, 8, 4, 2});
  CHECK(d.table == TableId::kIV);
  CHECK(d.dof_total == Rational(6));
}

TEST_CASE("Table I regimes along M") {
  std::set<int> rows;
  for (int M = 1; M <= 9; ++M) {
    const ClosedFormResult r = evaluate_table(TableId::kI, {M, M, 3, 3});
    rows.insert(r.row);
    CHECK(r.dof_total == x_total_outer({M, M, 3, 3}));
  }
  CHECK(rows.size() == 4);
}

TEST_CASE("X without message 21") {
  const ClosedFormResult a = closed_form_X21(4, 3);
  CHECK(a.dof_total == Rational(4));
  CHECK(a.printed.T == 3);
  const ClosedFormResult b = closed_form_X21(7, 3);
  CHECK(b.dof_total == Rational(6));
  CHECK(b.printed.T == 1);
  const ClosedFormResult c = closed_form_X21(5, 3);
  CHECK(c.dof_total == Rational(5));
  CHECK(c.printed.T == 1);
  for (int M = 4; M <= 8; ++M) {
    CHECK(closed_form_X21(M, 3).dof_total == Rational(std::min(6, M)));
    CHECK(closed_form_X21(M, 3).dof_total == z_total_outer({M, M, 3, 3}, 2, 1));
  }
  CHECK_THROWS_AS(closed_form_X21(3, 3), UnsupportedShape);
}

TEST_CASE("three-message program rows") {
  const ClosedFormResult ix = evaluate_table(TableId::kIX, {1, 4, 1, 1});
  CHECK(ix.row == 4);
  CHECK(ix.row_dof == Rational(1 + 1));  // N1 + N2

  const ClosedFormResult xvi = evaluate_table(TableId::kXVI, {2, 1, 2, 2});
  CHECK(xvi.row == 2);
  CHECK(xvi.via_reciprocal);
  CHECK(xvi.dof_total == Rational(2));

  const ClosedFormResult xvii = evaluate_table(TableId::kXVII, {3, 3, 1, 4});
  CHECK(xvii.row == 3);
  CHECK(xvii.row_dof == Rational(4));  // N2
  CHECK(solve_ilp(table_program(TableId::kXVII, {3, 3, 1, 4}, 1)).dof == Rational(4));
}

TEST_CASE("main tables agree with the allocator and the outer bound") {
  for (TableId id : all_tables()) {
    if (is_appendix_table(id)) continue;
    const TableSpec& spec = table_spec(id);
    int checked = 0;
    for (int a = 1; a <= 6; ++a)
      for (int b = 1; b <= 6; ++b)
        for (int c = 1; c <= 4; ++c)
          for (int d = 1; d <= 4; ++d) {
            const AntennaConfig cfg{a, b, c, d};
            if (!spec.precondition(cfg)) continue;
            ClosedFormResult r;
            try {
              r = evaluate_table(id, cfg);
            } catch (const UnsupportedShape&) {
              continue;
            }
            ++checked;
            const MessageMask mask = id == TableId::kVIII ? MessageMask::z(2, 1) : MessageMask::x();
            CHECK(r.dof_total == sweep(cfg, mask));
            REQUIRE(r.allocation_hint.has_value());
            CHECK(r.allocation_hint->total_dof() == r.dof_total);
          }
    CHECK(checked > 0);
  }
}

TEST_CASE("program vectors") {
  const AntennaConfig cfg{3, 3, 3, 3};
  const IlpProblem p = table_program(TableId::kI, cfg, 3);
  StreamAllocation a;
  a.T = 3;
  a.ia = {6, 6, 6, 6};
  const auto x = program_vector(p, a);
  REQUIRE(x.has_value());
  CHECK(p.feasible(*x));
  CHECK(p.weighted_dof(*x) == Rational(4));
  // Tied variables must agree.
  const IlpProblem tied = table_program(TableId::kIX, {2, 2, 1, 1}, 1);
  StreamAllocation bad;
  bad.ia = {1, 2, 0, 0};
  CHECK_FALSE(program_vector(tied, bad).has_value());
}

TEST_CASE("unsupported shapes") {
  CHECK_THROWS_AS(evaluate_table(TableId::kI, {3, 4, 3, 3}), UnsupportedShape);
}
