// Closed-form achievable-DoF tables: the symmetric X-channel families, the
// X channel without message 21, and the tied-variable three-message
// programs. Each table is an ordered list of regime rows.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "xdof/allocation.hpp"
#include "xdof/allocator.hpp"
#include "xdof/channel.hpp"
#include "xdof/rational.hpp"

namespace xdof {

enum class TableId {
  kI = 1, kII, kIII, kIV, kV, kVI, kVII, kVIII,
  kIX, kX, kXI, kXII, kXIII, kXIV, kXV, kXVI, kXVII
};

std::string table_name(TableId id);
TableId parse_table(const std::string& name);
std::vector<TableId> all_tables();
// Tables IX..XVII describe three-message tied-variable programs.
bool is_appendix_table(TableId id);

struct TableRow {
  std::string label;  // regime condition as printed
  int T = 1;
  bool via_reciprocal = false;  // outer bound met through the reciprocal network
  std::function<bool(const AntennaConfig&)> guard;
  std::function<StreamAllocation(const AntennaConfig&)> streams;
  std::function<Rational(const AntennaConfig&)> dof;  // DoF column
  std::string repair;  // non-empty when the row deviates from the printed text
};

struct TableSpec {
  TableId id;
  std::string caption;
  std::function<bool(const AntennaConfig&)> precondition;
  std::vector<TableRow> rows;
};

const TableSpec& table_spec(TableId id);

struct ClosedFormResult {
  TableId table = TableId::kI;
  int row = 0;  // 1-based index of the matching regime
  std::string regime_label;
  bool via_reciprocal = false;
  Rational row_dof;    // DoF column value of the matched row
  Rational dof_total;  // total DoF of the configuration
  StreamAllocation printed;  // the row's stream counts and T
  // A stream allocation achieving dof_total; for reciprocity rows this is
  // the reciprocal network's row, relabeled. Absent when no consistent
  // allocation is known.
  std::optional<StreamAllocation> allocation_hint;
};

// First matching row of a specific table; unsupported-shape when the
// table's precondition fails or no row matches.
ClosedFormResult evaluate_table(TableId id, const AntennaConfig& cfg);

// Dispatches a four-message configuration to the applicable table among
// I..VII by shape; unsupported-shape for uncovered shapes.
ClosedFormResult closed_form_X(const AntennaConfig& cfg);

// The X channel without message 21 with M antennas at transmitters and N at
// receivers (M > N).
ClosedFormResult closed_form_X21(int M, int N);

ClosedFormResult closed_form_Z_appendix(const AntennaConfig& cfg, TableId variant);

// The integer program a table row describes, at extension T.
IlpProblem table_program(TableId id, const AntennaConfig& cfg, int T);

// The program's variable vector for an allocation, or nullopt when tied
// variables disagree or a masked message carries streams.
std::optional<std::vector<int>> program_vector(const IlpProblem& problem,
                                               const StreamAllocation& alloc);

}  // namespace xdof
