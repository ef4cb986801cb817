#pragma once

#include <filesystem>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace skewlab {

/// One output row. Every emitter in the project uses the same column set,
/// so downstream tooling can concatenate files from different subcommands;
/// fields that do not apply stay NaN and render as empty cells.
struct ReportRow {
  static constexpr double unset = std::numeric_limits<double>::quiet_NaN();

  std::string kind;  // "line" | "bessel2"
  double eps = unset;
  double alpha = unset;
  double lambda = unset;
  double x = unset;
  double phi = unset;       // upper-exit probability
  double v_closed = unset;  // closed-form value
  double v_fd = unset;      // finite-difference oracle value
  double v_mc = unset;      // Monte Carlo estimate
  double mc_se = unset;     // standard error of v_mc
  double v_limit = unset;   // limit-problem value
  double abs_err = unset;   // |v_closed - v_limit| or |lhs - rhs|
  std::string regime;       // "neumann" | "robin" | "dirichlet" | ""
  double C = unset;         // limit-solution coefficient
  double cond_alpha_eps_over_lambda = unset;
};

/// Free-form metadata for the JSON envelope. The timestamp never enters
/// CSV output, which therefore stays byte-identical across reruns with the
/// same seed.
struct ReportMetadata {
  std::string tool;
  std::string timestamp;  // ISO 8601; empty omits the field
  std::map<std::string, std::string> entries;
};

class Report {
 public:
  static const std::vector<std::string>& columns();

  void add_row(ReportRow row) { rows_.push_back(std::move(row)); }
  const std::vector<ReportRow>& rows() const { return rows_; }
  bool empty() const { return rows_.empty(); }

  /// Header line plus one line per row, '\n' terminated. Doubles are
  /// printed with round-trip precision; NaN renders as an empty cell.
  std::string to_csv() const;
  std::string to_json(const ReportMetadata& meta) const;

  /// Atomic replace: writes to a sibling temp file, then renames.
  void write_csv(const std::filesystem::path& path) const;
  void write_json(const std::filesystem::path& path, const ReportMetadata& meta) const;

 private:
  std::vector<ReportRow> rows_;
};

/// Current UTC time in ISO 8601, for JSON metadata.
std::string iso8601_now();

}  // namespace skewlab
