#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mvop/linalg.hpp"

namespace mvop {

struct ResidualEntry {
  std::string suite;
  int n = 0;
  Real s = 0;
  std::string identity;
  Real abs_residual = 0;
  Real rel_residual = 0;
  Real tolerance = 0;
  bool skipped = false;
  std::string note;

  bool pass() const { return skipped || rel_residual <= tolerance; }
};

/// Named identity residuals with tolerance verdicts. Relative residuals follow
/// abs / (1 + |reference|_F).
class ResidualReport {
 public:
  ResidualReport() = default;
  ResidualReport(std::string suite, int n, Real s) : suite_(std::move(suite)), n_(n), s_(s) {}

  const std::string& suite() const { return suite_; }
  int n() const { return n_; }
  Real s() const { return s_; }

  /// Records |lhs - rhs|_F with reference max(|lhs|, |rhs|).
  ResidualEntry& check(const std::string& identity, const CMatrix& lhs, const CMatrix& rhs, Real tolerance);
  /// Records |expr|_F against an explicit reference scale.
  ResidualEntry& check_zero(const std::string& identity, const CMatrix& expr, Real reference, Real tolerance);
  ResidualEntry& record(const std::string& identity, Real abs_residual, Real reference, Real tolerance);
  ResidualEntry& skip(const std::string& identity, const std::string& reason);

  void merge(const ResidualReport& other);
  void add_note(std::string note) { notes_.push_back(std::move(note)); }
  void set_digest(std::string digest) { digest_ = std::move(digest); }

  const std::vector<ResidualEntry>& entries() const { return entries_; }
  const std::vector<std::string>& notes() const { return notes_; }
  const std::string& digest() const { return digest_; }

  const ResidualEntry* find(const std::string& identity) const;
  const ResidualEntry* find(const std::string& identity, int n) const;

  bool all_passed() const;
  std::size_t failures() const;
  /// Largest relative residual among evaluated (non-skipped) entries.
  Real max_rel() const;

  /// Orders rows by (suite, n, identity, s) so emitted files are deterministic.
  void sort();

  nlohmann::json to_json() const;
  /// Columns: suite,n,s,identity,abs_residual,rel_residual,tolerance,pass
  std::string to_csv() const;

 private:
  std::string suite_;
  int n_ = 0;
  Real s_ = 0;
  std::string digest_;
  std::vector<ResidualEntry> entries_;
  std::vector<std::string> notes_;
};

/// Multiplier from the MVOP_TOL_SCALE environment variable (default 1).
Real tolerance_scale();

}  // namespace mvop
