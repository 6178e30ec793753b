#include "mvop/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <tuple>

namespace mvop {

ResidualEntry& ResidualReport::record(const std::string& identity, Real abs_residual, Real reference,
                                      Real tolerance) {
  ResidualEntry e;
  e.suite = suite_;
  e.n = n_;
  e.s = s_;
  e.identity = identity;
  e.abs_residual = abs_residual;
  e.rel_residual = relative_residual(abs_residual, reference);
  if (!std::isfinite(e.rel_residual)) e.rel_residual = std::numeric_limits<Real>::infinity();
  e.tolerance = tolerance;
  entries_.push_back(std::move(e));
  return entries_.back();
}

ResidualEntry& ResidualReport::check(const std::string& identity, const CMatrix& lhs, const CMatrix& rhs,
                                     Real tolerance) {
  return record(identity, fro_norm(lhs - rhs), std::max(fro_norm(lhs), fro_norm(rhs)), tolerance);
}

ResidualEntry& ResidualReport::check_zero(const std::string& identity, const CMatrix& expr, Real reference,
                                          Real tolerance) {
  return record(identity, fro_norm(expr), reference, tolerance);
}

ResidualEntry& ResidualReport::skip(const std::string& identity, const std::string& reason) {
  ResidualEntry e;
  e.suite = suite_;
  e.n = n_;
  e.s = s_;
  e.identity = identity;
  e.skipped = true;
  e.note = reason;
  entries_.push_back(std::move(e));
  return entries_.back();
}

void ResidualReport::merge(const ResidualReport& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
  notes_.insert(notes_.end(), other.notes_.begin(), other.notes_.end());
  if (digest_.empty()) digest_ = other.digest_;
}

const ResidualEntry* ResidualReport::find(const std::string& identity) const {
  for (const auto& e : entries_)
    if (e.identity == identity) return &e;
  return nullptr;
}

const ResidualEntry* ResidualReport::find(const std::string& identity, int n) const {
  for (const auto& e : entries_)
    if (e.identity == identity && e.n == n) return &e;
  return nullptr;
}

bool ResidualReport::all_passed() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const ResidualEntry& e) { return e.pass(); });
}

std::size_t ResidualReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [](const ResidualEntry& e) { return !e.pass(); }));
}

Real ResidualReport::max_rel() const {
  Real m = 0;
  for (const auto& e : entries_)
    if (!e.skipped) m = std::max(m, e.rel_residual);
  return m;
}

void ResidualReport::sort() {
  std::stable_sort(entries_.begin(), entries_.end(), [](const ResidualEntry& a, const ResidualEntry& b) {
    return std::tie(a.suite, a.n, a.identity, a.s) < std::tie(b.suite, b.n, b.identity, b.s);
  });
}

nlohmann::json ResidualReport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& e : entries_) {
    nlohmann::json row = {{"suite", e.suite}, {"n", e.n}, {"s", static_cast<double>(e.s)}, {"identity", e.identity}};
    if (e.skipped) {
      row["status"] = "skipped";
      row["note"] = e.note;
    } else {
      row["abs_residual"] = static_cast<double>(e.abs_residual);
      row["rel_residual"] = static_cast<double>(e.rel_residual);
      row["tolerance"] = static_cast<double>(e.tolerance);
      row["status"] = e.pass() ? "pass" : "fail";
      if (!e.note.empty()) row["note"] = e.note;
    }
    rows.push_back(std::move(row));
  }
  return {{"digest", digest_},
          {"all_passed", all_passed()},
          {"failures", failures()},
          {"notes", notes_},
          {"entries", std::move(rows)}};
}

std::string ResidualReport::to_csv() const {
  std::ostringstream out;
  out.precision(10);
  out << "suite,n,s,identity,abs_residual,rel_residual,tolerance,pass\n";
  for (const auto& e : entries_) {
    out << e.suite << ',' << e.n << ',' << static_cast<double>(e.s) << ',' << e.identity << ',';
    if (e.skipped) {
      out << ",,,skipped\n";
    } else {
      out << static_cast<double>(e.abs_residual) << ',' << static_cast<double>(e.rel_residual) << ','
          << static_cast<double>(e.tolerance) << ',' << (e.pass() ? "true" : "false") << '\n';
    }
  }
  return out.str();
}

Real tolerance_scale() {
  const char* env = std::getenv("MVOP_TOL_SCALE");
  if (!env || !*env) return 1.0L;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || !(v > 0) || !std::isfinite(v)) return 1.0L;
  return static_cast<Real>(v);
}

}  // namespace mvop
