#include "mvop_tools/suites.hpp"

#include <cstdint>
#include <cstdio>

#include "mvop/family.hpp"
#include "mvop/lax.hpp"
#include "mvop/serialize.hpp"
#include "mvop/special_family.hpp"

namespace mvop::tools {

namespace {

constexpr Real kStructuralTol = 1e-7L;
constexpr Real kOrthogonalityTol = 1e-8L;
constexpr Real kDiscreteTol = 1e-6L;
constexpr Real kContinuousTol = 1e-5L;
constexpr Real kSecondOrderTol = 1e-3L;
constexpr Real kSectionFinalTol = 1e-6L;
constexpr Real kConstructionTol = 1e-12L;

ResidualReport structural(const WeightSpec& spec, const SuiteOptions& o) {
  const Family fam = build_family(spec, o.n_max);
  ResidualReport r = orthogonality_residual(fam, kOrthogonalityTol * o.tol_scale);
  for (int n = 0; n <= o.n_max; ++n) r.merge(verify_structural(fam, compute_lax(fam, n), kStructuralTol * o.tol_scale));
  return r;
}

ResidualReport discrete(const WeightSpec& spec, const SuiteOptions& o) {
  const auto chain = compute_lax_chain(build_family(spec, o.n_max + 1));
  ResidualReport r("discrete", 0, spec.s);
  for (int n = 0; n <= o.n_max; ++n) r.merge(residual_dPsystem(chain, n, kDiscreteTol * o.tol_scale));
  return r;
}

ResidualReport continuous(const WeightSpec& spec, const SuiteOptions& o) {
  ResidualReport r("continuous", 0, spec.s);
  for (int n = 0; n <= o.n_max; ++n)
    r.merge(residual_Psystem(spec, n, spec.s, o.h_first, kContinuousTol * o.tol_scale));
  return r;
}

ResidualReport closed(const WeightSpec& spec, const SuiteOptions& o) {
  const auto chain = compute_lax_chain(build_family(spec, o.n_max + 1));
  ResidualReport r("closed", 0, spec.s);
  const ClosedTolerances ct{kContinuousTol * o.tol_scale, kSecondOrderTol * o.tol_scale};
  for (int n = 0; n <= o.n_max; ++n) {
    r.merge(residual_discrete_closed(chain, n, kDiscreteTol * o.tol_scale, o.d_reading));
    r.merge(residual_continuous_closed(spec, n, spec.s, o.h_first, o.h_second, ct, o.second_order));
  }
  return r;
}

ResidualReport section_final(const WeightSpec& spec, const SuiteOptions& o) {
  if (!spec.dg1) throw InvalidArgument("section-final suite needs a dg1 weight");
  WeightSpec plain = spec;
  plain.normalize_gamma0 = false;
  const DG1Family f = build_dg1(spec.dg1->nu, spec.alpha);
  ResidualReport r = verify_dg1_invariants(f, kConstructionTol * o.tol_scale);
  const auto chain = compute_lax_chain(build_family(plain, o.n_max + 1));
  for (int n = 0; n <= o.n_max; ++n) r.merge(verify_section_final(f, chain, n, kSectionFinalTol * o.tol_scale));
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"structural", "discrete",      "continuous",
                                              "closed",     "section-final", "all"};
  return names;
}

ResidualReport run_suite(const WeightSpec& base, const std::string& suite, Real s, const SuiteOptions& opt) {
  const WeightSpec spec = base.with_s(s);
  ResidualReport r(suite, 0, s);
  if (suite == "structural" || suite == "all") r.merge(structural(spec, opt));
  if (suite == "discrete" || suite == "all") r.merge(discrete(spec, opt));
  if (suite == "continuous" || suite == "all") r.merge(continuous(spec, opt));
  if (suite == "closed" || suite == "all") r.merge(closed(spec, opt));
  if (suite == "section-final" || (suite == "all" && spec.dg1)) r.merge(section_final(spec, opt));
  if (r.entries().empty()) throw InvalidArgument("unknown suite '" + suite + "'");
  r.set_digest(spec_digest(spec));
  return r;
}

std::string spec_digest(const WeightSpec& spec) {
  const std::string text = spec_to_json(spec).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace mvop::tools
