#include "mvop_tools/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "mvop/family.hpp"
#include "mvop/serialize.hpp"
#include "mvop/systems.hpp"
#include "mvop_tools/suites.hpp"

namespace mvop::tools {

using nlohmann::json;

namespace {

struct Common {
  std::string spec_path;
  std::optional<double> s;
  std::string out;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--spec", c.spec_path, "Weight spec JSON file")->required();
  sub->add_option("--out", c.out, "Output prefix; writes <prefix>.json and <prefix>.csv");
}

WeightSpec load(const Common& c) {
  WeightSpec spec = load_spec_file(c.spec_path);
  if (c.s) spec = spec.with_s(*c.s);
  return spec;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot write " + path);
  f << text;
}

std::vector<Real> parse_list(const std::string& text) {
  std::vector<Real> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stold(item));
    } catch (const std::exception&) {
      throw InvalidArgument("bad number '" + item + "' in list");
    }
  }
  if (out.empty()) throw InvalidArgument("empty list");
  return out;
}

Real rel(const CMatrix& x, const CMatrix& ref) { return fro_norm(x - ref) / (1 + fro_norm(ref)); }

int emit_report(ResidualReport& r, const std::string& prefix, std::ostream& out) {
  r.sort();
  if (prefix.empty()) {
    out << r.to_json().dump(2) << "\n";
  } else {
    write_file(prefix + ".json", r.to_json().dump(2) + "\n");
    write_file(prefix + ".csv", r.to_csv());
    out << "entries " << r.entries().size() << ", failures " << r.failures() << ", max rel "
        << static_cast<double>(r.max_rel()) << "\n";
  }
  return r.all_passed() ? 0 : 1;
}

std::string csv_header(Eigen::Index N) {
  std::ostringstream h;
  h << "s";
  for (const char* name : {"a", "b", "Bn", "Bhat"})
    for (Eigen::Index i = 0; i < N; ++i)
      for (Eigen::Index j = 0; j < N; ++j) h << "," << name << "_" << i << j << "_re," << name << "_" << i << j << "_im";
  return h.str();
}

std::string csv_row(const FlowState& f) {
  std::ostringstream row;
  row << std::setprecision(17) << static_cast<double>(f.s);
  for (const CMatrix* m : {&f.a, &f.b, &f.Bn, &f.Bhat})
    for (Eigen::Index i = 0; i < m->rows(); ++i)
      for (Eigen::Index j = 0; j < m->cols(); ++j)
        row << "," << static_cast<double>((*m)(i, j).real()) << "," << static_cast<double>((*m)(i, j).imag());
  return row.str();
}

json state_json(const FlowState& f) {
  return {{"s", static_cast<double>(f.s)},
          {"a", cmatrix_to_json(f.a)},
          {"b", cmatrix_to_json(f.b)},
          {"Bn", cmatrix_to_json(f.Bn)},
          {"Bhat", cmatrix_to_json(f.Bhat)}};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Matrix-valued orthogonal polynomials for deformed Laguerre weights"};
  app.require_subcommand(1);

  Common moments_c, family_c, verify_c, evolve_c, boot_c, piii_c, sweep_c;

  int kmax = 6;
  auto* moments = app.add_subcommand("moments", "Matrix moments table (CSV)");
  add_common(moments, moments_c);
  moments->add_option("--s", moments_c.s, "Override s");
  moments->add_option("--kmax", kmax, "Largest k")->check(CLI::NonNegativeNumber);

  int family_nmax = 4;
  auto* family = app.add_subcommand("family", "MVOP family dump (JSON)");
  add_common(family, family_c);
  family->add_option("--s", family_c.s, "Override s");
  family->add_option("--nmax", family_nmax, "Largest degree")->check(CLI::NonNegativeNumber);

  SuiteOptions vopt;
  std::string s_list;
  std::string suite = "all";
  std::string d_reading = "inverse";
  std::string second_order = "complete";
  auto* verify = app.add_subcommand("verify", "Run identity suites (JSON + CSV report)");
  add_common(verify, verify_c);
  verify->add_option("--nmax", vopt.n_max, "Largest n checked")->check(CLI::NonNegativeNumber);
  verify->add_option("--s-list", s_list, "Comma-separated s values (default: the spec's s)");
  verify->add_option("--suite", suite, "Suite")->check(CLI::IsMember(suite_names()));
  verify->add_option("--d-reading", d_reading, "Reading of D_n")->check(CLI::IsMember({"inverse", "power"}));
  verify->add_option("--second-order", second_order, "Reading of the second-order a-equation")
      ->check(CLI::IsMember({"truncated", "complete"}));

  int evolve_n = 1;
  double s0 = 0.5, s1 = 2.0;
  bool dump_traj = false;
  auto* evolve = app.add_subcommand("evolve", "Integrate the closed first-order system in s");
  add_common(evolve, evolve_c);
  evolve->add_option("--n", evolve_n, "Degree")->check(CLI::NonNegativeNumber);
  evolve->add_option("--s0", s0, "Start (initial data by quadrature)")->required();
  evolve->add_option("--s1", s1, "End")->required();
  evolve->add_flag("--dump-trajectory", dump_traj, "Emit accepted steps as CSV");

  int boot_nmax = 4;
  auto* boot = app.add_subcommand("bootstrap", "Discrete four-step recursion from a_0");
  add_common(boot, boot_c);
  boot->add_option("--s", boot_c.s, "Override s");
  boot->add_option("--nmax", boot_nmax, "Largest n")->check(CLI::NonNegativeNumber);

  int piii_n = 1;
  double p_s0 = 0.5, p_s1 = 2.0, p_ds = 0.01;
  auto* piii = app.add_subcommand("piii", "Scalar Painleve III residual scan (CSV)");
  add_common(piii, piii_c);
  piii->add_option("--n", piii_n, "Degree")->check(CLI::NonNegativeNumber);
  piii->add_option("--s0", p_s0, "Grid start")->required();
  piii->add_option("--s1", p_s1, "Grid end")->required();
  piii->add_option("--ds", p_ds, "Grid spacing")->required()->check(CLI::PositiveNumber);

  SuiteOptions sopt;
  std::string param = "s";
  double from = 0.5, to = 2.0;
  int steps = 4;
  std::string sweep_suite = "structural";
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  auto* sweep = app.add_subcommand("sweep", "Run a suite over a parameter grid in parallel");
  add_common(sweep, sweep_c);
  sweep->add_option("--param", param, "Swept parameter")->check(CLI::IsMember({"s"}));
  sweep->add_option("--from", from, "Grid start")->required();
  sweep->add_option("--to", to, "Grid end")->required();
  sweep->add_option("--steps", steps, "Number of grid points")->check(CLI::PositiveNumber);
  sweep->add_option("--suite", sweep_suite, "Suite")->check(CLI::IsMember(suite_names()));
  sweep->add_option("--nmax", sopt.n_max, "Largest n checked")->check(CLI::NonNegativeNumber);
  sweep->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    const Real scale = tolerance_scale();

    if (*moments) {
      const WeightSpec spec = load(moments_c);
      std::ostringstream csv;
      csv << "k,row,col,re,im\n" << std::setprecision(17);
      for (int k = -1; k <= kmax; ++k) {
        const CMatrix m = matrix_moment(spec, k);
        for (Eigen::Index i = 0; i < m.rows(); ++i)
          for (Eigen::Index j = 0; j < m.cols(); ++j)
            csv << k << "," << i << "," << j << "," << static_cast<double>(m(i, j).real()) << ","
                << static_cast<double>(m(i, j).imag()) << "\n";
      }
      if (moments_c.out.empty())
        out << csv.str();
      else
        write_file(moments_c.out + ".csv", csv.str());
      return 0;
    }

    if (*family) {
      const WeightSpec spec = load(family_c);
      const json j = family_to_json(build_family(spec, family_nmax));
      if (family_c.out.empty())
        out << j.dump(2) << "\n";
      else
        write_file(family_c.out + ".json", j.dump(2) + "\n");
      return 0;
    }

    if (*verify) {
      const WeightSpec spec = load(verify_c);
      vopt.tol_scale = scale;
      vopt.d_reading = d_reading == "inverse" ? DReading::inverse : DReading::power_n_minus_1;
      vopt.second_order = second_order == "truncated" ? SecondOrderReading::truncated : SecondOrderReading::complete;
      const std::vector<Real> ss = s_list.empty() ? std::vector<Real>{spec.s} : parse_list(s_list);
      ResidualReport r(suite, 0, ss.front());
      for (Real s : ss) r.merge(run_suite(spec, suite, s, vopt));
      r.add_note("D_n reading: " + to_string(vopt.d_reading));
      r.add_note("second-order reading: " + to_string(vopt.second_order));
      return emit_report(r, verify_c.out, out);
    }

    if (*evolve) {
      const WeightSpec spec = load(evolve_c);
      EvolveOptions eo;
      eo.record_trajectory = dump_traj;
      const EvolveResult res = evolve_from_spec(spec, evolve_n, s0, s1, eo);
      WeightSpec at1 = spec.with_s(s1);
      at1.normalize_gamma0 = false;
      const LaxQuantities q = compute_lax(build_family(at1, evolve_n), evolve_n);
      const Real ea = rel(res.final_state.a, q.a);
      const Real eb = rel(res.final_state.b, q.b);
      json j{{"n", evolve_n},
             {"s0", s0},
             {"s1", s1},
             {"steps", res.steps},
             {"final", state_json(res.final_state)},
             {"quadrature", state_json(flow_state(q))},
             {"rel_error", {{"a", static_cast<double>(ea)}, {"b", static_cast<double>(eb)}}}};
      std::string traj;
      if (dump_traj) {
        traj = csv_header(res.final_state.a.rows()) + "\n";
        for (const FlowState& f : res.trajectory) traj += csv_row(f) + "\n";
      }
      if (evolve_c.out.empty()) {
        out << (dump_traj ? traj : j.dump(2) + "\n");
      } else {
        write_file(evolve_c.out + ".json", j.dump(2) + "\n");
        if (dump_traj) write_file(evolve_c.out + ".csv", traj);
      }
      return std::max(ea, eb) <= 1e-5L * scale ? 0 : 1;
    }

    if (*boot) {
      WeightSpec spec = load(boot_c);
      spec.normalize_gamma0 = true;
      const Family ref = build_family(spec, boot_nmax);
      const auto steps_out = bootstrap_discrete(spec, boot_nmax, std::nullopt, &ref);
      json arr = json::array();
      Real worst = 0;
      for (const BootstrapStep& st : steps_out) {
        const LaxQuantities q = compute_lax(ref, st.n);
        const Real e = std::max({rel(st.a, q.a), rel(st.b, q.b), rel(st.Bn, q.Bn), rel(st.Bhat, q.Bhat)});
        worst = std::max(worst, e);
        json x{{"n", st.n},
               {"a", cmatrix_to_json(st.a)},
               {"b", cmatrix_to_json(st.b)},
               {"Bn", cmatrix_to_json(st.Bn)},
               {"Bhat", cmatrix_to_json(st.Bhat)},
               {"alpha_rec", cmatrix_to_json(st.alpha_rec)},
               {"rel_error_vs_quadrature", static_cast<double>(e)}};
        if (st.beta_rec) x["beta_rec"] = cmatrix_to_json(*st.beta_rec);
        arr.push_back(x);
      }
      const json j{{"s", static_cast<double>(spec.s)}, {"steps", arr}, {"max_rel_error", static_cast<double>(worst)}};
      if (boot_c.out.empty())
        out << j.dump(2) << "\n";
      else
        write_file(boot_c.out + ".json", j.dump(2) + "\n");
      return worst <= 1e-5L * scale ? 0 : 1;
    }

    if (*piii) {
      const WeightSpec spec = load(piii_c);
      std::vector<Real> grid;
      const long count = std::lround((p_s1 - p_s0) / p_ds);
      for (long i = 0; i <= count; ++i) grid.push_back(p_s0 + i * Real(p_ds));
      const PiiiScan scan = scalar_piii_scan(spec, piii_n, grid);
      std::ostringstream csv;
      csv << "s,piii_residual,p3_residual\n" << std::setprecision(17);
      for (std::size_t i = 0; i < scan.s.size(); ++i)
        csv << static_cast<double>(scan.s[i]) << "," << static_cast<double>(scan.piii[i]) << ","
            << static_cast<double>(scan.p3[i]) << "\n";
      if (piii_c.out.empty())
        out << csv.str();
      else
        write_file(piii_c.out + ".csv", csv.str());
      err << "max piii " << static_cast<double>(scan.max_piii) << ", max p3 " << static_cast<double>(scan.max_p3)
          << "\n";
      return scan.max_piii <= 1e-3L * scale && scan.max_p3 <= 1e-6L * scale ? 0 : 1;
    }

    if (*sweep) {
      const WeightSpec spec = load(sweep_c);
      sopt.tol_scale = scale;
      std::vector<Real> grid;
      for (int i = 0; i < steps; ++i) grid.push_back(steps == 1 ? from : from + (to - from) * Real(i) / (steps - 1));
      std::vector<ResidualReport> parts(grid.size());
      std::vector<std::exception_ptr> errors(grid.size());
      std::atomic<std::size_t> next{0};
      auto worker = [&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
          try {
            parts[i] = run_suite(spec, sweep_suite, grid[i], sopt);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      };
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < std::min<std::size_t>(jobs, grid.size()); ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
      for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
      ResidualReport r(sweep_suite, 0, grid.front());
      for (const auto& p : parts) r.merge(p);
      return emit_report(r, sweep_c.out, out);
    }
  } catch (const Error& e) {
    json diag{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
    if (const auto* sf = dynamic_cast<const StepFailure*>(&e)) diag["last_good_s"] = static_cast<double>(sf->last_good_s());
    out << diag.dump(2) << "\n";
    return 2;
  }
  return 0;
}

}  // namespace mvop::tools
