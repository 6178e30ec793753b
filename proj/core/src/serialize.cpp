#include "mvop/serialize.hpp"

#include <fstream>

#include "mvop/special_family.hpp"

namespace mvop {

using nlohmann::json;

namespace {

json complex_to_json(Complex z) { return json::array({static_cast<double>(z.real()), static_cast<double>(z.imag())}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return Complex(j.get<double>());
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  throw InvalidArgument("spec: complex entries must be numbers or [re, im] pairs");
}

}  // namespace

json cmatrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

CMatrix cmatrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InvalidArgument("spec: matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != cols)
      throw InvalidArgument("spec: ragged matrix");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(j[i][k]);
  }
  return m;
}

WeightSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw InvalidArgument("spec: expected a JSON object");
  const Real alpha = j.value("alpha", 1.0);
  const Real s = j.value("s", 0.0);
  const bool normalize = j.value("normalize_gamma0", false);

  WeightSpec spec;
  if (j.contains("dg1")) {
    const json& d = j["dg1"];
    std::vector<Complex> nu;
    for (const json& v : d.at("nu")) nu.push_back(complex_from_json(v));
    const Real dg_alpha = d.contains("alpha") ? Real(d["alpha"].get<double>()) : alpha;
    spec = dg1_weight_spec(nu, dg_alpha, s);
    if (d.contains("N") && d["N"].get<int>() != spec.N) throw InvalidArgument("spec: dg1.N disagrees with nu");
    if (j.contains("N") && j["N"].get<int>() != spec.N) throw InvalidArgument("spec: N disagrees with dg1.nu");
  } else {
    spec.N = j.value("N", 1);
    spec.alpha = alpha;
    spec.s = s;
    spec.B = j.contains("B") ? cmatrix_from_json(j["B"]) : zeros(spec.N);
    if (j.contains("tt_poly")) {
      std::vector<CMatrix> tt;
      for (const json& c : j["tt_poly"]) tt.push_back(cmatrix_from_json(c));
      spec.tt_poly = std::move(tt);
    } else if (fro_norm(spec.B) == 0) {
      spec.tt_poly = std::vector<CMatrix>{identity(spec.N)};
    }
  }
  spec.normalize_gamma0 = normalize;
  validate(spec);
  return spec;
}

json spec_to_json(const WeightSpec& spec) {
  json j;
  j["N"] = spec.N;
  j["alpha"] = static_cast<double>(spec.alpha);
  j["s"] = static_cast<double>(spec.s);
  j["normalize_gamma0"] = spec.normalize_gamma0;
  j["B"] = cmatrix_to_json(spec.B);
  if (spec.tt_poly) {
    json tt = json::array();
    for (const CMatrix& c : *spec.tt_poly) tt.push_back(cmatrix_to_json(c));
    j["tt_poly"] = tt;
  }
  if (spec.dg1) {
    json nu = json::array();
    for (Complex v : spec.dg1->nu) nu.push_back(complex_to_json(v));
    j["dg1"] = {{"N", spec.N}, {"alpha", static_cast<double>(spec.alpha)}, {"nu", nu}};
  }
  return j;
}

WeightSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open spec file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InvalidArgument("spec file " + path + ": " + e.what());
  }
  return spec_from_json(j);
}

json family_to_json(const Family& fam) {
  json j;
  j["spec"] = spec_to_json(fam.weight().spec());
  j["n_max"] = fam.n_max();
  j["working_B"] = cmatrix_to_json(fam.weight().B());
  j["scale"] = cmatrix_to_json(fam.weight().scale());
  j["max_hankel_condition"] = static_cast<double>(fam.max_hankel_condition());
  json degrees = json::array();
  for (int n = 0; n <= fam.n_max(); ++n) {
    json d;
    d["n"] = n;
    json coeffs = json::array();
    for (int k = 0; k < n; ++k) coeffs.push_back(cmatrix_to_json(fam.coeff(n, k)));
    d["coeffs"] = coeffs;
    d["gamma"] = cmatrix_to_json(fam.gamma(n));
    d["gamma_inv"] = cmatrix_to_json(fam.gamma_inv(n));
    d["alpha_rec"] = cmatrix_to_json(fam.alpha_rec(n));
    if (n >= 1) d["beta_rec"] = cmatrix_to_json(fam.beta_rec(n));
    degrees.push_back(d);
  }
  j["degrees"] = degrees;
  return j;
}

json lax_to_json(const LaxQuantities& lq) {
  json j;
  j["n"] = lq.n;
  j["s"] = static_cast<double>(lq.s);
  j["p"] = cmatrix_to_json(lq.p);
  j["q"] = cmatrix_to_json(lq.q);
  j["a"] = cmatrix_to_json(lq.a);
  j["b"] = cmatrix_to_json(lq.b);
  j["Bn"] = cmatrix_to_json(lq.Bn);
  j["Bhat"] = cmatrix_to_json(lq.Bhat);
  j["P0"] = cmatrix_to_json(lq.P0);
  j["an_coeff"] = cmatrix_to_json(lq.an_coeff);
  j["gamma_n"] = cmatrix_to_json(lq.gamma_n);
  if (lq.gamma_nm1) j["gamma_nm1"] = cmatrix_to_json(*lq.gamma_nm1);
  j["alpha_rec"] = cmatrix_to_json(lq.alpha_rec);
  if (lq.beta_rec) j["beta_rec"] = cmatrix_to_json(*lq.beta_rec);
  return j;
}

}  // namespace mvop
