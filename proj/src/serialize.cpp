#include "corrkit/serialize.hpp"

namespace corrkit {

namespace {

Json complex_to_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2) return Complex(j[0].get<double>(), j[1].get<double>());
  throw Error("expected a number or [re, im] pair");
}

}  // namespace

Json to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw Error("matrix json must be a nonempty array of rows");
  int rows = static_cast<int>(j.size());
  int cols = static_cast<int>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[size_t(i)].size()) != cols) throw Error("ragged matrix json");
    for (int c = 0; c < cols; ++c) m(i, c) = complex_from_json(j[size_t(i)][size_t(c)]);
  }
  return m;
}

Json to_json(const CorrelationTable& t) {
  Json p = Json::array();
  for (int a = 0; a < t.ma(); ++a) {
    Json pa = Json::array();
    for (int b = 0; b < t.mb(); ++b) {
      Json pb = Json::array();
      for (int x = 0; x < t.ka(); ++x) {
        Json px = Json::array();
        for (int y = 0; y < t.kb(); ++y) px.push_back(t.at(a, b, x, y));
        pb.push_back(std::move(px));
      }
      pa.push_back(std::move(pb));
    }
    p.push_back(std::move(pa));
  }
  return Json{{"ka", t.ka()}, {"ma", t.ma()}, {"kb", t.kb()}, {"mb", t.mb()}, {"p", p}};
}

CorrelationTable table_from_json(const Json& j) {
  int ka, ma, kb, mb;
  if (j.contains("k")) {
    ka = kb = j.at("k").get<int>();
    ma = mb = j.at("m").get<int>();
  } else {
    ka = j.at("ka").get<int>();
    ma = j.at("ma").get<int>();
    kb = j.at("kb").get<int>();
    mb = j.at("mb").get<int>();
  }
  CorrelationTable t(ka, ma, kb, mb);
  const Json& p = j.at("p");
  for (int a = 0; a < ma; ++a)
    for (int b = 0; b < mb; ++b)
      for (int x = 0; x < ka; ++x)
        for (int y = 0; y < kb; ++y)
          t.at(a, b, x, y) = p.at(size_t(a)).at(size_t(b)).at(size_t(x)).at(size_t(y)).get<double>();
  return t;
}

Json to_json(const BellFunctional& f) {
  Json coeffs = Json::array();
  const auto& sc = f.scenario();
  for (int x = 0; x < sc.k; ++x)
    for (int y = 0; y < sc.k; ++y)
      for (int a = 0; a < sc.m; ++a)
        for (int b = 0; b < sc.m; ++b)
          if (f.at(a, b, x, y) != 0.0)
            coeffs.push_back(
                Json{{"x", x}, {"y", y}, {"a", a}, {"b", b}, {"c", f.at(a, b, x, y)}});
  return Json{{"k", sc.k}, {"m", sc.m}, {"coeffs", coeffs}};
}

BellFunctional bell_functional_from_json(const Json& j) {
  if (j.contains("chsh") && j.at("chsh").get<bool>()) return BellFunctional::chsh();
  Scenario sc{j.at("k").get<int>(), j.at("m").get<int>()};
  BellFunctional f(sc);
  for (const auto& c : j.at("coeffs"))
    f.at(c.at("a").get<int>(), c.at("b").get<int>(), c.at("x").get<int>(), c.at("y").get<int>()) =
        c.at("c").get<double>();
  return f;
}

namespace {
Json family_to_json(const MeasurementFamily& f) {
  Json settings = Json::array();
  for (int x = 0; x < f.k(); ++x) {
    Json outs = Json::array();
    for (int a = 0; a < f.m(); ++a) outs.push_back(to_json(f.element(x, a)));
    settings.push_back(std::move(outs));
  }
  return Json{{"k", f.k()}, {"m", f.m()}, {"dim", f.dim()}, {"elements", settings}};
}

MeasurementFamily family_from_json(const Json& j) {
  MeasurementFamily f(j.at("k").get<int>(), j.at("m").get<int>(), j.at("dim").get<int>());
  for (int x = 0; x < f.k(); ++x)
    for (int a = 0; a < f.m(); ++a)
      f.element(x, a) = matrix_from_json(j.at("elements").at(size_t(x)).at(size_t(a)));
  return f;
}
}  // namespace

Json to_json(const Realization& r) {
  Json psi = Json::array();
  for (int i = 0; i < r.psi.dimension(); ++i) psi.push_back(complex_to_json(r.psi[i]));
  return Json{{"psi", psi}, {"alice", family_to_json(r.alice)}, {"bob", family_to_json(r.bob)}};
}

Realization realization_from_json(const Json& j) {
  Realization r;
  std::vector<Complex> amp;
  for (const auto& v : j.at("psi")) amp.push_back(complex_from_json(v));
  r.psi = StateVector(std::move(amp), 1e-9);
  r.alice = family_from_json(j.at("alice"));
  r.bob = family_from_json(j.at("bob"));
  return r;
}

Json to_json(const SteeringData& sd) {
  Json alpha = Json::array();
  for (int x = 0; x < sd.k; ++x) {
    Json row = Json::array();
    for (int a = 0; a < sd.m; ++a) row.push_back(to_json(sd.alpha_at(x, a)));
    alpha.push_back(std::move(row));
  }
  Json out{{"d", sd.d}, {"k", sd.k}, {"m", sd.m}, {"alpha", alpha}};
  if (sd.bipartite()) {
    Json beta = Json::array();
    for (int y = 0; y < sd.k; ++y) {
      Json row = Json::array();
      for (int b = 0; b < sd.m; ++b) row.push_back(to_json(sd.beta_at(y, b)));
      beta.push_back(std::move(row));
    }
    out["beta"] = beta;
  }
  return out;
}

SteeringData steering_data_from_json(const Json& j) {
  SteeringData sd;
  sd.d = j.at("d").get<int>();
  sd.k = j.at("k").get<int>();
  sd.m = j.at("m").get<int>();
  sd.alpha.resize(size_t(sd.k) * sd.m);
  for (int x = 0; x < sd.k; ++x)
    for (int a = 0; a < sd.m; ++a)
      sd.alpha_at(x, a) = matrix_from_json(j.at("alpha").at(size_t(x)).at(size_t(a)));
  if (j.contains("beta")) {
    sd.beta.resize(size_t(sd.k) * sd.m);
    for (int y = 0; y < sd.k; ++y)
      for (int b = 0; b < sd.m; ++b)
        sd.beta_at(y, b) = matrix_from_json(j.at("beta").at(size_t(y)).at(size_t(b)));
  }
  return sd;
}

Json to_json(const SteeringGame& g) {
  Json v = Json::array(), w = Json::array();
  for (int x = 0; x < g.k; ++x) {
    Json row = Json::array();
    for (int a = 0; a < g.m; ++a) row.push_back(to_json(g.v_at(x, a)));
    v.push_back(std::move(row));
  }
  for (int y = 0; y < g.k; ++y) {
    Json row = Json::array();
    for (int b = 0; b < g.m; ++b) row.push_back(to_json(g.w_at(y, b)));
    w.push_back(std::move(row));
  }
  return Json{{"d", g.d}, {"k", g.k}, {"m", g.m}, {"v", v}, {"w", w}};
}

SteeringGame steering_game_from_json(const Json& j) {
  SteeringGame g;
  g.d = j.at("d").get<int>();
  g.k = j.at("k").get<int>();
  g.m = j.at("m").get<int>();
  g.v.resize(size_t(g.k) * g.m);
  g.w.resize(size_t(g.k) * g.m);
  for (int x = 0; x < g.k; ++x)
    for (int a = 0; a < g.m; ++a) g.v_at(x, a) = matrix_from_json(j.at("v").at(size_t(x)).at(size_t(a)));
  for (int y = 0; y < g.k; ++y)
    for (int b = 0; b < g.m; ++b) g.w_at(y, b) = matrix_from_json(j.at("w").at(size_t(y)).at(size_t(b)));
  g.validate();
  return g;
}

Json to_json(const ChoiMap& phi) {
  return Json{{"n", phi.n}, {"d", phi.d}, {"choi", to_json(phi.choi)}};
}

ChoiMap choi_from_json(const Json& j) {
  ChoiMap phi;
  phi.n = j.at("n").get<int>();
  phi.d = j.at("d").get<int>();
  phi.choi = matrix_from_json(j.at("choi"));
  return phi;
}

Json povm_to_json(const std::vector<ComplexMatrix>& povm) {
  Json elements = Json::array();
  for (const auto& e : povm) elements.push_back(to_json(e));
  return Json{{"m", povm.size()}, {"d", povm.empty() ? 0 : povm[0].rows()},
              {"elements", elements}};
}

std::vector<ComplexMatrix> povm_from_json(const Json& j) {
  std::vector<ComplexMatrix> povm;
  for (const auto& e : j.at("elements")) povm.push_back(matrix_from_json(e));
  return povm;
}

Json to_json(const MomentSolution& sol, const MomentProblem& problem) {
  Json basis = Json::array();
  for (const auto& b : problem.basis) basis.push_back(b.to_string());
  Json out{{"status", to_string(sol.status)},
           {"level", problem.level.to_string()},
           {"basis_size", problem.basis.size()},
           {"verifier_dim", problem.d},
           {"objective", sol.objective},
           {"dual_bound", sol.dual_bound},
           {"gap", sol.raw.gap},
           {"primal_residual", sol.raw.primal_residual},
           {"dual_residual", sol.raw.dual_residual},
           {"iterations", sol.raw.iterations},
           {"basis", basis}};
  if (problem.kind == MomentProblem::Kind::membership) {
    out["lambda"] = sol.objective;
    out["consistent"] = sol.consistent;
  }
  return out;
}

Json to_json(const NormEstimate& est) {
  return Json{{"value", est.value},
              {"radius", est.radius},
              {"iterations", est.iterations},
              {"residual", est.residual}};
}

Json to_json(const LocalMembershipResult& r) {
  Json out{{"local", r.local}, {"distance", r.distance}};
  if (r.local) {
    out["weights"] = r.weights;
  } else {
    out["functional"] = r.functional;
    out["functional_value"] = r.functional_value;
    out["local_bound"] = r.local_bound;
    out["margin"] = r.margin;
  }
  return out;
}

Json to_json(const HardyResult& h) {
  return Json{{"lhs", h.lhs}, {"rhs", h.rhs}, {"violation", h.violation}};
}

Json to_json(const WCoarseTable& t) {
  const char* alice[] = {"+", "-", "0"};
  const char* bob[] = {"+", "-"};
  Json out = Json::object();
  for (int pair = 0; pair < 2; ++pair) {
    std::string pkey = pair == 0 ? "A1,A3" : "A1,A4";
    for (int y = 0; y < 2; ++y) {
      std::string ykey = y == 0 ? "B1" : "B2";
      for (int ao = 0; ao < 3; ++ao)
        for (int bo = 0; bo < 2; ++bo)
          out[pkey][ykey][std::string(alice[ao]) + "," + bob[bo]] = t.p[pair][y][ao][bo];
    }
  }
  return out;
}

WCoarseTable wcoarse_from_json(const Json& j) {
  const char* alice[] = {"+", "-", "0"};
  const char* bob[] = {"+", "-"};
  WCoarseTable t;
  for (int pair = 0; pair < 2; ++pair) {
    std::string pkey = pair == 0 ? "A1,A3" : "A1,A4";
    for (int y = 0; y < 2; ++y) {
      std::string ykey = y == 0 ? "B1" : "B2";
      for (int ao = 0; ao < 3; ++ao)
        for (int bo = 0; bo < 2; ++bo)
          t.p[pair][y][ao][bo] =
              j.at(pkey).at(ykey).at(std::string(alice[ao]) + "," + bob[bo]).get<double>();
    }
  }
  return t;
}

}  // namespace corrkit
