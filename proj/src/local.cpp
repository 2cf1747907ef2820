#include "corrkit/local.hpp"

#include <cmath>

#include "corrkit/sdp.hpp"

namespace corrkit {

namespace {

// All functions [k] -> [m] enumerated as base-m digit strings.
std::vector<std::vector<int>> strategies(int k, int m) {
  std::size_t count = 1;
  for (int i = 0; i < k; ++i) count *= size_t(m);
  std::vector<std::vector<int>> out;
  out.reserve(count);
  for (std::size_t r = 0; r < count; ++r) {
    std::vector<int> s(size_t(k), 0);
    std::size_t v = r;
    for (int i = k - 1; i >= 0; --i) {
      s[size_t(i)] = int(v % size_t(m));
      v /= size_t(m);
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

CorrelationTable deterministic_table(int ka, int ma, int kb, int mb,
                                     const std::vector<int>& alice_choice,
                                     const std::vector<int>& bob_choice) {
  CorrelationTable t(ka, ma, kb, mb);
  for (int x = 0; x < ka; ++x)
    for (int y = 0; y < kb; ++y) t.at(alice_choice[size_t(x)], bob_choice[size_t(y)], x, y) = 1.0;
  return t;
}

CorrelationTable pr_box_table() {
  CorrelationTable t(2, 2, 2, 2);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          if (((a + b) % 2) == x * y) t.at(a, b, x, y) = 0.5;
  return t;
}

LocalMembershipResult local_membership(const CorrelationTable& p,
                                       const LocalMembershipOptions& opts) {
  p.validate();
  auto sa = strategies(p.ka(), p.ma());
  auto sb = strategies(p.kb(), p.mb());
  if (sa.size() > opts.max_vertices_per_party || sb.size() > opts.max_vertices_per_party)
    throw Error("scenario too large for local membership (vertex cap " +
                std::to_string(opts.max_vertices_per_party) + " per party)");

  int ns = static_cast<int>(sa.size() * sb.size());
  int ncells = p.ka() * p.kb() * p.ma() * p.mb();
  auto cell_index = [&](int a, int b, int x, int y) {
    return ((a * p.mb() + b) * p.ka() + x) * p.kb() + y;
  };

  // LP variables: [weights w_s | surplus u_c | deficit v_c], all >= 0.
  //   minimize sum(u) + sum(v)
  //   s.t. sum_s w_s P_s(c) - u_c + v_c = P(c) for every cell c
  //        sum_s w_s = 1
  int nvar = ns + 2 * ncells;
  SdpInstance inst;
  inst.n = nvar;
  inst.diagonal = true;
  inst.maximize = false;
  for (int c = 0; c < ncells; ++c) {
    inst.add_objective(ns + c, ns + c, 1.0);
    inst.add_objective(ns + ncells + c, ns + ncells + c, 1.0);
  }

  // strategy tables, stored sparsely as the list of cells they hit
  std::vector<std::vector<int>> hit(size_t(ns), std::vector<int>{});
  for (size_t ia = 0; ia < sa.size(); ++ia)
    for (size_t ib = 0; ib < sb.size(); ++ib) {
      int s = static_cast<int>(ia * sb.size() + ib);
      for (int x = 0; x < p.ka(); ++x)
        for (int y = 0; y < p.kb(); ++y)
          hit[size_t(s)].push_back(cell_index(sa[ia][size_t(x)], sb[ib][size_t(y)], x, y));
    }

  for (int c = 0; c < ncells; ++c) {
    SdpConstraint con;
    for (int s = 0; s < ns; ++s)
      for (int h : hit[size_t(s)])
        if (h == c) con.add(s, s, 1.0);
    con.add(ns + c, ns + c, -1.0);
    con.add(ns + ncells + c, ns + ncells + c, 1.0);
    int y = c % p.kb();
    int rem = c / p.kb();
    int x = rem % p.ka();
    rem /= p.ka();
    int b = rem % p.mb();
    int a = rem / p.mb();
    con.b = p.at(a, b, x, y);
    inst.constraints.push_back(std::move(con));
  }
  SdpConstraint norm;
  for (int s = 0; s < ns; ++s) norm.add(s, s, 1.0);
  norm.b = 1.0;
  inst.constraints.push_back(std::move(norm));

  SdpOptions sopts;
  sopts.tol_gap = 1e-10;
  sopts.tol_feas = 1e-9;
  sopts.max_iter = 200;
  auto res = solve_sdp(inst, sopts);
  if (res.status == SdpStatus::infeasible)
    throw Error("local membership LP unexpectedly infeasible");

  LocalMembershipResult out;
  out.distance = res.objective;
  out.local = res.objective <= opts.feas_tol;
  if (out.local) {
    out.weights.resize(size_t(ns));
    double total = 0.0;
    for (int s = 0; s < ns; ++s) {
      double w = std::max(0.0, res.x[size_t(s) * nvar + s]);
      out.weights[size_t(s)] = w;
      total += w;
    }
    for (auto& w : out.weights) w /= total;
    return out;
  }

  // Nonlocal: the duals of the cell constraints separate the table. The
  // margin is recomputed from scratch so it stands on its own.
  out.functional.assign(size_t(ncells), 0.0);
  for (int c = 0; c < ncells; ++c) out.functional[size_t(c)] = res.y[size_t(c)];
  double val = 0.0;
  for (int a = 0; a < p.ma(); ++a)
    for (int b = 0; b < p.mb(); ++b)
      for (int x = 0; x < p.ka(); ++x)
        for (int y = 0; y < p.kb(); ++y)
          val += out.functional[size_t(cell_index(a, b, x, y))] * p.at(a, b, x, y);
  double bound = -1e300;
  for (size_t ia = 0; ia < sa.size(); ++ia)
    for (size_t ib = 0; ib < sb.size(); ++ib) {
      double s = 0.0;
      for (int x = 0; x < p.ka(); ++x)
        for (int y = 0; y < p.kb(); ++y)
          s += out.functional[size_t(cell_index(sa[ia][size_t(x)], sb[ib][size_t(y)], x, y))];
      bound = std::max(bound, s);
    }
  out.functional_value = val;
  out.local_bound = bound;
  out.margin = val - bound;
  return out;
}

}  // namespace corrkit
