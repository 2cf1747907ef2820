#include "corrkit/npa.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "detail_herm.hpp"

namespace corrkit {

std::string MonomialIndex::to_string() const {
  if (zero) return "0";
  if (is_identity()) return "1";
  std::ostringstream os;
  os << "A{" << a_part.to_string() << "} B{" << b_part.to_string() << "}";
  return os.str();
}

MonomialIndex canonical_form(const MonomialIndex& u, const MonomialIndex& v) {
  if (u.zero || v.zero) return MonomialIndex::zero_monomial();
  MonomialIndex r;
  r.a_part = monomial_product(u.a_part.star(), v.a_part);
  r.b_part = monomial_product(u.b_part.star(), v.b_part);
  if (r.a_part.zero || r.b_part.zero) return MonomialIndex::zero_monomial();
  return r;
}

NpaLevel NpaLevel::parse(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(char(std::tolower(ch)));
  if (t == "1ab" || t == "1+ab") return NpaLevel{1, true};
  try {
    size_t pos = 0;
    int deg = std::stoi(t, &pos);
    if (pos == t.size() && deg >= 1) return NpaLevel{deg, false};
  } catch (const std::exception&) {
  }
  throw Error("unknown NPA level '" + text + "' (use 1, 1ab, 2, ...)");
}

std::string NpaLevel::to_string() const {
  return plus_ab ? std::to_string(degree) + "+AB" : std::to_string(degree);
}

namespace {

// All projector words of length <= maxlen with alternating settings and
// outcomes restricted to 0..m-2.
void gen_party_monomials(const Scenario& sc, int maxlen, std::vector<ProjectorMonomial>& out) {
  out.push_back(ProjectorMonomial::identity());
  std::vector<ProjectorMonomial::Slot> cur;
  std::function<void()> recur = [&]() {
    if (static_cast<int>(cur.size()) >= maxlen) return;
    for (int x = 0; x < sc.k; ++x) {
      if (!cur.empty() && cur.back().setting == x) continue;
      for (int a = 0; a + 1 < sc.m; ++a) {
        cur.push_back({x, a});
        ProjectorMonomial m;
        m.slots = cur;
        out.push_back(m);
        recur();
        cur.pop_back();
      }
    }
  };
  recur();
}

bool monomial_index_less(const MonomialIndex& a, const MonomialIndex& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  if (!(a.a_part == b.a_part)) return a.a_part < b.a_part;
  return a.b_part < b.b_part;
}

}  // namespace

std::vector<MonomialIndex> npa_basis(const Scenario& alice, const Scenario& bob,
                                     const NpaLevel& level, std::size_t cap) {
  if (alice.m < 2 || bob.m < 2 || alice.k < 1 || bob.k < 1) throw Error("bad scenario");
  int deg = level.degree;
  std::vector<ProjectorMonomial> am, bm;
  gen_party_monomials(alice, deg, am);
  gen_party_monomials(bob, deg, bm);
  std::vector<MonomialIndex> basis;
  auto push = [&](const ProjectorMonomial& a, const ProjectorMonomial& b) {
    MonomialIndex mi;
    mi.a_part = a;
    mi.b_part = b;
    basis.push_back(std::move(mi));
    if (basis.size() > cap)
      throw Error("moment basis exceeds cap of " + std::to_string(cap) + " monomials");
  };
  for (const auto& a : am)
    for (const auto& b : bm)
      if (a.length() + b.length() <= deg) push(a, b);
  if (level.plus_ab) {
    for (const auto& a : am)
      for (const auto& b : bm)
        if (a.length() == 1 && b.length() == 1 && deg < 2) push(a, b);
  }
  std::sort(basis.begin(), basis.end(), monomial_index_less);
  return basis;
}

namespace {

// ---- shared builder machinery ----

struct Builder {
  MomentProblem mp;
  int nb = 0;  // basis size
  int nc = 0;  // complex dimension d * nb

  // canonical data per ordered cell (I <= J): class id and orientation
  struct CellInfo {
    bool zero = false;
    bool self_adjoint = false;
    int class_id = -1;
    int sigma = +1;  // value = class value (+1) or its conjugate (-1)
  };

  std::vector<CellInfo> cells;            // indexed I * nc + J for I <= J
  std::vector<std::pair<int, int>> reps;  // class id -> representative cell
  std::vector<int> rep_sigma;

  explicit Builder(MomentProblem&& problem) : mp(std::move(problem)) {
    nb = static_cast<int>(mp.basis.size());
    nc = mp.d * nb;
    mp.complex_dim = nc;
    mp.sdp.n = 2 * nc;
    mp.sdp.maximize = true;
    detail::add_structure_constraints(mp.sdp, nc);
    classify();
  }

  void classify() {
    cells.assign(size_t(nc) * nc, CellInfo{});
    std::map<std::string, int> class_of;
    for (int vi = 0; vi < mp.d; ++vi)
      for (int ai = 0; ai < nb; ++ai)
        for (int vj = 0; vj < mp.d; ++vj)
          for (int aj = 0; aj < nb; ++aj) {
            int big_i = mp.flat_index(vi, ai), big_j = mp.flat_index(vj, aj);
            if (big_i > big_j) continue;
            CellInfo& info = cells[size_t(big_i) * nc + big_j];
            MonomialIndex k = canonical_form(mp.basis[size_t(ai)], mp.basis[size_t(aj)]);
            if (k.zero) {
              info.zero = true;
              continue;
            }
            MonomialIndex ks;
            ks.a_part = k.a_part.star();
            ks.b_part = k.b_part.star();
            std::string key = std::to_string(vi) + "|" + std::to_string(vj) + "|" + k.to_string();
            std::string skey =
                std::to_string(vj) + "|" + std::to_string(vi) + "|" + ks.to_string();
            info.self_adjoint = (key == skey);
            info.sigma = key <= skey ? +1 : -1;
            const std::string& unified = key <= skey ? key : skey;
            auto [it, inserted] = class_of.try_emplace(unified, int(reps.size()));
            info.class_id = it->second;
            if (inserted) {
              reps.emplace_back(big_i, big_j);
              rep_sigma.push_back(info.sigma);
            }
          }
  }

  // Affine cell expression sum Re(c * M_cell) = rhs, where for membership
  // problems M_cell = H_cell + lambda on the diagonal with lambda = 1 - A_00.
  void add_constraint(const std::vector<MomentCellRef>& refs, double rhs) {
    SdpConstraint con;
    double shift_weight = 0.0;
    for (const auto& r : refs) {
      detail::add_cell_term(con.entries, nc, r.i, r.j, r.c);
      if (mp.kind == MomentProblem::Kind::membership && r.i == r.j) shift_weight += r.c.real();
    }
    if (shift_weight != 0.0) {
      // + shift_weight * lambda = shift_weight * (1 - A_00)
      detail::add_cell_term(con.entries, nc, 0, 0, Complex(-shift_weight));
      rhs -= shift_weight;
    }
    con.b = rhs;
    mp.sdp.constraints.push_back(std::move(con));
  }

  void add_objective(const std::vector<MomentCellRef>& refs) {
    for (const auto& r : refs) {
      detail::add_cell_term(mp.sdp.c_entries, nc, r.i, r.j, r.c);
      mp.objective_cells.push_back(r);
      if (mp.kind == MomentProblem::Kind::membership && r.i == r.j) {
        double w = r.c.real();
        detail::add_cell_term(mp.sdp.c_entries, nc, 0, 0, Complex(-w));
        mp.objective_offset += w;
      }
    }
  }

  void emit_moment_constraints() {
    for (int big_i = 0; big_i < nc; ++big_i)
      for (int big_j = big_i; big_j < nc; ++big_j) {
        const CellInfo& info = cells[size_t(big_i) * nc + big_j];
        if (info.zero) {
          add_constraint({{big_i, big_j, Complex(1.0)}}, 0.0);
          if (big_i != big_j) add_constraint({{big_i, big_j, Complex(0.0, -1.0)}}, 0.0);
          continue;
        }
        if (info.self_adjoint && big_i != big_j)
          add_constraint({{big_i, big_j, Complex(0.0, -1.0)}}, 0.0);  // Im M = 0
        auto [ri, rj] = reps[size_t(info.class_id)];
        if (ri == big_i && rj == big_j) continue;
        // Re M_cell = Re M_rep
        add_constraint({{big_i, big_j, Complex(1.0)}, {ri, rj, Complex(-1.0)}}, 0.0);
        // Im M_cell = sigma_cell * sigma_rep * Im M_rep
        if (!info.self_adjoint) {
          double s = info.sigma * rep_sigma[size_t(info.class_id)];
          add_constraint({{big_i, big_j, Complex(0.0, -1.0)}, {ri, rj, Complex(0.0, s)}}, 0.0);
        }
      }
  }
};

// expansion of one projector e^x_a over the retained outcomes:
// list of (monomial index in basis or -1 for identity, coefficient)
std::vector<std::pair<int, double>> expand_projector(
    const std::vector<MonomialIndex>& basis, const std::map<std::string, int>& index_of,
    const Scenario& sc, bool alice_side, int x, int a) {
  auto mono_index = [&](int setting, int outcome) {
    MonomialIndex mi;
    ProjectorMonomial pm;
    pm.slots = {{setting, outcome}};
    (alice_side ? mi.a_part : mi.b_part) = pm;
    auto it = index_of.find(mi.to_string());
    if (it == index_of.end()) throw Error("level-1 monomial missing from basis");
    return it->second;
  };
  std::vector<std::pair<int, double>> out;
  if (a + 1 < sc.m) {
    out.emplace_back(mono_index(x, a), 1.0);
  } else {
    out.emplace_back(-1, 1.0);  // identity
    for (int a2 = 0; a2 + 1 < sc.m; ++a2) out.emplace_back(mono_index(x, a2), -1.0);
  }
  return out;
}

std::map<std::string, int> build_index(const std::vector<MonomialIndex>& basis) {
  std::map<std::string, int> index_of;
  for (size_t i = 0; i < basis.size(); ++i) index_of[basis[i].to_string()] = int(i);
  return index_of;
}

}  // namespace

MomentProblem build_bound_problem(const BellFunctional& c, const NpaLevel& level,
                                  std::size_t basis_cap) {
  MomentProblem mp;
  mp.kind = MomentProblem::Kind::bound;
  mp.alice = c.scenario();
  mp.bob = c.scenario();
  mp.d = 1;
  mp.level = level;
  mp.basis = npa_basis(mp.alice, mp.bob, level, basis_cap);
  Builder bld(std::move(mp));
  bld.emit_moment_constraints();
  // normalization M(1,1) = 1
  bld.add_constraint({{0, 0, Complex(1.0)}}, 1.0);

  auto index_of = build_index(bld.mp.basis);
  const auto& sc = bld.mp.alice;
  std::vector<MomentCellRef> obj;
  for (int x = 0; x < sc.k; ++x)
    for (int y = 0; y < sc.k; ++y)
      for (int a = 0; a < sc.m; ++a)
        for (int b = 0; b < sc.m; ++b) {
          double w = c.at(a, b, x, y);
          if (w == 0.0) continue;
          auto ea = expand_projector(bld.mp.basis, index_of, sc, true, x, a);
          auto eb = expand_projector(bld.mp.basis, index_of, sc, false, y, b);
          for (const auto& [ia, ca] : ea)
            for (const auto& [ib, cb] : eb)
              obj.push_back({ia < 0 ? 0 : ia, ib < 0 ? 0 : ib, Complex(w * ca * cb)});
        }
  bld.add_objective(obj);
  return std::move(bld.mp);
}

MomentProblem build_membership_problem(const CorrelationTable& p, const NpaLevel& level,
                                       std::size_t basis_cap) {
  p.validate();
  MomentProblem mp;
  mp.kind = MomentProblem::Kind::membership;
  mp.alice = Scenario{p.ka(), p.ma()};
  mp.bob = Scenario{p.kb(), p.mb()};
  mp.d = 1;
  mp.level = level;
  mp.basis = npa_basis(mp.alice, mp.bob, level, basis_cap);
  Builder bld(std::move(mp));
  bld.emit_moment_constraints();

  auto index_of = build_index(bld.mp.basis);
  auto alice_index = [&](int x, int a) {
    MonomialIndex mi;
    mi.a_part.slots = {{x, a}};
    return index_of.at(mi.to_string());
  };
  auto bob_index = [&](int y, int b) {
    MonomialIndex mi;
    mi.b_part.slots = {{y, b}};
    return index_of.at(mi.to_string());
  };
  // first-degree moments: marginals
  for (int x = 0; x < p.ka(); ++x)
    for (int a = 0; a + 1 < p.ma(); ++a) {
      int idx = alice_index(x, a);
      bld.add_constraint({{0, idx, Complex(1.0)}}, p.marginal_alice(a, x));
      bld.add_constraint({{0, idx, Complex(0.0, -1.0)}}, 0.0);
    }
  for (int y = 0; y < p.kb(); ++y)
    for (int b = 0; b + 1 < p.mb(); ++b) {
      int idx = bob_index(y, b);
      bld.add_constraint({{0, idx, Complex(1.0)}}, p.marginal_bob(b, y));
      bld.add_constraint({{0, idx, Complex(0.0, -1.0)}}, 0.0);
    }
  // mixed second-degree moments: the table itself
  for (int x = 0; x < p.ka(); ++x)
    for (int a = 0; a + 1 < p.ma(); ++a)
      for (int y = 0; y < p.kb(); ++y)
        for (int b = 0; b + 1 < p.mb(); ++b) {
          int ia = alice_index(x, a), ib = bob_index(y, b);
          bld.add_constraint({{ia, ib, Complex(1.0)}}, p.at(a, b, x, y));
          bld.add_constraint({{ia, ib, Complex(0.0, -1.0)}}, 0.0);
        }
  // objective: maximize lambda = 1 - A_00(H)
  detail::add_cell_term(bld.mp.sdp.c_entries, bld.nc, 0, 0, Complex(-1.0));
  bld.mp.objective_offset = 1.0;
  return std::move(bld.mp);
}

MomentProblem build_game_problem(const SteeringGame& game, const NpaLevel& level,
                                 std::size_t basis_cap) {
  game.validate();
  MomentProblem mp;
  mp.kind = MomentProblem::Kind::game;
  mp.alice = Scenario{game.k, game.m};
  mp.bob = Scenario{game.k, game.m};
  mp.d = game.d;
  mp.level = level;
  mp.basis = npa_basis(mp.alice, mp.bob, level, basis_cap);
  Builder bld(std::move(mp));
  bld.emit_moment_constraints();
  // block-trace normalization: sum_i M((i,1),(i,1)) = 1
  {
    std::vector<MomentCellRef> refs;
    for (int i = 0; i < game.d; ++i)
      refs.push_back({bld.mp.flat_index(i, 0), bld.mp.flat_index(i, 0), Complex(1.0)});
    bld.add_constraint(refs, 1.0);
  }

  auto index_of = build_index(bld.mp.basis);
  double scale = 1.0 / (2.0 * game.k);
  std::vector<MomentCellRef> obj;
  auto add_side = [&](bool alice_side) {
    for (int x = 0; x < game.k; ++x)
      for (int a = 0; a < game.m; ++a) {
        const ComplexMatrix& observable = alice_side ? game.v_at(x, a) : game.w_at(x, a);
        auto expansion =
            expand_projector(bld.mp.basis, index_of, bld.mp.alice, alice_side, x, a);
        for (int i = 0; i < game.d; ++i)
          for (int j = 0; j < game.d; ++j) {
            Complex vij = observable(i, j);
            if (vij == Complex(0.0)) continue;
            for (const auto& [idx, coeff] : expansion)
              obj.push_back({bld.mp.flat_index(i, 0),
                             bld.mp.flat_index(j, idx < 0 ? 0 : idx),
                             vij * scale * coeff});
          }
      }
  };
  add_side(true);
  add_side(false);
  bld.add_objective(obj);
  return std::move(bld.mp);
}

MomentSolution solve(const MomentProblem& problem, const SdpOptions& opts) {
  MomentSolution sol;
  sol.raw = solve_sdp(problem.sdp, opts);
  sol.status = sol.raw.status;
  if (sol.raw.status == SdpStatus::infeasible) return sol;

  sol.moment = detail::extract_hermitian(sol.raw.x, problem.complex_dim);
  sol.objective = sol.raw.objective + problem.objective_offset;
  sol.dual_bound = sol.raw.dual_objective + problem.objective_offset;

  if (problem.kind == MomentProblem::Kind::membership) {
    double lambda = sol.objective;
    sol.consistent = lambda >= -1e-7;
    // shift back: M = H + lambda * 1
    for (int i = 0; i < problem.complex_dim; ++i)
      sol.moment(i, i) += lambda;
    if (!sol.consistent && sol.status == SdpStatus::optimal &&
        sol.dual_bound < -1e-7) {
      // the dual bounds max lambda below zero: certified non-membership
      sol.status = SdpStatus::infeasible;
    }
  } else {
    sol.consistent = true;
  }
  return sol;
}

double evaluate_objective(const MomentProblem& problem, const ComplexMatrix& moment) {
  double s = problem.kind == MomentProblem::Kind::membership ? 0.0 : problem.objective_offset;
  for (const auto& r : problem.objective_cells) s += (r.c * moment(r.i, r.j)).real();
  return s;
}

}  // namespace corrkit
