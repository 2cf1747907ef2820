#pragma once

#include "corrkit/quantum.hpp"

namespace corrkit {

/// Assemblage of subnormalized verifier states: alpha[x][a] is the PSD d x d
/// matrix with pairing alpha(X) = tr(alpha * X). Normalization
/// sum_a tr(alpha[x][a]) = 1 per setting; the bipartite case adds beta with
/// the matching condition sum_a alpha[x][a] = sum_b beta[y][b].
struct SteeringData {
  int d = 1;
  int k = 1;
  int m = 2;
  std::vector<ComplexMatrix> alpha;            // k*m entries, [x*m + a]
  std::vector<ComplexMatrix> beta;             // empty for single-party data
  bool bipartite() const { return !beta.empty(); }

  ComplexMatrix& alpha_at(int x, int a) { return alpha[size_t(x) * m + a]; }
  const ComplexMatrix& alpha_at(int x, int a) const { return alpha[size_t(x) * m + a]; }
  ComplexMatrix& beta_at(int y, int b) { return beta[size_t(y) * m + b]; }
  const ComplexMatrix& beta_at(int y, int b) const { return beta[size_t(y) * m + b]; }

  /// Reduced verifier state sum_a alpha[x][a] (must be x-independent).
  ComplexMatrix reduced_state(int x = 0) const;

  void validate(double psd_tol = 1e-10, double norm_tol = 1e-10, double ns_tol = 1e-9) const;
};

/// Steering data from a concrete state: verifier slot first. The bipartite
/// version takes rho on d * dA * dB; the single-party version rho on d * dA.
SteeringData steering_extract(const ComplexMatrix& rho, int d, const MeasurementFamily& alice,
                              const MeasurementFamily& bob);
SteeringData steering_extract_single(const ComplexMatrix& rho, int d,
                                     const MeasurementFamily& alice);

/// Constructive realization of single-party steering data: a bipartite state
/// on C^d (x) C^rank and POVMs reproducing the data under steering_extract.
struct SteeringRealization {
  ComplexMatrix rho;         // density matrix on d * dim
  int dim = 0;               // Alice dimension = rank of the reduced state
  MeasurementFamily alice;   // POVMs on dim
};

SteeringRealization steering_realize(const SteeringData& sd);

/// Verifier observables of a bipartite steering game.
struct SteeringGame {
  int d = 1;
  int k = 1;
  int m = 2;
  std::vector<ComplexMatrix> v;  // [x*m + a]
  std::vector<ComplexMatrix> w;  // [y*m + b]

  ComplexMatrix& v_at(int x, int a) { return v[size_t(x) * m + a]; }
  const ComplexMatrix& v_at(int x, int a) const { return v[size_t(x) * m + a]; }
  ComplexMatrix& w_at(int y, int b) { return w[size_t(y) * m + b]; }
  const ComplexMatrix& w_at(int y, int b) const { return w[size_t(y) * m + b]; }

  void validate(double herm_tol = 1e-12) const;
};

/// Average verifier score (1/2k)(sum alpha(V) + sum beta(W)) of an assemblage.
double game_value(const SteeringGame& game, const SteeringData& sd);

/// The closed-form value at verifier dimension 1:
/// (1/2k)(sum_x max_a V^x_a + sum_y max_b W^y_b).
double game_value_trivial_verifier(const SteeringGame& game);

struct GameSeesawResult {
  double lower_bound = 0.0;
  ComplexMatrix rho;        // tripartite state on d * dA * dB
  MeasurementFamily alice;  // on dA
  MeasurementFamily bob;    // on dB
  std::vector<double> history;
};

/// Alternating maximization of the game value over tripartite pure states
/// and POVMs at fixed local dimensions; every reported value is attained by
/// the returned realization, hence a certified lower bound on the
/// tensor-product value.
GameSeesawResult game_value_seesaw(const SteeringGame& game, int dim_a, int dim_b,
                                   const SeesawOptions& opts = {});

}  // namespace corrkit
