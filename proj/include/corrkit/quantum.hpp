#pragma once

#include <optional>

#include "corrkit/algebra.hpp"
#include "corrkit/linalg.hpp"

namespace corrkit {

/// Tolerances used across the quantum module; overridable through the CLI
/// config block.
struct QuantumTolerances {
  double psd_tol = 1e-10;       // input PSD floor on min eigenvalues
  double derived_psd_tol = 1e-8;  // derived-quantity PSD floor
  double sum_tol = 1e-10;       // POVM completeness
  double ns_tol = 1e-9;         // no-signaling / normalization on tables
  double imag_tol = 1e-10;      // discarded imaginary parts
  double commutator_tol = 1e-9;
};

/// Unit vector in a finite-dimensional Hilbert space.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::vector<Complex> amplitudes, double norm_tol = 1e-12);

  int dimension() const { return static_cast<int>(amp_.size()); }
  const std::vector<Complex>& amplitudes() const { return amp_; }
  Complex operator[](int i) const { return amp_[size_t(i)]; }

  /// Rescales to unit norm (for convenience when building states).
  static StateVector normalized(std::vector<Complex> amplitudes);

 private:
  std::vector<Complex> amp_;
};

/// k POVMs with m outcomes each on a d-dimensional space. Invariants: every
/// element PSD within psd_tol and each setting sums to the identity within
/// sum_tol. `projective` additionally demands idempotence and mutual
/// orthogonality within a setting.
class MeasurementFamily {
 public:
  MeasurementFamily() = default;
  MeasurementFamily(int k, int m, int dim);

  int k() const { return k_; }
  int m() const { return m_; }
  int dim() const { return dim_; }
  ComplexMatrix& element(int setting, int outcome);
  const ComplexMatrix& element(int setting, int outcome) const;

  void validate(const QuantumTolerances& tol = {}) const;
  bool is_projective(double tol = 1e-10) const;

  /// Projective family from +/-1-valued observables: outcome 0 is the +1
  /// eigenprojector (1 + O)/2, outcome 1 is (1 - O)/2.
  static MeasurementFamily from_dichotomic_observables(const std::vector<ComplexMatrix>& obs);

 private:
  int k_ = 0, m_ = 0, dim_ = 0;
  std::vector<ComplexMatrix> e_;
};

/// Joint outcome table P(a,b|x,y); parties may differ in settings/outcomes.
class CorrelationTable {
 public:
  CorrelationTable() = default;
  CorrelationTable(int ka, int ma, int kb, int mb);

  int ka() const { return ka_; }
  int ma() const { return ma_; }
  int kb() const { return kb_; }
  int mb() const { return mb_; }

  double& at(int a, int b, int x, int y);
  double at(int a, int b, int x, int y) const;

  double marginal_alice(int a, int x, int y_ref = 0) const;
  double marginal_bob(int b, int y, int x_ref = 0) const;

  /// Normalization, entry range and no-signaling within tol.
  void validate(double ns_tol = 1e-9) const;
  bool is_no_signaling(double ns_tol = 1e-9) const;

  /// +/-1 correlator (both outcome counts must be 2).
  double correlator(int x, int y) const;

  /// Flat [a][b][x][y] layout for a symmetric (k,m) scenario, as consumed by
  /// BellFunctional::evaluate.
  std::vector<double> flat_abxy() const;

 private:
  size_t index(int a, int b, int x, int y) const;
  int ka_ = 0, ma_ = 0, kb_ = 0, mb_ = 0;
  std::vector<double> p_;
};

/// A concrete tensor-product realization: psi on dA * dB with one family per
/// party.
struct Realization {
  StateVector psi;
  MeasurementFamily alice;
  MeasurementFamily bob;
};

/// P(a,b|x,y) = <psi, (A^x_a (x) B^y_b) psi>.
CorrelationTable correlations_tensor(const StateVector& psi, const MeasurementFamily& alice,
                                     const MeasurementFamily& bob,
                                     const QuantumTolerances& tol = {});

/// P(a,b|x,y) = <psi, A^x_a B^y_b psi> for commuting families on one space;
/// the commutator of every pair is checked first.
CorrelationTable correlations_commuting(const StateVector& psi, const MeasurementFamily& alice,
                                        const MeasurementFamily& bob,
                                        const QuantumTolerances& tol = {});

/// Direct-sum construction realizing lambda * P1 + (1 - lambda) * P2.
Realization direct_sum_mix(const Realization& r1, const Realization& r2, double lambda);

/// Joint probabilities of sequential projective measurements: Alice applies
/// settings xs in order, Bob settings ys. The result is indexed by outcome
/// sequences, Alice-major then Bob (a_1 slowest). Nonnegative, sums to 1.
std::vector<double> spatiotemporal(const StateVector& psi, const MeasurementFamily& alice,
                                   const MeasurementFamily& bob, const std::vector<int>& xs,
                                   const std::vector<int>& ys);

/// Full depth-(ta, tb) spatiotemporal table over all setting sequences.
struct STCorrelationTable {
  int ka = 0, ma = 0, kb = 0, mb = 0;
  int ta = 1, tb = 1;
  // entries[x_seq_rank][y_seq_rank] = joint outcome distribution as returned
  // by spatiotemporal() for those sequences
  std::vector<std::vector<std::vector<double>>> entries;

  static int rank_sequence(const std::vector<int>& seq, int base);
  static std::vector<int> unrank_sequence(int rank, int base, int len);
};

STCorrelationTable spatiotemporal_table(const StateVector& psi, const MeasurementFamily& alice,
                                        const MeasurementFamily& bob, int ta, int tb);

/// Scalar joint observables realizing any no-signaling table on H = C:
/// Pi^{x,y}_{a,b} = P(a,b|x,y). Marginal identities hold exactly.
struct TrivialJointMeasurement {
  CorrelationTable pi;
  double max_marginal_defect_alice() const;
  double max_marginal_defect_bob() const;
};

TrivialJointMeasurement trivial_joint(const CorrelationTable& p, double ns_tol = 1e-9);

// ---------------- W-state spatiotemporal example ----------------

/// The three-qubit W state with Alice holding two qubits (dim 4) and Bob one,
/// Alice observables sigma_z/sigma_x on each of her qubits (A1..A4) and Bob
/// (sigma_z -+ sigma_x)/sqrt(2) (B1, B2).
Realization wstate_realization();

/// Coarse-grained depth-2 table of the W-state example. Alice first measures
/// A1 and then A3 (pair index 0) or A4 (pair index 1); outcomes are
/// coarse-grained to {+, -, empty}: "+"/"-" when A1 gives +1 (steering
/// succeeds) and the second measurement gives +/-1; "empty" when A1 gives -1,
/// with the second outcome marginalized. Bob measures B1 or B2 once.
struct WCoarseTable {
  // p[pair][bob_setting][alice_outcome][bob_outcome]; alice_outcome 0:+ 1:- 2:empty
  double p[2][2][3][2] = {};
  double gamma_plus() const;   // (1 + 1/sqrt(2))/6
  double gamma_minus() const;  // (1 - 1/sqrt(2))/6
};

WCoarseTable wstate_coarse_table();

/// The single-shot (depth-1) table of the same realization: 4 x 2 settings.
CorrelationTable wstate_single_shot_table();

struct HardyResult {
  double lhs = 0.0;        // P(+,+ | (A1,A4); B2)
  double rhs = 0.0;        // sum of the four marked terms
  double violation = 0.0;  // lhs - rhs, positive certifies nonlocality
};

/// The Hardy-type inequality of the W-state example:
/// P(+,+|A1A4;B2) <= P(+,+|A1A4;B1) + P(+,+|A1A3;B2)
///                   + P(-,-|A1A3;B1) + P(empty,-|A1A3;B1).
HardyResult hardy_check(const WCoarseTable& table);

/// All eight signed CHSH combinations +/-(E_00 +/- E_01 +/- E_10 +/- E_11)
/// with an odd number of minus signs among the correlators, for Alice
/// settings (x0, x1) and Bob settings (y0, y1).
std::vector<double> chsh_values(const CorrelationTable& t, int x0, int x1, int y0, int y1);

// ---------------- see-saw lower bounds ----------------

/// Exact solution of the per-setting measurement subproblem
///   maximize sum_a Re tr(K_a E_a)  over POVMs {E_a},
/// as a small SDP. K_a must be Hermitian.
std::vector<ComplexMatrix> povm_optimize(const std::vector<ComplexMatrix>& k_ops);

struct SeesawOptions {
  int iterations = 60;
  int restarts = 10;
  std::uint64_t seed = 1;
  double stall_tol = 1e-12;
};

struct BellSeesawResult {
  double value = 0.0;
  Realization realization;
  std::vector<double> history;  // objective per accepted iteration
};

/// Alternating maximization of a Bell functional over states and POVMs at
/// fixed local dimensions; monotone in the objective, certified lower bound
/// on the tensor-product value.
BellSeesawResult bell_value_seesaw(const BellFunctional& c, int dim_a, int dim_b,
                                   const SeesawOptions& opts = {});

}  // namespace corrkit
