#pragma once

// Two-qubit quantum-correlation measures. The X-form closed expressions are
// the production path; the dense 4x4 routines are independent general-state
// constructions used by the exact-diagonalisation oracle and the tests.

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <span>

#include "clusterchain/model.hpp"

namespace clusterchain {

struct SingleSiteRDM {
  double pUp = 0.5;
  double pDown = 0.5;

  static SingleSiteRDM from_occupation(double n) { return {n, 1.0 - n}; }
};

/// Two-qubit density matrix of X form in the |s_l s_m> basis (0 = up):
///
///   | u  0  0  x |
///   | 0  w  z  0 |
///   | 0  z* w  0 |
///   | x* 0  0  v |
struct XStateRDM {
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;
  std::complex<double> x{};
  std::complex<double> z{};
  int separation = 0;

  Eigen::Matrix4cd matrix() const;

  /// Throws ConsistencyError on trace or positivity violations beyond tol.
  void check(double tol = 1e-10) const;
};

struct XStateSpectrum {
  std::array<double, 4> jointEigs{};    // eigenvalues of rho_lm
  std::array<double, 4> concLambdas{};  // Wootters lambdas, descending
};

struct MeasurementBasis {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)
};

/// FixedBasis: measurement at (pi/2, 0), i.e. H(zeta).
/// Optimized: X-state minimisation; phi is eliminated in closed form and
///   theta is minimised numerically.
/// GridMinimize: generic minimisation over (theta, phi) on the dense matrix.
enum class DiscordMode { FixedBasis, Optimized, GridMinimize };

XStateSpectrum x_state_spectrum(const XStateRDM& rdm);

/// 2 max(0, |x| - w, |z| - sqrt(uv)).
double concurrence(const XStateRDM& rdm);

/// Wootters concurrence of an arbitrary two-qubit state from the eigenvalues
/// of sqrt(sqrt(rho) rho~ sqrt(rho)).
double concurrence_wootters(const Eigen::Matrix4cd& rho);

/// Wootters lambdas (descending) of an arbitrary two-qubit state.
std::array<double, 4> wootters_lambdas(const Eigen::Matrix4cd& rho);

/// Base-2 Shannon entropy of a spectrum. Entries are clamped to [0, 1].
double entropy(std::span<const double> eigs);

/// Base-2 von Neumann entropy of a Hermitian density matrix.
double von_neumann_entropy(const Eigen::MatrixXcd& rho);

/// Base-2 binary entropy.
double binary_entropy(double p);

double mutual_information(const XStateRDM& rdm, const SingleSiteRDM& l,
                          const SingleSiteRDM& m);
double mutual_information(const Eigen::Matrix4cd& rho);

/// Conditional entropy of qubit l after a projective measurement of qubit m
/// in the basis {cos(t/2)|0> + e^{i phi} sin(t/2)|1>, sin(t/2)|0> - e^{i phi} cos(t/2)|1>}.
double conditional_entropy(const Eigen::Matrix4cd& rho, const MeasurementBasis& basis);
double conditional_entropy(const XStateRDM& rdm, const MeasurementBasis& basis);

/// 1/2 + sqrt(((u - v)/2)^2 + (|x| + |z|)^2), clamped to [0, 1] when the
/// overshoot is below 1e-9.
double zeta(const XStateRDM& rdm);

/// Conditional entropy of an X state at polar angle theta with the best
/// azimuth, i.e. with off-diagonal magnitude sin(theta) (|x| + |z|) / 2.
/// theta = 0 is the sigma^z measurement, theta = pi/2 gives H(zeta).
double conditional_entropy_best_phi(const XStateRDM& rdm, double theta);

/// min over theta of conditional_entropy_best_phi.
struct ConditionalMinimum {
  double value = 0.0;
  MeasurementBasis basis;
};

ConditionalMinimum minimize_conditional_entropy(const XStateRDM& rdm);


/// Minimises the conditional entropy over measurement bases: a 17 x 16 grid
/// on [0, pi] x [0, 2 pi), a golden-section phi refinement on each theta row,
/// then alternating golden-section refinement from the best eight rows.
ConditionalMinimum minimize_conditional_entropy(const Eigen::Matrix4cd& rho);

double discord(const XStateRDM& rdm, const SingleSiteRDM& m,
               DiscordMode mode = DiscordMode::Optimized);
double discord(const Eigen::Matrix4cd& rho);

/// 4 n (1 - n).
double global_entanglement(double n);

struct CorrelationReport {
  double mz = 0.0;
  double c12 = 0.0;
  double c13 = 0.0;
  double i12 = 0.0;
  double i13 = 0.0;
  double d12 = 0.0;
  double d13 = 0.0;
  double eglobal = 0.0;
  double energy = 0.0;     // even-sector ground energy
  double energyOdd = 0.0;  // odd-sector ground energy
  bool zeroModes = false;  // the even-sector grid has a zero mode
  bool oddSectorLower = false;
  /// zeroModes || oddSectorLower: the true ground space is not the unique
  /// even-sector state that the analytic values describe.
  bool degenerate = false;
};

CorrelationReport report(const ModelParams& p);

}  // namespace clusterchain
