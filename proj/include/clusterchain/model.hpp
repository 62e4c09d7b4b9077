#pragma once

// Free-fermion solution of the cluster chain
//
//   H = -Jx sum_l X_{l-1} Z_l X_{l+1} - Jy sum_l Y_{l-1} Z_l Y_{l+1} - h sum_l Z_l
//
// on a periodic ring of even length N. After the Jordan-Wigner map the chain
// splits into two next-nearest-neighbour XY chains; each fermion-parity sector
// has its own momentum grid (antiperiodic for even parity, periodic for odd).

#include <stdexcept>
#include <string>
#include <vector>

namespace clusterchain {

/// Raised for invalid inputs (bad chain length, non-finite couplings, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computed object violates an invariant it must satisfy
/// (e.g. a reduced density matrix that is not positive semi-definite).
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Sector { EvenNF, OddNF };

std::string to_string(Sector s);
Sector sector_from_string(const std::string& s);

struct ModelParams {
  double jx = 1.0;
  double jy = 0.0;
  double h = 0.0;
  int n = 100;
  Sector sector = Sector::EvenNF;

  /// Throws ParameterError unless N is even and >= 4 and the couplings are
  /// finite and not all zero.
  void validate() const;
};

/// Default zero-mode threshold: 1e-12 * max(|Jx|+|Jy|, |h|, 1).
double default_tol_zero(const ModelParams& p);

struct MomentumGrid {
  std::vector<double> interior;  // ascending, strictly inside (0, pi)
  std::vector<double> edges;     // unpaired k = 0, pi (odd sector only)
};

struct Couplings {
  double a = 0.0;
  double b = 0.0;
};

struct MomentumMode {
  double k = 0.0;
  double a = 0.0;
  double b = 0.0;
  double omega = 0.0;
  double theta = 0.0;     // atan2(-B, A)
  double occAmp2 = 0.0;   // sin^2(theta/2): <c_k^dag c_k>
  double pairAmp = 0.0;   // <c_k^dag c_{-k}^dag> = sin(theta)/2, 0 at a zero mode
  bool zeroMode = false;
};

MomentumGrid allowed_momenta(const ModelParams& p);

Couplings couplings(const ModelParams& p, double k);

/// Mode data at momentum k. Below tolZero the mode is flagged and given the
/// symmetric occupation 1/2 with no pairing amplitude.
MomentumMode mode(const ModelParams& p, double k, double tolZero);
MomentumMode mode(const ModelParams& p, double k);

/// All paired modes of the sector grid, ascending in k.
std::vector<MomentumMode> modes(const ModelParams& p, double tolZero);

/// Lowest energy within the sector given by p.sector.
///
/// Even parity: -2 sum_{0<k<pi} omega_k.
/// Odd parity: the paired modes plus the two unpaired edge levels k = 0, pi,
/// subject to the constraint that the total fermion number is odd. The best
/// unconstrained filling has even parity, so the cheaper of one edge flip
/// (2|A_0|) or one broken pair (2 min omega_k) is added.
double ground_energy(const ModelParams& p);

struct SectorEnergies {
  double even = 0.0;
  double odd = 0.0;
  Sector lower() const { return odd < even ? Sector::OddNF : Sector::EvenNF; }
};

SectorEnergies sector_energies(const ModelParams& p);

enum class DegeneracyKind { None, LineSpinConserving, IsolatedPoint };

std::string to_string(DegeneracyKind k);

struct DegeneracyReport {
  std::vector<double> zeroModes;  // grid momenta (edges included) with omega < tolZero
  long long degeneracy = 1;       // 4^|zeroModes|
  DegeneracyKind kind = DegeneracyKind::None;
  double minOmega = 0.0;          // smallest omega over the sector grid
  double minOmegaK = 0.0;
};

DegeneracyReport classify_degeneracy(const ModelParams& p, double tolZero);

}  // namespace clusterchain
