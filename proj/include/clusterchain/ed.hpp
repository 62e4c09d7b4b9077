#pragma once

// Brute-force exact diagonalisation of the cluster chain on N <= 12 spins.
//
// Basis convention, used bit-exactly throughout: site 0 is the least
// significant bit of the basis index, and bit value 0 is spin up
// (sigma^z = +1). Reduced density matrices of a site list {l, m} are written in
// the |s_l s_m> ordering, i.e. site l is the more significant bit of the 4x4
// index, which matches the X-form layout of XStateRDM.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "clusterchain/measures.hpp"
#include "clusterchain/model.hpp"

namespace clusterchain::ed {

using cplx = std::complex<double>;

inline constexpr int kMaxSites = 12;

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DenseState {
  int n = 0;
  Eigen::VectorXcd amplitudes;
};

/// Matrix-free form of the Hamiltonian: every basis state is connected to at
/// most N others (one per three-spin term) plus a diagonal field term.
class SpinHamiltonian {
 public:
  explicit SpinHamiltonian(const ModelParams& p);

  int sites() const { return n_; }
  std::size_t dimension() const { return std::size_t{1} << n_; }

  double diagonal(std::uint32_t s) const;

  /// Calls f(target, coefficient) for every off-diagonal element <target|H|s>.
  template <class F>
  void for_each_offdiagonal(std::uint32_t s, F&& f) const {
    for (int l = 0; l < n_; ++l) {
      const int left = (l + n_ - 1) % n_;
      const int right = (l + 1) % n_;
      const double zl = bit(s, l) ? -1.0 : 1.0;
      const bool same = bit(s, left) == bit(s, right);
      // Y|up> = i|down>, Y|down> = -i|up>, so Y Y picks up -1 on equal bits.
      const double c = -zl * (jx_ + jy_ * (same ? -1.0 : 1.0));
      if (c != 0.0) f(s ^ ((1u << left) | (1u << right)), c);
    }
  }

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
  Eigen::MatrixXd dense() const;

 private:
  static bool bit(std::uint32_t s, int l) { return (s >> l) & 1u; }
  int n_;
  double jx_, jy_, h_;
};

/// Dense real-symmetric Hamiltonian, 2^N x 2^N.
Eigen::MatrixXd build_hamiltonian(const ModelParams& p);

enum class Solver {
  Blocked,  // dense eigendecomposition of every (fermion parity, momentum) block
  Full      // dense eigendecomposition of the full 2^N matrix
};

struct SpectrumResult {
  double groundEnergy = 0.0;
  int multiplicity = 0;
  std::vector<DenseState> states;  // orthonormal basis of the ground manifold
  double lowestEven = 0.0;         // lowest level with an even number of up spins
  double lowestOdd = 0.0;
  double gap = 0.0;                // first level above the ground manifold
};

SpectrumResult ground_space(const ModelParams& p, double degTol = 1e-9,
                            Solver solver = Solver::Blocked);

/// Full spectrum (ascending), for small chains.
Eigen::VectorXd spectrum(const ModelParams& p);

enum class ClusterFlavor { X, Y };

/// prod_i C_i |up...up> with C_i = 1 - (1 - s_i)(1 - s_{i+1})/2 over all ring
/// bonds, s = sigma^y (flavor Y) or sigma^x (flavor X).
DenseState cluster_state(int n, ClusterFlavor flavor);

/// Applies a Pauli operator ('x', 'y' or 'z') on one site.
Eigen::VectorXcd apply_pauli(const Eigen::VectorXcd& v, int n, int site, char pauli);

/// Partial trace onto one or two sites; sites[0] is the more significant bit.
Eigen::MatrixXcd reduce(const DenseState& state, const std::vector<int>& sites);

/// Equal-weight mixture over the given orthonormal states.
Eigen::MatrixXcd reduce(const std::vector<DenseState>& states, const std::vector<int>& sites);

struct PairMeasures {
  Eigen::Matrix4cd rho;
  double concurrence = 0.0;
  double mutualInformation = 0.0;
  double discord = 0.0;
};

struct OracleReport {
  double groundEnergy = 0.0;
  int multiplicity = 0;
  bool degenerate = false;
  double mz = 0.0;
  double eglobal = 0.0;
  PairMeasures pair;
};

/// All measures for the pair (i, j), computed directly from dense reduced
/// density matrices of the (maximally mixed, if degenerate) ground manifold.
/// Discord uses grid minimisation over measurement bases on site j.
PairMeasures measure_pair(const std::vector<DenseState>& ground, int i, int j);

OracleReport measure_all(const ModelParams& p, int i, int j, double degTol = 1e-9);
OracleReport measure_all(const SpectrumResult& spec, int i, int j);

/// Converts a dense X-form matrix to its five independent elements; the two
/// middle diagonal entries are averaged.
XStateRDM to_x_state(const Eigen::Matrix4cd& rho, int separation);

}  // namespace clusterchain::ed
