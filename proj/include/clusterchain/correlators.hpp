#pragma once

// Ground-state correlators of the even-parity sector from momentum sums.

#include <vector>

#include "clusterchain/measures.hpp"
#include "clusterchain/model.hpp"

namespace clusterchain {

struct SumOptions {
  double tolZero = -1.0;        // <= 0 selects default_tol_zero(params)
  bool thermodynamic = false;   // replace grid sums by quadrature over (0, pi)
};

/// gamma(p) = (2/N) sum_{0<k<pi} cos(pk) sin^2(theta_k/2)
/// xi(p)    = -(1/N) sum_{0<k<pi} sin(pk) sin(theta_k)
struct AuxSums {
  std::vector<double> gamma;
  std::vector<double> xi;
  double n = 0.0;
  bool zeroModes = false;
};

AuxSums aux_sums(const ModelParams& p, int pMax, const SumOptions& opt = {});

/// <c_l^dag c_l> = <(1 + sigma^z)/2>, site independent.
double occupation(const ModelParams& p, const SumOptions& opt = {});

/// M^z = 2 n - 1.
double magnetisation(const ModelParams& p, const SumOptions& opt = {});

SingleSiteRDM single_site_rdm(const ModelParams& p, const SumOptions& opt = {});

/// X-form reduced density matrix of sites (l, l + separation), separation 1 or 2.
XStateRDM two_site_rdm(const ModelParams& p, int separation, const SumOptions& opt = {});

/// Same, reusing precomputed sums (pMax >= separation).
XStateRDM two_site_rdm(const AuxSums& sums, int separation);

}  // namespace clusterchain
