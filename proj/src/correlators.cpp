#include "clusterchain/correlators.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

namespace clusterchain {

namespace {

double resolve_tol(const ModelParams& p, const SumOptions& opt) {
  return opt.tolZero > 0.0 ? opt.tolZero : default_tol_zero(p);
}

void require_even_sector(const ModelParams& p) {
  if (p.sector != Sector::EvenNF)
    throw ParameterError("correlators are available for the even-parity sector only");
}

// Normal and anomalous nearest correlators G_r = <c_l^dag c_{l+r}> = gamma(r)
// and F_r = <c_l^dag c_{l+r}^dag> = -xi(r).
struct Wick {
  double n, g1, f1, g2, f2;
};

Wick wick_from(const AuxSums& s, int separation) {
  if (static_cast<int>(s.gamma.size()) <= separation)
    throw ParameterError("aux sums do not reach the requested separation");
  return {s.n, s.gamma[1], -s.xi[1], separation >= 2 ? s.gamma[2] : 0.0,
          separation >= 2 ? -s.xi[2] : 0.0};
}

}  // namespace

AuxSums aux_sums(const ModelParams& p, int pMax, const SumOptions& opt) {
  p.validate();
  require_even_sector(p);
  if (pMax < 2) throw ParameterError("pMax must be >= 2");
  const double tol = resolve_tol(p, opt);

  AuxSums out;
  out.gamma.assign(pMax + 1, 0.0);
  out.xi.assign(pMax + 1, 0.0);

  if (opt.thermodynamic) {
    using boost::math::quadrature::gauss_kronrod;
    for (int q = 0; q <= pMax; ++q) {
      auto occ = [&](double k) { return std::cos(q * k) * mode(p, k, tol).occAmp2; };
      auto pair = [&](double k) { return std::sin(q * k) * mode(p, k, tol).pairAmp; };
      out.gamma[q] = gauss_kronrod<double, 31>::integrate(occ, 0.0, std::numbers::pi, 15, 1e-14) /
                     std::numbers::pi;
      out.xi[q] = -gauss_kronrod<double, 31>::integrate(pair, 0.0, std::numbers::pi, 15, 1e-14) /
                  std::numbers::pi;
    }
    out.n = out.gamma[0];
    return out;
  }

  const auto ms = modes(p, tol);
  const double scale = 2.0 / p.n;
  for (const auto& m : ms) {
    out.zeroModes = out.zeroModes || m.zeroMode;
    for (int q = 0; q <= pMax; ++q) {
      out.gamma[q] += scale * std::cos(q * m.k) * m.occAmp2;
      // sin(theta_k) = 2 pairAmp
      out.xi[q] -= scale * std::sin(q * m.k) * m.pairAmp;
    }
  }
  out.n = out.gamma[0];
  return out;
}

double occupation(const ModelParams& p, const SumOptions& opt) { return aux_sums(p, 2, opt).n; }

double magnetisation(const ModelParams& p, const SumOptions& opt) {
  return 2.0 * occupation(p, opt) - 1.0;
}

SingleSiteRDM single_site_rdm(const ModelParams& p, const SumOptions& opt) {
  return SingleSiteRDM::from_occupation(occupation(p, opt));
}

XStateRDM two_site_rdm(const AuxSums& sums, int separation) {
  if (separation != 1 && separation != 2)
    throw ParameterError("two-site RDM is available for separations 1 and 2");
  const Wick c = wick_from(sums, separation);

  XStateRDM r;
  r.separation = separation;
  double g = c.g1, f = c.f1;
  if (separation == 1) {
    r.z = c.g1;
    r.x = c.f1;
  } else {
    // The string (1 - 2 n_{l+1}) turns both elements into four-fermion averages.
    r.z = c.g2 * (1.0 - 2.0 * c.n) + 2.0 * c.g1 * c.g1 + 2.0 * c.f1 * c.f1;
    r.x = c.f2 * (1.0 - 2.0 * c.n) + 4.0 * c.f1 * c.g1;
    g = c.g2;
    f = c.f2;
  }
  r.u = c.n * c.n - g * g + f * f;
  r.w = c.n - r.u;
  r.v = 1.0 - r.u - 2.0 * r.w;
  r.check(1e-10);
  return r;
}

XStateRDM two_site_rdm(const ModelParams& p, int separation, const SumOptions& opt) {
  return two_site_rdm(aux_sums(p, 2, opt), separation);
}

}  // namespace clusterchain
