#include "clusterchain/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace clusterchain {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::string to_string(Sector s) { return s == Sector::EvenNF ? "even" : "odd"; }

Sector sector_from_string(const std::string& s) {
  if (s == "even" || s == "EvenNF") return Sector::EvenNF;
  if (s == "odd" || s == "OddNF") return Sector::OddNF;
  throw ParameterError("unknown sector '" + s + "' (expected even|odd)");
}

std::string to_string(DegeneracyKind k) {
  switch (k) {
    case DegeneracyKind::None: return "None";
    case DegeneracyKind::LineSpinConserving: return "LineSpinConserving";
    case DegeneracyKind::IsolatedPoint: return "IsolatedPoint";
  }
  return "None";
}

void ModelParams::validate() const {
  if (n < 4 || n % 2 != 0)
    throw ParameterError("chain length must be even and >= 4, got " + std::to_string(n));
  if (!std::isfinite(jx) || !std::isfinite(jy) || !std::isfinite(h))
    throw ParameterError("couplings must be finite");
  if (jx == 0.0 && jy == 0.0 && h == 0.0)
    throw ParameterError("at least one of Jx, Jy, h must be nonzero");
}

double default_tol_zero(const ModelParams& p) {
  return 1e-12 * std::max({std::abs(p.jx) + std::abs(p.jy), std::abs(p.h), 1.0});
}

MomentumGrid allowed_momenta(const ModelParams& p) {
  p.validate();
  MomentumGrid grid;
  const int first = p.sector == Sector::EvenNF ? 1 : 2;
  for (int m = first; m < p.n; m += 2) grid.interior.push_back(m * kPi / p.n);
  if (p.sector == Sector::OddNF) grid.edges = {0.0, kPi};
  return grid;
}

Couplings couplings(const ModelParams& p, double k) {
  return {-p.h + (p.jx + p.jy) * std::cos(2.0 * k), (p.jx - p.jy) * std::sin(2.0 * k)};
}

MomentumMode mode(const ModelParams& p, double k, double tolZero) {
  const auto [a, b] = couplings(p, k);
  MomentumMode m;
  m.k = k;
  m.a = a;
  m.b = b;
  m.omega = std::hypot(a, b);
  m.theta = std::atan2(-b, a);
  if (m.omega < tolZero) {
    m.zeroMode = true;
    m.occAmp2 = 0.5;
    m.pairAmp = 0.0;
  } else {
    m.occAmp2 = std::clamp(0.5 * (1.0 - a / m.omega), 0.0, 1.0);
    m.pairAmp = -0.5 * b / m.omega;
  }
  return m;
}

MomentumMode mode(const ModelParams& p, double k) { return mode(p, k, default_tol_zero(p)); }

std::vector<MomentumMode> modes(const ModelParams& p, double tolZero) {
  const auto grid = allowed_momenta(p);
  std::vector<MomentumMode> out;
  out.reserve(grid.interior.size());
  for (double k : grid.interior) out.push_back(mode(p, k, tolZero));
  return out;
}

double ground_energy(const ModelParams& p) {
  const auto grid = allowed_momenta(p);
  double paired = 0.0;
  double minOmega = std::numeric_limits<double>::infinity();
  for (double k : grid.interior) {
    const auto [a, b] = couplings(p, k);
    const double w = std::hypot(a, b);
    paired += w;
    minOmega = std::min(minOmega, w);
  }
  if (p.sector == Sector::EvenNF) return -2.0 * paired;

  // Both edge levels have A = Jx + Jy - h and no pairing partner.
  const double edge = std::abs(couplings(p, 0.0).a);
  return -2.0 * paired - 2.0 * edge + 2.0 * std::min(edge, minOmega);
}

SectorEnergies sector_energies(const ModelParams& p) {
  ModelParams q = p;
  q.sector = Sector::EvenNF;
  SectorEnergies e;
  e.even = ground_energy(q);
  q.sector = Sector::OddNF;
  e.odd = ground_energy(q);
  return e;
}

DegeneracyReport classify_degeneracy(const ModelParams& p, double tolZero) {
  if (!(tolZero > 0.0)) throw ParameterError("tolZero must be positive");
  const auto grid = allowed_momenta(p);
  DegeneracyReport r;
  r.minOmega = std::numeric_limits<double>::infinity();

  auto visit = [&](double k) {
    const auto [a, b] = couplings(p, k);
    const double w = std::hypot(a, b);
    if (w < r.minOmega) {
      r.minOmega = w;
      r.minOmegaK = k;
    }
    if (w < tolZero) r.zeroModes.push_back(k);
  };
  for (double k : grid.edges) visit(k);
  for (double k : grid.interior) visit(k);
  std::sort(r.zeroModes.begin(), r.zeroModes.end());

  r.degeneracy = 1;
  for (std::size_t i = 0; i < r.zeroModes.size(); ++i) r.degeneracy *= 4;

  if (r.zeroModes.empty()) {
    r.kind = DegeneracyKind::None;
  } else if (std::abs(p.jx - p.jy) <= tolZero && std::abs(p.h) < 2.0 * std::abs(p.jx)) {
    r.kind = DegeneracyKind::LineSpinConserving;
  } else {
    r.kind = DegeneracyKind::IsolatedPoint;
  }
  return r;
}

}  // namespace clusterchain
