#include "clusterchain/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "clusterchain/correlators.hpp"

namespace clusterchain {

namespace {

constexpr double kPi = std::numbers::pi;

double xlog2x(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

// Spectrum of a trace-one 2x2 Hermitian matrix [[a, b], [b*, d]].
std::array<double, 2> eig2(double a, double d, std::complex<double> b) {
  const double mean = 0.5 * (a + d);
  const double r = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
  return {mean + r, mean - r};
}

Eigen::Matrix4cd spin_flip() {
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  return yy;
}

Eigen::Matrix2cd trace_out_l(const Eigen::Matrix4cd& rho) {
  Eigen::Matrix2cd m;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) m(a, b) = rho(a, b) + rho(2 + a, 2 + b);
  return m;
}

Eigen::Matrix2cd trace_out_m(const Eigen::Matrix4cd& rho) {
  Eigen::Matrix2cd m;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) m(a, b) = rho(2 * a, 2 * b) + rho(2 * a + 1, 2 * b + 1);
  return m;
}

template <class F>
double golden_section(F&& f, double lo, double hi, double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

Eigen::Matrix4cd XStateRDM::matrix() const {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = u;
  m(1, 1) = w;
  m(2, 2) = w;
  m(3, 3) = v;
  m(0, 3) = x;
  m(3, 0) = std::conj(x);
  m(1, 2) = z;
  m(2, 1) = std::conj(z);
  return m;
}

void XStateRDM::check(double tol) const {
  if (!std::isfinite(u) || !std::isfinite(v) || !std::isfinite(w) || !std::isfinite(x.real()) ||
      !std::isfinite(x.imag()) || !std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw ParameterError("X-state has non-finite elements");
  if (std::abs(u + v + 2.0 * w - 1.0) > 1e-12)
    throw ConsistencyError("X-state trace differs from one");
  if (u < -tol || v < -tol || w < -tol) throw ConsistencyError("X-state has a negative diagonal");
  if (std::norm(x) > u * v + tol || std::abs(z) > w + tol)
    throw ConsistencyError("X-state is not positive semi-definite");
}

XStateSpectrum x_state_spectrum(const XStateRDM& r) {
  XStateSpectrum s;
  const auto outer = eig2(r.u, r.v, r.x);
  s.jointEigs = {outer[0], outer[1], r.w + std::abs(r.z), r.w - std::abs(r.z)};
  const double ruv = std::sqrt(std::max(0.0, r.u * r.v));
  s.concLambdas = {ruv + std::abs(r.x), std::abs(ruv - std::abs(r.x)), r.w + std::abs(r.z),
                   std::abs(r.w - std::abs(r.z))};
  std::sort(s.concLambdas.begin(), s.concLambdas.end(), std::greater<>());
  return s;
}

double concurrence(const XStateRDM& r) {
  if (std::isnan(r.u) || std::isnan(r.v) || std::isnan(r.w) || std::isnan(std::abs(r.x)) ||
      std::isnan(std::abs(r.z)))
    throw ParameterError("concurrence of a NaN state");
  const double ruv = std::sqrt(std::max(0.0, r.u * r.v));
  return 2.0 * std::max({0.0, std::abs(r.x) - r.w, std::abs(r.z) - ruv});
}

std::array<double, 4> wootters_lambdas(const Eigen::Matrix4cd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho);
  const Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::Matrix4cd root = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  const Eigen::Matrix4cd yy = spin_flip();
  const Eigen::Matrix4cd tilde = yy * rho.conjugate() * yy;
  Eigen::Matrix4cd r = root * tilde * root;
  r = 0.5 * (r + r.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> rs(r, Eigen::EigenvaluesOnly);
  std::array<double, 4> l{};
  for (int i = 0; i < 4; ++i) l[i] = std::sqrt(std::max(0.0, rs.eigenvalues()(i)));
  std::sort(l.begin(), l.end(), std::greater<>());
  return l;
}

double concurrence_wootters(const Eigen::Matrix4cd& rho) {
  const auto l = wootters_lambdas(rho);
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double entropy(std::span<const double> eigs) {
  double s = 0.0;
  for (double p : eigs) s -= xlog2x(std::clamp(p, 0.0, 1.0));
  return s;
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& e = es.eigenvalues();
  return entropy(std::span<const double>(e.data(), static_cast<std::size_t>(e.size())));
}

double binary_entropy(double p) {
  const double q = std::clamp(p, 0.0, 1.0);
  return -xlog2x(q) - xlog2x(1.0 - q);
}

double mutual_information(const XStateRDM& r, const SingleSiteRDM& l, const SingleSiteRDM& m) {
  const double marginal = r.u + r.w;
  if (std::abs(l.pUp - marginal) > 1e-10 || std::abs(m.pUp - marginal) > 1e-10)
    throw ConsistencyError("single-site marginals do not match the two-site state");
  const auto s = x_state_spectrum(r);
  const std::array<double, 2> pl{l.pUp, l.pDown}, pm{m.pUp, m.pDown};
  return entropy(pl) + entropy(pm) - entropy(s.jointEigs);
}

double mutual_information(const Eigen::Matrix4cd& rho) {
  return von_neumann_entropy(trace_out_m(rho)) + von_neumann_entropy(trace_out_l(rho)) -
         von_neumann_entropy(rho);
}

double conditional_entropy(const Eigen::Matrix4cd& rho, const MeasurementBasis& basis) {
  const double c = std::cos(0.5 * basis.theta), s = std::sin(0.5 * basis.theta);
  const std::complex<double> ph = std::polar(1.0, basis.phi);
  const std::array<std::array<std::complex<double>, 2>, 2> kets{
      {{c, ph * s}, {s, -ph * c}}};

  double q = 0.0;
  for (const auto& k : kets) {
    // <k|_m rho |k>_m, qubit m being the less significant index bit.
    Eigen::Matrix2cd post = Eigen::Matrix2cd::Zero();
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            post(a, b) += std::conj(k[i]) * rho(2 * a + i, 2 * b + j) * k[j];
    const double prob = post.trace().real();
    if (prob < 1e-14) continue;
    post /= prob;
    const auto e = eig2(post(0, 0).real(), post(1, 1).real(), post(0, 1));
    q += prob * entropy(e);
  }
  return q;
}

double conditional_entropy(const XStateRDM& r, const MeasurementBasis& basis) {
  return conditional_entropy(r.matrix(), basis);
}

double zeta(const XStateRDM& r) {
  const double half = 0.5 * (r.u - r.v);
  const double off = std::abs(r.x) + std::abs(r.z);
  const double value = 0.5 + std::sqrt(half * half + off * off);
  if (value > 1.0 + 1e-9) throw ConsistencyError("zeta exceeds one");
  return std::min(value, 1.0);
}

double conditional_entropy_best_phi(const XStateRDM& r, double theta) {
  const double c2 = 0.5 * (1.0 + std::cos(theta)), s2 = 1.0 - c2;
  const double off = 0.5 * std::sin(theta) * (std::abs(r.x) + std::abs(r.z));
  const std::array<std::array<double, 2>, 2> diag{{{c2 * r.u + s2 * r.w, c2 * r.w + s2 * r.v},
                                                   {s2 * r.u + c2 * r.w, s2 * r.w + c2 * r.v}}};
  double q = 0.0;
  for (const auto& d : diag) {
    const double prob = d[0] + d[1];
    if (prob < 1e-14) continue;
    q += prob * entropy(eig2(d[0] / prob, d[1] / prob, off / prob));
  }
  return q;
}

ConditionalMinimum minimize_conditional_entropy(const XStateRDM& r) {
  constexpr int kSamples = 256;
  auto q = [&](double t) { return conditional_entropy_best_phi(r, t); };
  int best = 0;
  double bestValue = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kSamples; ++i) {
    const double v = q(kPi * i / kSamples);
    if (v < bestValue) {
      bestValue = v;
      best = i;
    }
  }
  const double lo = kPi * std::max(0, best - 1) / kSamples;
  const double hi = kPi * std::min(kSamples, best + 1) / kSamples;
  const double t = golden_section(q, lo, hi, 1e-12);
  // x e^{i phi} + z e^{-i phi} has modulus |x| + |z| at this azimuth.
  const double phi = std::fmod(0.5 * (std::arg(r.z) - std::arg(r.x)) + 2.0 * kPi, 2.0 * kPi);
  ConditionalMinimum out{bestValue, {kPi * best / kSamples, phi}};
  if (const double v = q(t); v <= out.value) out = {v, {t, phi}};
  return out;
}

ConditionalMinimum minimize_conditional_entropy(const Eigen::Matrix4cd& rho) {
  constexpr int kTheta = 17, kPhi = 16, kStarts = 8;
  const double dTheta = kPi / (kTheta - 1), dPhi = 2.0 * kPi / kPhi;

  // Each theta row is first minimised over phi; the alternating search then
  // starts from the best row optima. The poles are a single basis each, and a
  // flat valley in theta would otherwise let them capture every start.
  std::vector<ConditionalMinimum> grid;
  grid.reserve(kTheta);
  for (int i = 0; i < kTheta; ++i) {
    const double theta = dTheta * i;
    if (i == 0 || i == kTheta - 1) {
      grid.push_back({conditional_entropy(rho, {theta, 0.0}), {theta, 0.0}});
      continue;
    }
    ConditionalMinimum row{INFINITY, {theta, 0.0}};
    for (int j = 0; j < kPhi; ++j) {
      const double q = conditional_entropy(rho, {theta, dPhi * j});
      if (q < row.value) row = {q, {theta, dPhi * j}};
    }
    const double c = row.basis.phi;
    const double p = golden_section([&](double ph) { return conditional_entropy(rho, {theta, ph}); },
                                    c - dPhi, c + dPhi, 1e-11);
    const double q = conditional_entropy(rho, {theta, p});
    if (q < row.value) row = {q, {theta, p}};
    grid.push_back(row);
  }
  const int starts = std::min<int>(kStarts, static_cast<int>(grid.size()));
  std::partial_sort(grid.begin(), grid.begin() + starts, grid.end(),
                    [](const auto& l, const auto& r) { return l.value < r.value; });

  ConditionalMinimum best = grid.front();
  for (int s = 0; s < starts; ++s) {
    ConditionalMinimum cur = grid[s];
    for (int round = 0; round < 60; ++round) {
      const double phi = cur.basis.phi;
      const double t = golden_section(
          [&](double th) { return conditional_entropy(rho, {th, phi}); },
          std::max(0.0, cur.basis.theta - dTheta), std::min(kPi, cur.basis.theta + dTheta), 1e-11);
      const double p = golden_section(
          [&](double ph) { return conditional_entropy(rho, {t, ph}); }, phi - dPhi, phi + dPhi,
          1e-11);
      const double q = conditional_entropy(rho, {t, p});
      if (!(q < cur.value - 1e-15)) {
        if (q <= cur.value) cur = {q, {t, p}};
        break;
      }
      cur = {q, {t, p}};
    }
    if (cur.value < best.value) best = cur;
  }
  best.basis.phi = std::fmod(std::fmod(best.basis.phi, 2.0 * kPi) + 2.0 * kPi, 2.0 * kPi);
  return best;
}

double discord(const XStateRDM& r, const SingleSiteRDM& m, DiscordMode mode) {
  r.check();
  const auto s = x_state_spectrum(r);
  const std::array<double, 2> pm{m.pUp, m.pDown};
  double q = 0.0;
  switch (mode) {
    case DiscordMode::FixedBasis: q = binary_entropy(zeta(r)); break;
    case DiscordMode::Optimized: q = minimize_conditional_entropy(r).value; break;
    case DiscordMode::GridMinimize: q = minimize_conditional_entropy(r.matrix()).value; break;
  }
  return q + entropy(pm) - entropy(s.jointEigs);
}

double discord(const Eigen::Matrix4cd& rho) {
  return minimize_conditional_entropy(rho).value + von_neumann_entropy(trace_out_l(rho)) -
         von_neumann_entropy(rho);
}

double global_entanglement(double n) {
  if (!(n >= 0.0 && n <= 1.0)) throw ParameterError("occupation must lie in [0, 1]");
  return 4.0 * n * (1.0 - n);
}

CorrelationReport report(const ModelParams& p) {
  p.validate();
  const auto sums = aux_sums(p, 2);
  const auto near = two_site_rdm(sums, 1);
  const auto next = two_site_rdm(sums, 2);
  const auto single = SingleSiteRDM::from_occupation(sums.n);

  CorrelationReport r;
  r.mz = 2.0 * sums.n - 1.0;
  r.c12 = concurrence(near);
  r.c13 = concurrence(next);
  r.i12 = mutual_information(near, single, single);
  r.i13 = mutual_information(next, single, single);
  r.d12 = discord(near, single);
  r.d13 = discord(next, single);
  r.eglobal = global_entanglement(std::clamp(sums.n, 0.0, 1.0));

  const auto e = sector_energies(p);
  r.energy = e.even;
  r.energyOdd = e.odd;
  r.zeroModes = sums.zeroModes;
  r.oddSectorLower = e.odd < e.even - 1e-9;
  r.degenerate = r.zeroModes || e.odd < e.even + 1e-9;
  return r;
}

}  // namespace clusterchain
