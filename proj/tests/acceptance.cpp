// Acceptance checks 1-10. One PASS/FAIL line per criterion; the exit status is
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "clusterchain/correlators.hpp"
#include "clusterchain/ed.hpp"
#include "clusterchain/measures.hpp"
#include "clusterchain/sweep.hpp"
#include "clusterchain/validate.hpp"

using namespace clusterchain;
using std::numbers::pi;

namespace {

int failures = 0;

void verdict(int id, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Distinct values of 2 cos 2k strictly inside (0, 2) over the even grid.
std::vector<double> staircase_jumps(int n) {
  std::vector<double> j;
  for (int m = 1; m < n; m += 2) {
    const double h = 2.0 * std::cos(2.0 * m * pi / n);
    if (h > 1e-12 && h < 2.0) j.push_back(h);
  }
  std::sort(j.begin(), j.end());
  j.erase(std::unique(j.begin(), j.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }),
          j.end());
  return j;
}

void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto s = validate_against_oracle();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const Deviation* worst = &s.deviations.front();
  for (const auto& d : s.deviations)
    if (d.maxAbs > worst->maxAbs) worst = &d;
  const bool ok = s.max_overall() <= 1e-8 && secs < 60.0 && s.pointsCompared == 150;
  verdict(1, ok,
          fmt("oracle equivalence on %d points (N = 8, 10, 12): max deviation %.2e (%s), %.1f s",
              s.pointsCompared, s.max_overall(), worst->quantity.c_str(), secs));
}

void criterion2() {
  double energyDev = 0.0, overlapDev = 0.0;
  for (int n : {8, 100}) {
    energyDev = std::max(energyDev, std::abs(ground_energy({0, 1, 0, n}) + n));
    energyDev = std::max(energyDev, std::abs(ground_energy({1, 0, 0, n}) + n));
    energyDev = std::max(energyDev, std::abs(ground_energy({0, 2.5, 0, n}) + 2.5 * n));
  }
  for (auto [p, flavor] : {std::pair{ModelParams{0, 1, 0, 8}, ed::ClusterFlavor::Y},
                           std::pair{ModelParams{1, 0, 0, 8}, ed::ClusterFlavor::X}}) {
    const auto g = ed::ground_space(p);
    const auto c = ed::cluster_state(8, flavor);
    double weight = 0.0;  // overlap with the (possibly degenerate) ground manifold
    for (const auto& s : g.states) weight += std::norm(s.amplitudes.dot(c.amplitudes));
    overlapDev = std::max(overlapDev, 1.0 - std::sqrt(weight));
  }
  verdict(2, energyDev <= 1e-12 && overlapDev <= 1e-10,
          fmt("cluster limit: |E + N J| <= %.1e, 1 - overlap <= %.1e", energyDev, overlapDev));
}

void criterion3() {
  double dev = 0.0;
  for (double h : {2.05, 2.5, 3.0, 5.0, -2.05, -2.5, -3.0, -5.0}) {
    const auto r = report({1, 1, h, 100});
    dev = std::max({dev, std::abs(std::abs(r.mz) - 1.0), std::abs(r.eglobal), std::abs(r.c13),
                    std::abs(r.i13), std::abs(r.d13)});
    dev = std::max(dev, std::abs(r.mz - (h > 0 ? 1.0 : -1.0)));
  }
  verdict(3, dev <= 1e-12, fmt("product regime |h| > 2: max deviation %.2e", dev));
}

void criterion4() {
  double field = 0.0, pair = 0.0;
  for (int i = 0; i <= 60; ++i) {
    const double jy = -3.0 + 0.1 * i;
    const auto r = report({1, std::abs(jy) < 1e-12 ? 0.0 : jy, 0.0, 100});
    field = std::max({field, std::abs(r.mz), std::abs(r.eglobal - 1.0)});
    pair = std::max({pair, std::abs(r.c13), std::abs(r.d13)});
  }
  verdict(4, field <= 1e-12 && pair <= 1e-9,
          fmt("h = 0: Mz, Eglobal deviation %.2e; C13, D13 max %.2e", field, pair));
}

void criterion5() {
  // Values closer than kResolution are indistinguishable from rounding, so the
  // maximiser set holds every point within it of the largest value.
  constexpr double kResolution = 1e-12;
  double c12 = 0.0, d12 = 0.0, i12 = -1.0;
  std::vector<std::pair<double, double>> points;
  std::vector<double> values;
  const double dy = 4.0 / 100, dh = 6.0 / 100;
  for (int i = 0; i <= 100; ++i)
    for (int j = 0; j <= 100; ++j) {
      const double jy = -2.0 + dy * i, h = -3.0 + dh * j;
      const auto r = report({1, jy, h, 100});
      c12 = std::max(c12, std::abs(r.c12));
      d12 = std::max(d12, std::abs(r.d12));
      i12 = std::max(i12, r.i12);
      points.emplace_back(jy, h);
      values.push_back(r.i12);
    }
  std::size_t maximisers = 0;
  bool nearPeak = false;
  for (std::size_t k = 0; k < points.size(); ++k)
    if (values[k] >= i12 - kResolution) {
      ++maximisers;
      nearPeak = nearPeak || (std::abs(points[k].first - 1.0) <= dy && std::abs(points[k].second) <= dh);
    }
  verdict(5, c12 <= 1e-12 && d12 <= 1e-12 && i12 <= 2e-3 && nearPeak,
          fmt("101x101 grid: max C12 %.1e, D12 %.1e, I12 %.2e; %zu of %zu points attain the maximum "
              "within %.0e, including one near Jy=Jx, h=0: %s",
              c12, d12, i12, maximisers, points.size(), kResolution, nearPeak ? "yes" : "no"));
}

void criterion6() {
  const int n = 100, samples = 20000;
  SweepSpec spec;
  spec.axis1 = {SweepParameter::H, 1e-4 / 2, 2.0 - 1e-4 / 2, samples, {}};
  spec.fixed = {1, 1, 0, n};
  spec.observables = {"Mz"};
  const auto t = run_sweep(spec);
  const auto jumps = staircase_jumps(n);

  std::vector<std::pair<double, double>> changes;  // sample intervals where Mz moves
  for (std::size_t i = 1; i < t.rows.size(); ++i)
    if (std::abs(t.rows[i][1] - t.rows[i - 1][1]) > 1e-12) changes.emplace_back(t.rows[i - 1][0], t.rows[i][0]);

  bool matched = changes.size() == jumps.size();
  for (std::size_t i = 0; matched && i < jumps.size(); ++i)
    matched = changes[i].first < jumps[i] && jumps[i] < changes[i].second;

  double flat = 0.0;
  std::vector<double> edges{0.0};
  edges.insert(edges.end(), jumps.begin(), jumps.end());
  edges.push_back(2.0);
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& row : t.rows)
      if (row[0] > edges[k] && row[0] < edges[k + 1]) {
        lo = std::min(lo, row[1]);
        hi = std::max(hi, row[1]);
      }
    if (hi >= lo) flat = std::max(flat, hi - lo);
  }
  verdict(6, matched && flat <= 1e-12,
          fmt("staircase: %zu detected steps vs %zu grid jumps 2cos2k (%s), plateau spread %.1e",
              changes.size(), jumps.size(), matched ? "all matched" : "mismatch", flat));
}

void criterion7() {
  DegeneracyScanSpec spec;
  spec.jx = 1.0;
  spec.jy = {SweepParameter::Jy, -2.0, 2.0, 201, {}};
  spec.h = {SweepParameter::H, -3.0, 3.0, 201, {}};
  spec.n = 100;
  const auto hits = scan_degeneracy(spec);
  const double dh = 6.0 / 200;
  int columns = 0, recovered = 0;
  for (double jy : spec.jy.points())
    for (double sign : {1.0, -1.0}) {
      const double target = sign * (1.0 + jy);
      if (std::abs(target) > 3.0) continue;
      ++columns;
      const bool found = std::any_of(hits.begin(), hits.end(), [&](const DegeneracyHit& hit) {
        return hit.params.jy == jy && std::abs(hit.params.h - target) <= dh + 1e-12 &&
               hit.report.kind == DegeneracyKind::IsolatedPoint;
      });
      recovered += found;
    }
  const bool lociOk = recovered == columns;

  // Exact multiplicities at N = 8: every on-grid zero-mode point with a single
  // zero mode, and a generic grid, compared with the analytic count 4.
  struct Point {
    ModelParams p;
    long long analytic;  // 4^l of the sector holding an on-grid zero mode, 1 if none
  };
  std::vector<Point> points;
  auto analytic = [](const ModelParams& p) {
    long long best = 1;
    for (Sector s : {Sector::EvenNF, Sector::OddNF}) {
      ModelParams q = p;
      q.sector = s;
      best = std::max(best, classify_degeneracy(q, 1e-9).degeneracy);
    }
    return best;
  };
  for (int m = 0; m <= 8; ++m) points.push_back({{1, 1, 2.0 * std::cos(2.0 * m * pi / 8), 8}, 0});
  for (double jy : {-1.7, -0.5, 0.3, 1.6}) {
    points.push_back({{1, jy, 1 + jy, 8}, 0});
    points.push_back({{1, jy, -(1 + jy), 8}, 0});
  }
  points.push_back({{1, -1, 0, 8}, 0});
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 30; ++j) points.push_back({{1, -2 + 0.2 * i + 0.013, -3 + 0.2 * j + 0.007, 8}, 0});

  int zeroModePoints = 0, fourAtZero = 0, fourElsewhere = 0;
  std::set<int> seenAtZero;
  for (auto& pt : points) {
    pt.analytic = analytic(pt.p);
    const int mult = ed::ground_space(pt.p).multiplicity;
    if (pt.analytic > 1) {
      ++zeroModePoints;
      seenAtZero.insert(mult);
      if (pt.analytic == 4 && mult == 4) ++fourAtZero;
    } else if (mult == 4) {
      ++fourElsewhere;
    }
  }
  int singleZero = 0;
  for (const auto& pt : points) singleZero += pt.analytic == 4;
  std::string mults;
  for (int m : seenAtZero) mults += (mults.empty() ? "" : ",") + std::to_string(m);
  const bool multOk = fourAtZero == singleZero && fourElsewhere == 0;
  verdict(7, lociOk && multOk,
          fmt("scan 201x201: h = +-(Jx+Jy) recovered in %d/%d columns; N = 8: ED multiplicity 4 at "
              "%d/%d single-zero-mode points and at %d other points (multiplicities seen at zero "
              "modes: {%s})",
              recovered, columns, fourAtZero, singleZero, fourElsewhere, mults.c_str()));
}

void criterion8() {
  // Spin-conserving line: plateau interiors between consecutive grid jumps.
  const auto jumps = staircase_jumps(100);
  std::vector<double> edges{0.0};
  edges.insert(edges.end(), jumps.begin(), jumps.end());
  double nullMax = 0.0;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const double a = edges[k], b = edges[k + 1];
    for (int s = 0; s <= 8; ++s) {
      const double h = a + (b - a) * (0.25 + 0.5 * s / 8);
      const double step = std::min(1e-4, 1e-3 * std::min(h - a, b - h));
      const ModelParams p{1, 1, h, 100};
      nullMax = std::max({nullMax, std::abs(derivative(p, "C13", SweepParameter::Jy, step).value),
                          std::abs(derivative(p, "C13", SweepParameter::H, step).value)});
    }
  }

  // Off the line: the |dC13/dJy| peak within 0.05 of the h = Jx + Jy crossing
  // sharpens as the momentum grid and the sweep grid are refined together.
  // Where C13 vanishes identically around the crossing there is no peak.
  bool grows = true;
  std::string peaks, flat;
  for (double h : {0.5, 0.75, 1.0, 1.25, 1.5, 2.5}) {
    const double locus = h - 1.0;
    std::vector<double> heights;
    double c13 = 0.0;
    for (int level = 0; level < 4; ++level) {
      const int n = 100 << level, count = 250 * (1 << level) + 1;
      double peak = 0.0;
      for (int i = 0; i < count; ++i) {
        const double jy = locus - 0.5 + 1.0 * i / (count - 1);
        if (std::abs(jy - locus) > 0.05) continue;
        c13 = std::max(c13, evaluate({1, jy, h, n}, "C13"));
        peak = std::max(peak, std::abs(derivative({1, jy, h, n}, "C13", SweepParameter::Jy, 1e-4).value));
      }
      heights.push_back(peak);
    }
    if (c13 <= 1e-12) {
      flat += fmt(" %.2f", h);
      continue;
    }
    peaks += fmt(" h=%.2f:", h);
    for (std::size_t l = 0; l < heights.size(); ++l) {
      peaks += fmt(" %.3f", heights[l]);
      if (l > 0) grows = grows && heights[l] > heights[l - 1];
    }
  }
  verdict(8, nullMax <= 1e-8 && grows,
          fmt("Jy = Jx plateaus: max |dC13| %.1e; peak |dC13/dJy| vs N = 100..800%s (C13 = 0 around "
              "the crossing at h =%s)",
              nullMax, peaks.c_str(), flat.c_str()));

  // The fully polarised interval above the last jump is outside the staircase;
  // C13 is 0 on the line and grows like |Jy - Jx| off it.
  const double h = 0.5 * (jumps.back() + 2.0);
  const double up = evaluate({1, 1 + 1e-6, h, 100}, "C13") / 1e-6;
  const double down = evaluate({1, 1 - 1e-6, h, 100}, "C13") / 1e-6;
  std::printf("       note: product interval h in (%.5f, 2): one-sided dC13/dJy = %+.4f / %+.4f (cusp)\n",
              jumps.back(), up, -down);
}

XStateRDM random_x_state(std::mt19937_64& rng, bool aligned) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::exponential_distribution<double> ex(1.0);
  const double a = ex(rng), b = ex(rng), c = ex(rng), total = a + b + 2 * c;
  XStateRDM r;
  r.u = a / total;
  r.v = b / total;
  r.w = c / total;
  const double px = 2 * pi * u01(rng);
  r.x = std::polar(std::sqrt(r.u * r.v) * u01(rng), px);
  r.z = std::polar(r.w * u01(rng), aligned ? px : 2 * pi * u01(rng));
  r.separation = 2;
  return r;
}

void criterion9() {
  std::mt19937_64 rng(20240611);
  double conc = 0.0, zetaAligned = 0.0, zetaGeneral = 0.0, order = -INFINITY;
  for (int i = 0; i < 10000; ++i) {
    const auto r = random_x_state(rng, i % 2 == 0);
    conc = std::max(conc, std::abs(concurrence(r) - concurrence_wootters(r.matrix())));
    const double hz = binary_entropy(zeta(r));
    if (i % 2 == 0)
      zetaAligned = std::max(zetaAligned, std::abs(hz - conditional_entropy(r, {pi / 2, 0.0})));
    const double phi = 0.5 * (std::arg(r.z) - std::arg(r.x));
    zetaGeneral = std::max(zetaGeneral, std::abs(hz - conditional_entropy(r, {pi / 2, phi})));
    const auto m = SingleSiteRDM::from_occupation(r.u + r.w);
    order = std::max(order, discord(r, m, DiscordMode::GridMinimize) - discord(r, m, DiscordMode::FixedBasis));
  }
  verdict(9, conc <= 1e-10 && zetaAligned <= 1e-10 && zetaGeneral <= 1e-10 && order <= 1e-9,
          fmt("10^4 X states: concurrence %.1e, H(zeta) at (pi/2,0) %.1e [aligned phases], at "
              "(pi/2,phi*) %.1e, max(Grid - Fixed) discord %.1e",
              conc, zetaAligned, zetaGeneral, order));

  // Discord hook: FixedBasis against GridMinimize on cluster-model states.
  double gap = 0.0;
  ModelParams at;
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 30; ++j) {
      const ModelParams p{1, -2 + 0.2 * i + 1e-3, -3 + 0.2 * j + 1e-3, 100};
      const auto r = two_site_rdm(p, 2);
      const auto m = single_site_rdm(p);
      const double g = discord(r, m, DiscordMode::FixedBasis) - discord(r, m, DiscordMode::GridMinimize);
      if (g > gap) {
        gap = g;
        at = p;
      }
    }
  std::printf("       note: FixedBasis - GridMinimize discord on cluster states up to %.3e (jy=%.3f h=%.3f); "
              "production default is the optimised basis\n",
              gap, at.jy, at.h);
}

void criterion10() {
  double dev = 0.0;
  for (double jy : {-2.0, -1.0, 0.0, 0.5, 2.0})
    for (int i = 0; i <= 40; ++i) {
      const double h = -3.0 + 0.15 * i;
      if (std::abs(h) < 1e-12) continue;
      const auto a = report({1, jy, h, 100}), b = report({1, jy, -h, 100});
      dev = std::max({dev, std::abs(a.mz + b.mz), std::abs(a.c12 - b.c12), std::abs(a.c13 - b.c13),
                      std::abs(a.i12 - b.i12), std::abs(a.i13 - b.i13), std::abs(a.d12 - b.d12),
                      std::abs(a.d13 - b.d13), std::abs(a.eglobal - b.eglobal)});
    }
  verdict(10, dev <= 1e-10, fmt("h -> -h on 41 x 5 points: max deviation %.2e", dev));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> checks{criterion1, criterion2, criterion3, criterion4,
                                                  criterion5, criterion6, criterion7, criterion8,
                                                  criterion9, criterion10};
  for (const auto& c : checks) {
    try {
      c();
    } catch (const std::exception& e) {
      std::printf("[FAIL] exception: %s\n", e.what());
      ++failures;
    }
  }
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
