#include "clusterchain/validate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "clusterchain/correlators.hpp"
#include "clusterchain/ed.hpp"
#include "clusterchain/measures.hpp"

namespace clusterchain {

double ValidationSummary::max_overall() const {
  double m = 0.0;
  for (const auto& d : deviations) m = std::max(m, d.maxAbs);
  return m;
}

ValidationSummary validate_against_oracle(const ValidationOptions& opt) {
  ValidationSummary out;
  auto record = [&](std::size_t slot, const char* name, double diff, const ModelParams& p) {
    if (out.deviations.size() <= slot) out.deviations.push_back({name, 0.0, p});
    auto& d = out.deviations[slot];
    if (!(diff <= d.maxAbs)) {  // NaN propagates as a failure
      d.maxAbs = std::isnan(diff) ? INFINITY : diff;
      d.worst = p;
    }
  };

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> jyDist(opt.jyMin, opt.jyMax), hDist(opt.hMin, opt.hMax);
  for (int n : opt.sizes) {
    int done = 0;
    while (done < opt.pointsPerSize) {
      ModelParams p{opt.jx, jyDist(rng), hDist(rng), n};
      const auto analytic = report(p);
      if (analytic.degenerate) {
        ++out.pointsSkipped;
        continue;
      }
      const auto ground = ed::ground_space(p, opt.degTol);
      if (ground.multiplicity != 1) {
        ++out.pointsSkipped;
        continue;
      }
      const auto sums = aux_sums(p, 2);
      const auto oracle13 = ed::measure_all(ground, 0, 2);
      const auto oracle12 = ed::measure_pair(ground.states, 0, 1);

      std::size_t slot = 0;
      record(slot++, "energy", std::abs(analytic.energy - ground.groundEnergy), p);
      record(slot++, "Mz", std::abs(analytic.mz - oracle13.mz), p);
      record(slot++, "Eglobal", std::abs(analytic.eglobal - oracle13.eglobal), p);
      for (int sep : {1, 2}) {
        const auto a = two_site_rdm(sums, sep);
        const auto e = ed::to_x_state(sep == 1 ? oracle12.rho : oracle13.pair.rho, sep);
        const bool one = sep == 1;
        record(slot++, one ? "u12" : "u13", std::abs(a.u - e.u), p);
        record(slot++, one ? "v12" : "v13", std::abs(a.v - e.v), p);
        record(slot++, one ? "w12" : "w13", std::abs(a.w - e.w), p);
        record(slot++, one ? "x12" : "x13", std::abs(a.x - e.x), p);
        record(slot++, one ? "z12" : "z13", std::abs(a.z - e.z), p);
      }
      record(slot++, "C12", std::abs(analytic.c12 - oracle12.concurrence), p);
      record(slot++, "C13", std::abs(analytic.c13 - oracle13.pair.concurrence), p);
      record(slot++, "I12", std::abs(analytic.i12 - oracle12.mutualInformation), p);
      record(slot++, "I13", std::abs(analytic.i13 - oracle13.pair.mutualInformation), p);
      record(slot++, "D12", std::abs(analytic.d12 - oracle12.discord), p);
      record(slot++, "D13", std::abs(analytic.d13 - oracle13.pair.discord), p);
      ++out.pointsCompared;
      ++done;
    }
  }
  return out;
}

}  // namespace clusterchain
