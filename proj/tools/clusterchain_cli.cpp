#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "clusterchain/correlators.hpp"
#include "clusterchain/ed.hpp"
#include "clusterchain/measures.hpp"
#include "clusterchain/sweep.hpp"
#include "clusterchain/validate.hpp"

using namespace clusterchain;
using ojson = nlohmann::ordered_json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes through a temporary stream so that a failed run leaves no partial file.
template <class F>
void emit(const std::string& path, F&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ostringstream buf;
  write(buf);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << buf.str();
  if (!out) throw std::runtime_error("write failed: " + path);
}

ojson x_state_json(const XStateRDM& r) {
  return {{"u", r.u}, {"v", r.v}, {"w", r.w}, {"x", r.x.real()}, {"z", r.z.real()}};
}

int run_report(const ModelParams& p, bool withEd) {
  ojson j;
  j["params"] = {{"jx", p.jx}, {"jy", p.jy}, {"h", p.h}, {"n", p.n}, {"sector", to_string(p.sector)}};
  const auto energies = sector_energies(p);
  j["energyEven"] = energies.even;
  j["energyOdd"] = energies.odd;
  const auto deg = classify_degeneracy(p, default_tol_zero(p));
  j["degeneracy"] = {{"kind", to_string(deg.kind)},
                     {"count", deg.degeneracy},
                     {"zeroModes", deg.zeroModes},
                     {"minOmega", deg.minOmega}};

  if (p.sector == Sector::EvenNF) {
    const auto r = report(p);
    const auto sums = aux_sums(p, 2);
    j["analytic"] = {{"Mz", r.mz},       {"C12", r.c12},         {"C13", r.c13},
                     {"I12", r.i12},     {"I13", r.i13},         {"D12", r.d12},
                     {"D13", r.d13},     {"Eglobal", r.eglobal}, {"energy", r.energy},
                     {"rho12", x_state_json(two_site_rdm(sums, 1))},
                     {"rho13", x_state_json(two_site_rdm(sums, 2))},
                     {"oddSectorLower", r.oddSectorLower},
                     {"degenerate", r.degenerate}};
  }
  if (withEd) {
    if (p.n > ed::kMaxSites) throw ParameterError("--ed requires n <= 12");
    const auto ground = ed::ground_space(p);
    const auto o13 = ed::measure_all(ground, 0, 2);
    const auto o12 = ed::measure_pair(ground.states, 0, 1);
    j["ed"] = {{"energy", ground.groundEnergy},
               {"multiplicity", ground.multiplicity},
               {"lowestEven", ground.lowestEven},
               {"lowestOdd", ground.lowestOdd},
               {"Mz", o13.mz},
               {"Eglobal", o13.eglobal},
               {"C12", o12.concurrence},
               {"C13", o13.pair.concurrence},
               {"I12", o12.mutualInformation},
               {"I13", o13.pair.mutualInformation},
               {"D12", o12.discord},
               {"D13", o13.pair.discord},
               {"rho12", x_state_json(ed::to_x_state(o12.rho, 1))},
               {"rho13", x_state_json(ed::to_x_state(o13.pair.rho, 2))}};
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

int run_validate(int points, std::uint64_t seed) {
  ValidationOptions opt;
  opt.pointsPerSize = points;
  opt.seed = seed;
  const auto t0 = std::chrono::steady_clock::now();
  const auto s = validate_against_oracle(opt);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("compared %d points (%d redrawn as degenerate) in %.1f s\n", s.pointsCompared,
              s.pointsSkipped, secs);
  for (const auto& d : s.deviations)
    std::printf("  %-8s max |analytic - ed| = %.3e  (jy=%.6f h=%.6f n=%d)\n", d.quantity.c_str(),
                d.maxAbs, d.worst.jy, d.worst.h, d.worst.n);
  const bool ok = s.max_overall() <= 1e-8;
  std::printf("%s: max deviation %.3e (tolerance 1e-8)\n", ok ? "PASS" : "FAIL", s.max_overall());
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free-fermion cluster chain: correlations, sweeps and exact-diagonalisation checks"};
  app.require_subcommand(1);

  std::string config, outPath;
  auto* sweep = app.add_subcommand("sweep", "evaluate a parameter sweep from a JSON config");
  sweep->add_option("--config", config, "sweep config (JSON)")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", outPath, "output path, overriding the config ('-' for stdout)");

  ModelParams p;
  std::string sector = "even";
  bool withEd = false;
  auto* rep = app.add_subcommand("report", "all observables at one parameter point");
  rep->set_help_flag("--help", "print this help message and exit");
  rep->add_option("--jx", p.jx)->required();
  rep->add_option("--jy", p.jy)->required();
  rep->add_option("--h", p.h)->required();
  rep->add_option("--n", p.n)->required();
  rep->add_option("--sector", sector)->check(CLI::IsMember({"even", "odd"}));
  rep->add_flag("--ed", withEd, "add exact-diagonalisation values (n <= 12)");

  std::string scanConfig, scanOut;
  auto* scan = app.add_subcommand("scan-degeneracy", "locate gapless modes on a (jy, h) grid");
  scan->add_option("--config", scanConfig)->required()->check(CLI::ExistingFile);
  scan->add_option("--out", scanOut, "output path, overriding the config ('-' for stdout)");

  int points = 50;
  std::uint64_t seed = ValidationOptions{}.seed;
  auto* val = app.add_subcommand("validate", "compare analytic values with exact diagonalisation");
  val->add_option("--points", points, "random points per chain length")->check(CLI::PositiveNumber);
  val->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep) {
      const auto spec = parse_sweep_spec(slurp(config));
      const auto table = run_sweep(spec);
      emit(outPath.empty() ? spec.output.path : outPath,
           [&](std::ostream& os) { write_table(os, table, spec.output.format); });
      return 0;
    }
    if (*rep) {
      p.sector = sector_from_string(sector);
      p.validate();
      return run_report(p, withEd);
    }
    if (*scan) {
      const auto spec = parse_degeneracy_scan_spec(slurp(scanConfig));
      const auto hits = scan_degeneracy(spec);
      emit(scanOut.empty() ? spec.output.path : scanOut,
           [&](std::ostream& os) { write_degeneracy_csv(os, spec, hits); });
      return 0;
    }
    if (*val) return run_validate(points, seed);
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
