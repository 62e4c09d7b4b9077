#pragma once

// Parameter sweeps, finite-difference derivatives, degeneracy scans and the
// CSV / JSON-lines artifacts they produce.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "clusterchain/correlators.hpp"
#include "clusterchain/model.hpp"

namespace clusterchain {

enum class SweepParameter { Jx, Jy, H, N };

std::string to_string(SweepParameter p);
SweepParameter sweep_parameter_from_string(const std::string& s);

/// Either an inclusive linear range (start, stop, count >= 2) or an explicit
/// list of at least two values.
struct Axis {
  SweepParameter parameter = SweepParameter::H;
  double start = 0.0;
  double stop = 1.0;
  int count = 2;
  std::vector<double> values;

  std::vector<double> points() const;
};

struct DerivativeRequest {
  std::string observable;
  SweepParameter withRespectTo = SweepParameter::H;
  double step = 1e-4;
};

enum class OutputFormat { Csv, JsonLines };

struct OutputSpec {
  std::string path;  // empty: standard output
  OutputFormat format = OutputFormat::Csv;
};

struct SweepSpec {
  Axis axis1;
  std::optional<Axis> axis2;
  ModelParams fixed;
  std::vector<std::string> observables;
  std::vector<DerivativeRequest> derivatives;
  OutputSpec output;
  SumOptions sums;

  /// Throws ParameterError on an invalid spec.
  void validate() const;
};

/// Parses the JSON form; unknown keys anywhere are rejected.
SweepSpec parse_sweep_spec(const std::string& json);

/// Canonical JSON form (every field written, fixed key order).
std::string to_json(const SweepSpec& spec);

/// Names accepted in SweepSpec::observables: Mz, C12, C13, I12, I13, D12, D13,
/// Eglobal, energy, corrZZ, corrPP, corrPM (separation-2 elements) and
/// gamma_<p>, xi_<p> for an integer p >= 0.
bool is_observable(const std::string& name);

/// Values of a set of observables at one point; degenerate follows
/// CorrelationReport::degenerate.
struct PointEvaluation {
  std::vector<double> values;
  bool degenerate = false;
};

PointEvaluation evaluate(const ModelParams& p, const std::vector<std::string>& observables,
                         const SumOptions& opt = {});

double evaluate(const ModelParams& p, const std::string& observable, const SumOptions& opt = {});

/// D(d) = (f(p + d) - f(p - d)) / 2d. The reported value is the Richardson
/// combination (4 D(d) - D(2d)) / 3; error = |D(d) - D(2d)| / 3 estimates the
/// truncation error of the plain central difference.
struct DerivativeEstimate {
  double value = 0.0;
  double central = 0.0;     // D(d)
  double error = 0.0;
  bool unreliable = false;  // a degenerate point lies on the stencil
};

DerivativeEstimate derivative(const ModelParams& p, const std::string& observable,
                              SweepParameter wrt, double step, const SumOptions& opt = {});

/// Rows are doubles; the degenerate flag and derivative reliability columns
/// hold 0 or 1.
struct SweepTable {
  std::string specJson;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// One row per grid point, axis1 outer and axis2 fastest. Columns: swept
/// parameters, observables in spec order, then per derivative request
/// d<obs>_d<param>, d<obs>_d<param>_err and d<obs>_d<param>_unreliable, then
/// degenerate.
SweepTable run_sweep(const SweepSpec& spec);

/// 17 significant digits.
std::string format_number(double v);

void write_csv(std::ostream& out, const SweepTable& table);
SweepTable read_csv(std::istream& in);
void write_json_lines(std::ostream& out, const SweepTable& table);
void write_table(std::ostream& out, const SweepTable& table, OutputFormat format);

/// Degeneracy scan over (Jy, h) at fixed Jx and N.
struct DegeneracyScanSpec {
  double jx = 1.0;
  Axis jy{SweepParameter::Jy, -2.0, 2.0, 201, {}};
  Axis h{SweepParameter::H, -3.0, 3.0, 201, {}};
  int n = 100;
  std::vector<Sector> sectors{Sector::EvenNF, Sector::OddNF};
  double tolZero = -1.0;  // <= 0: default_tol_zero
  OutputSpec output;

  void validate() const;
};

DegeneracyScanSpec parse_degeneracy_scan_spec(const std::string& json);
std::string to_json(const DegeneracyScanSpec& spec);

struct DegeneracyHit {
  ModelParams params;
  /// zeroModes holds the sector momenta whose zero-mode locus passes through
  /// the grid cell centred on params; minOmega is evaluated at params itself.
  DegeneracyReport report;
};

/// A mode k is gapless where A_k = B_k = 0, a set that is linear in (Jy, h):
/// the lines h = cos(2k)(Jx + Jy) for sin 2k = 0, and the point
/// (Jx, 2 Jx cos 2k) otherwise. Each grid point owns the cell extending half a
/// step to either side, so every locus crossing the scanned window is reported
/// within one cell even when it misses the grid.
std::vector<DegeneracyHit> scan_degeneracy(const DegeneracyScanSpec& spec);

void write_degeneracy_csv(std::ostream& out, const DegeneracyScanSpec& spec,
                          const std::vector<DegeneracyHit>& hits);

}  // namespace clusterchain
