#include "clusterchain/ed.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

namespace clusterchain::ed {

namespace {

void require_range(const ModelParams& p) {
  p.validate();
  if (p.n > kMaxSites)
    throw ParameterError("exact diagonalisation supports N <= " + std::to_string(kMaxSites));
}

int fermion_parity(std::uint32_t s, int n) {
  // Up spins are bit value 0; N is even, so the parity of the up count
  // equals the parity of the popcount.
  (void)n;
  return std::popcount(s) & 1;
}

// Translation orbits of the computational basis. T moves site l to l + 1.
struct Orbits {
  int n;
  std::vector<std::uint32_t> rep;  // orbit representative (smallest member)
  std::vector<int> shift;          // s = T^shift rep
  std::vector<int> period;         // orbit length, valid on representatives

  explicit Orbits(int sites) : n(sites) {
    const std::uint32_t dim = 1u << n, mask = dim - 1;
    rep.resize(dim);
    shift.resize(dim);
    period.assign(dim, 0);
    for (std::uint32_t s = 0; s < dim; ++s) {
      std::uint32_t best = s, t = s;
      int bestJ = 0;
      for (int j = 1; j < n; ++j) {
        t = ((t << 1) | (t >> (n - 1))) & mask;
        if (t < best) {
          best = t;
          bestJ = j;
        }
      }
      rep[s] = best;
      shift[s] = (n - bestJ) % n;
    }
    for (std::uint32_t s = 0; s < dim; ++s) {
      if (rep[s] != s) continue;
      std::uint32_t t = s;
      int p = 0;
      do {
        t = ((t << 1) | (t >> (n - 1))) & mask;
        ++p;
      } while (t != s);
      period[s] = p;
    }
  }
};

struct Level {
  double energy;
  int parity;
  Eigen::VectorXcd full;  // filled lazily for ground-manifold members
};

struct BlockSolution {
  std::vector<std::uint32_t> reps;
  double k;
  int parity;
  Eigen::VectorXd energies;
  Eigen::MatrixXcd vectors;
};

Eigen::VectorXcd expand(const BlockSolution& b, int col, const Orbits& orb) {
  Eigen::VectorXcd full = Eigen::VectorXcd::Zero(std::size_t{1} << orb.n);
  const std::uint32_t mask = (1u << orb.n) - 1;
  for (std::size_t i = 0; i < b.reps.size(); ++i) {
    const std::uint32_t r = b.reps[i];
    const int p = orb.period[r];
    const cplx a = b.vectors(static_cast<Eigen::Index>(i), col) / std::sqrt(double(p));
    std::uint32_t t = r;
    for (int j = 0; j < p; ++j) {
      full(t) += a * std::polar(1.0, -b.k * j);
      t = ((t << 1) | (t >> (orb.n - 1))) & mask;
    }
  }
  return full;
}

std::vector<BlockSolution> solve_blocks(const SpinHamiltonian& ham) {
  const int n = ham.sites();
  const Orbits orb(n);
  std::vector<BlockSolution> out;
  for (int parity = 0; parity < 2; ++parity) {
    for (int m = 0; m < n; ++m) {
      BlockSolution b;
      b.k = 2.0 * std::numbers::pi * m / n;
      b.parity = parity;
      std::vector<int> index(std::size_t{1} << n, -1);
      for (std::uint32_t s = 0; s < (1u << n); ++s) {
        if (orb.rep[s] != s || fermion_parity(s, n) != parity) continue;
        if ((m * orb.period[s]) % n != 0) continue;
        index[s] = static_cast<int>(b.reps.size());
        b.reps.push_back(s);
      }
      if (b.reps.empty()) continue;
      const auto dim = static_cast<Eigen::Index>(b.reps.size());
      Eigen::MatrixXcd hk = Eigen::MatrixXcd::Zero(dim, dim);
      for (Eigen::Index c = 0; c < dim; ++c) {
        const std::uint32_t r = b.reps[c];
        hk(c, c) += ham.diagonal(r);
        ham.for_each_offdiagonal(r, [&](std::uint32_t t, double coeff) {
          const std::uint32_t s = orb.rep[t];
          const int row = index[s];
          if (row < 0) return;
          hk(row, c) += coeff * std::polar(1.0, b.k * orb.shift[t]) *
                        std::sqrt(double(orb.period[r]) / orb.period[s]);
        });
      }
      hk = 0.5 * (hk + hk.adjoint()).eval();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hk);
      if (es.info() != Eigen::Success) throw NumericalError("block eigensolver failed");
      b.energies = es.eigenvalues();
      b.vectors = es.eigenvectors();
      out.push_back(std::move(b));
    }
  }
  return out;
}

Eigen::MatrixXd parity_block(const ModelParams& p, int parity, std::vector<std::uint32_t>& basis) {
  const SpinHamiltonian ham(p);
  std::vector<int> index(ham.dimension(), -1);
  for (std::uint32_t s = 0; s < ham.dimension(); ++s)
    if (fermion_parity(s, p.n) == parity) {
      index[s] = static_cast<int>(basis.size());
      basis.push_back(s);
    }
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    m(c, c) = ham.diagonal(basis[c]);
    ham.for_each_offdiagonal(basis[c], [&](std::uint32_t t, double v) { m(index[t], c) += v; });
  }
  return m;
}

SpectrumResult ground_space_blocked(const ModelParams& p, double degTol) {
  const SpinHamiltonian ham(p);
  const auto blocks = solve_blocks(ham);
  SpectrumResult res;
  res.lowestEven = res.lowestOdd = std::numeric_limits<double>::infinity();
  for (const auto& b : blocks) {
    double& low = b.parity == 0 ? res.lowestEven : res.lowestOdd;
    low = std::min(low, b.energies(0));
  }
  res.groundEnergy = std::min(res.lowestEven, res.lowestOdd);
  res.gap = std::numeric_limits<double>::infinity();

  const Orbits orb(p.n);
  for (const auto& b : blocks) {
    for (Eigen::Index i = 0; i < b.energies.size(); ++i) {
      const double e = b.energies(i);
      if (e <= res.groundEnergy + degTol) {
        res.states.push_back({p.n, expand(b, static_cast<int>(i), orb)});
      } else {
        res.gap = std::min(res.gap, e - res.groundEnergy);
        break;
      }
    }
  }
  res.multiplicity = static_cast<int>(res.states.size());
  return res;
}

SpectrumResult ground_space_full(const ModelParams& p, double degTol) {
  SpectrumResult res;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(build_hamiltonian(p));
  if (es.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");
  const Eigen::VectorXd& e = es.eigenvalues();
  res.groundEnergy = e(0);
  res.gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    if (e(i) <= res.groundEnergy + degTol) {
      res.states.push_back({p.n, es.eigenvectors().col(i).cast<cplx>()});
    } else {
      res.gap = e(i) - res.groundEnergy;
      break;
    }
  }
  res.multiplicity = static_cast<int>(res.states.size());
  for (int parity = 0; parity < 2; ++parity) {
    std::vector<std::uint32_t> basis;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> bs(parity_block(p, parity, basis),
                                                      Eigen::EigenvaluesOnly);
    (parity == 0 ? res.lowestEven : res.lowestOdd) = bs.eigenvalues()(0);
  }
  return res;
}

}  // namespace

SpinHamiltonian::SpinHamiltonian(const ModelParams& p) : n_(p.n), jx_(p.jx), jy_(p.jy), h_(p.h) {
  require_range(p);
}

double SpinHamiltonian::diagonal(std::uint32_t s) const {
  const int down = std::popcount(s);
  return -h_ * (n_ - 2 * down);
}

Eigen::VectorXcd SpinHamiltonian::apply(const Eigen::VectorXcd& v) const {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
  for (std::uint32_t s = 0; s < dimension(); ++s) {
    if (v(s) == cplx{}) continue;
    out(s) += diagonal(s) * v(s);
    for_each_offdiagonal(s, [&](std::uint32_t t, double c) { out(t) += c * v(s); });
  }
  return out;
}

Eigen::MatrixXd SpinHamiltonian::dense() const {
  const auto dim = static_cast<Eigen::Index>(dimension());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (std::uint32_t s = 0; s < dimension(); ++s) {
    m(s, s) = diagonal(s);
    for_each_offdiagonal(s, [&](std::uint32_t t, double c) { m(t, s) += c; });
  }
  return m;
}

Eigen::MatrixXd build_hamiltonian(const ModelParams& p) { return SpinHamiltonian(p).dense(); }

SpectrumResult ground_space(const ModelParams& p, double degTol, Solver solver) {
  require_range(p);
  if (!(degTol > 0.0)) throw ParameterError("degTol must be positive");
  return solver == Solver::Blocked ? ground_space_blocked(p, degTol) : ground_space_full(p, degTol);
}

Eigen::VectorXd spectrum(const ModelParams& p) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(build_hamiltonian(p), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");
  return es.eigenvalues();
}

Eigen::VectorXcd apply_pauli(const Eigen::VectorXcd& v, int n, int site, char pauli) {
  const std::uint32_t b = 1u << site;
  Eigen::VectorXcd out(v.size());
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    const bool down = s & b;
    switch (pauli) {
      case 'x': out(s ^ b) = v(s); break;
      case 'y': out(s ^ b) = (down ? cplx{0, -1} : cplx{0, 1}) * v(s); break;
      case 'z': out(s) = (down ? -1.0 : 1.0) * v(s); break;
      default: throw ParameterError("unknown Pauli operator");
    }
  }
  return out;
}

DenseState cluster_state(int n, ClusterFlavor flavor) {
  if (n < 4 || n % 2 != 0 || n > kMaxSites)
    throw ParameterError("cluster state needs an even chain length in [4, 12]");
  const char op = flavor == ClusterFlavor::Y ? 'y' : 'x';
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(std::size_t{1} << n);
  v(0) = 1.0;  // all up
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    const Eigen::VectorXcd a = apply_pauli(v, n, i, op);
    const Eigen::VectorXcd b = apply_pauli(v, n, j, op);
    const Eigen::VectorXcd ab = apply_pauli(a, n, j, op);
    v = 0.5 * (v + a + b - ab);
  }
  v.normalize();
  return {n, v};
}

Eigen::MatrixXcd reduce(const DenseState& state, const std::vector<int>& sites) {
  const int k = static_cast<int>(sites.size());
  if (k < 1 || k > 2) throw ParameterError("reduce supports one or two sites");
  if (k == 2 && sites[0] == sites[1]) throw ParameterError("sites must be distinct");
  for (int s : sites)
    if (s < 0 || s >= state.n) throw ParameterError("site index out of range");

  const int dimLocal = 1 << k;
  std::uint32_t localMask = 0;
  for (int s : sites) localMask |= 1u << s;
  auto place = [&](std::uint32_t restBits, int local) {
    std::uint32_t s = restBits;
    for (int j = 0; j < k; ++j)
      if ((local >> (k - 1 - j)) & 1) s |= 1u << sites[j];
    return s;
  };

  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dimLocal, dimLocal);
  const auto& psi = state.amplitudes;
  for (std::uint32_t rest = 0; rest < (1u << state.n); ++rest) {
    if (rest & localMask) continue;
    for (int a = 0; a < dimLocal; ++a) {
      const cplx pa = psi(place(rest, a));
      if (pa == cplx{}) continue;
      for (int b = 0; b < dimLocal; ++b) rho(a, b) += pa * std::conj(psi(place(rest, b)));
    }
  }
  return rho;
}

Eigen::MatrixXcd reduce(const std::vector<DenseState>& states, const std::vector<int>& sites) {
  if (states.empty()) throw ParameterError("empty ground manifold");
  Eigen::MatrixXcd rho = reduce(states.front(), sites);
  for (std::size_t i = 1; i < states.size(); ++i) rho += reduce(states[i], sites);
  return rho / static_cast<double>(states.size());
}

PairMeasures measure_pair(const std::vector<DenseState>& ground, int i, int j) {
  PairMeasures m;
  m.rho = reduce(ground, {i, j});
  m.concurrence = concurrence_wootters(m.rho);
  m.mutualInformation = mutual_information(m.rho);
  m.discord = discord(m.rho);
  return m;
}

OracleReport measure_all(const SpectrumResult& spec, int i, int j) {
  OracleReport r;
  r.groundEnergy = spec.groundEnergy;
  r.multiplicity = spec.multiplicity;
  r.degenerate = spec.multiplicity > 1;
  const int n = spec.states.front().n;
  double purity = 0.0;
  for (int l = 0; l < n; ++l) {
    const Eigen::MatrixXcd rho = reduce(spec.states, {l});
    r.mz += (rho(0, 0) - rho(1, 1)).real() / n;
    purity += (rho * rho).trace().real() / n;
  }
  r.eglobal = 2.0 * (1.0 - purity);
  r.pair = measure_pair(spec.states, i, j);
  return r;
}

OracleReport measure_all(const ModelParams& p, int i, int j, double degTol) {
  return measure_all(ground_space(p, degTol), i, j);
}

XStateRDM to_x_state(const Eigen::Matrix4cd& rho, int separation) {
  XStateRDM r;
  r.u = rho(0, 0).real();
  r.w = 0.5 * (rho(1, 1).real() + rho(2, 2).real());
  r.v = rho(3, 3).real();
  r.x = rho(0, 3);
  r.z = rho(1, 2);
  r.separation = separation;
  return r;
}

}  // namespace clusterchain::ed
