#include "paraplex/topology.hpp"

#include <cmath>
#include <cstdlib>

#include "paraplex/tensor.hpp"

namespace paraplex {

namespace {

constexpr double kVolumeTol = 1e-6;
constexpr int kMinNodes = 4;

// Second-order data of one factor metric at one node.
struct FactorJet {
  double g[2][2];
  double dg[2][2][2];      // dg[k][i][j]
  double ddg[2][2][2][2];  // ddg[k][l][i][j]
};

FactorJet factor_jet(const ClosedSurface& s, double u, double v) {
  const std::array<Jet2, 3> m = s.metric(jet_seed({u, v, 0, 0}, 0), jet_seed({u, v, 0, 0}, 1));
  const Jet2* e[2][2] = {{&m[0], &m[1]}, {&m[1], &m[2]}};
  FactorJet f{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      f.g[i][j] = e[i][j]->value;
      for (int k = 0; k < 2; ++k) {
        f.dg[k][i][j] = e[i][j]->grad[k];
        for (int l = 0; l < 2; ++l) f.ddg[k][l][i][j] = e[i][j]->hess(k, l);
      }
    }
  return f;
}

void embed(const FactorJet& f, int offset, double sign, MetricJet& mj) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      mj.g[offset + i][offset + j] = sign * f.g[i][j];
      for (int k = 0; k < 2; ++k) {
        mj.dg[offset + k][offset + i][offset + j] = sign * f.dg[k][i][j];
        for (int l = 0; l < 2; ++l) mj.ddg[offset + k][offset + l][offset + i][offset + j] = sign * f.ddg[k][l][i][j];
      }
    }
}

struct Sums {
  double chi = 0.0, tau = 0.0, volume = 0.0;
};

Sums node_terms(const MetricJet& mj, double w, int eps) {
  const CurvatureScalars c = curvature_scalars(mj, 1);
  const double dv = w * c.volume_density;
  return {eps * (c.weyl_norm2 - 2.0 * c.ricci_norm2 + (2.0 / 3.0) * c.scalar * c.scalar) * dv,
          (c.weyl_plus2 - c.weyl_minus2) * dv, dv};
}

Sums pairwise(const std::vector<Sums>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return v[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  const Sums a = pairwise(v, lo, mid), b = pairwise(v, mid, hi);
  return {a.chi + b.chi, a.tau + b.tau, a.volume + b.volume};
}

IntegralEstimate finish(const QuadratureGrid& grid, const Sums& s) {
  IntegralEstimate r;
  r.chi = s.chi / (32.0 * M_PI * M_PI);
  r.tau = s.tau / (48.0 * M_PI * M_PI);
  r.volume = s.volume;
  r.volume_expected = grid.s1.area * grid.s2.area;
  r.nodes = static_cast<long long>(grid.nodes1.size()) * static_cast<long long>(grid.nodes2.size());
  if (std::abs(r.volume - r.volume_expected) > kVolumeTol * r.volume_expected)
    throw Error(ErrorKind::GridTooCoarse, "quadrature volume " + std::to_string(r.volume) + " differs from " +
                                              std::to_string(r.volume_expected));
  return r;
}

std::vector<FactorNode> factor_nodes(SurfaceKind kind, int n) {
  std::vector<FactorNode> out;
  out.reserve(static_cast<std::size_t>(n) * n);
  const double h = 2.0 * M_PI / n;
  if (kind == SurfaceKind::Torus) {
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) out.push_back({(i + 0.5) * h, (k + 0.5) * h, h * h});
    return out;
  }
  const auto [t, w] = gauss_legendre(n);
  for (int i = 0; i < n; ++i) {
    const double theta = std::acos(t[i]);
    for (int k = 0; k < n; ++k) out.push_back({theta, (k + 0.5) * h, w[i] / std::sin(theta) * h});
  }
  return out;
}

std::vector<FactorJet> factor_jets(const ClosedSurface& s, const std::vector<FactorNode>& nodes) {
  std::vector<FactorJet> out;
  out.reserve(nodes.size());
  for (const FactorNode& n : nodes) out.push_back(factor_jet(s, n.u, n.v));
  return out;
}

}  // namespace

ClosedSurface round_sphere(double radius) {
  const double r2 = radius * radius;
  return {"sphere", SurfaceKind::Sphere,
          [r2](const Jet2& th, const Jet2&) {
            const Jet2 s = sin(th);
            return std::array<Jet2, 3>{Jet2(r2), Jet2(0.0), r2 * s * s};
          },
          4.0 * M_PI * r2};
}

ClosedSurface flat_torus(double a, double b) {
  return {"torus", SurfaceKind::Torus,
          [a, b](const Jet2&, const Jet2&) { return std::array<Jet2, 3>{Jet2(a * a), Jet2(0.0), Jet2(b * b)}; },
          4.0 * M_PI * M_PI * a * b};
}

ClosedSurface squashed_sphere(double c) {
  return {"squashed-sphere", SurfaceKind::Sphere,
          [c](const Jet2& th, const Jet2&) {
            const Jet2 co = cos(th), s = sin(th);
            const Jet2 f = 1.0 + c * co * co;
            return std::array<Jet2, 3>{f, Jet2(0.0), f * s * s};
          },
          2.0 * M_PI * (2.0 + 2.0 * c / 3.0)};
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

QuadratureGrid make_grid(const ClosedSurface& s1, const ClosedSurface& s2, int eps, int n) {
  if (n < kMinNodes) throw Error(ErrorKind::GridTooCoarse, "need at least 4 nodes per axis");
  if (eps != 1 && eps != -1) throw Error(ErrorKind::ConfigError, "eps must be +1 or -1");
  QuadratureGrid g{s1, s2, eps, n, factor_nodes(s1.kind, n), factor_nodes(s2.kind, n)};
  return g;
}

IntegralEstimate integrate(const QuadratureGrid& grid) {
  const std::vector<FactorJet> j1 = factor_jets(grid.s1, grid.nodes1), j2 = factor_jets(grid.s2, grid.nodes2);
  const long long n1 = static_cast<long long>(grid.nodes1.size());
  std::vector<Sums> partial(grid.nodes1.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long long a = 0; a < n1; ++a) {
    MetricJet mj{};
    embed(j1[a], 0, 1.0, mj);
    Sums s;
    for (std::size_t b = 0; b < j2.size(); ++b) {
      embed(j2[b], 2, grid.eps, mj);
      const Sums t = node_terms(mj, grid.nodes1[a].weight * grid.nodes2[b].weight, grid.eps);
      s.chi += t.chi;
      s.tau += t.tau;
      s.volume += t.volume;
    }
    partial[a] = s;
  }
  return finish(grid, pairwise(partial, 0, partial.size()));
}

IntegralEstimate integrate_serial(const QuadratureGrid& grid) {
  Sums s;
  for (const FactorNode& a : grid.nodes1)
    for (const FactorNode& b : grid.nodes2) {
      MetricJet mj{};
      embed(factor_jet(grid.s1, a.u, a.v), 0, 1.0, mj);
      embed(factor_jet(grid.s2, b.u, b.v), 2, grid.eps, mj);
      const Sums t = node_terms(mj, a.weight * b.weight, grid.eps);
      s.chi += t.chi;
      s.tau += t.tau;
      s.volume += t.volume;
    }
  return finish(grid, s);
}

double cgb_estimate(const QuadratureGrid& grid) { return integrate(grid).chi; }
double signature_estimate(const QuadratureGrid& grid) { return integrate(grid).tau; }

std::vector<ConvergenceRow> convergence_table(const ClosedSurface& s1, const ClosedSurface& s2, int eps,
                                              const std::vector<int>& sizes, double chi_exact, double tau_exact) {
  std::vector<ConvergenceRow> rows;
  for (int n : sizes) {
    const IntegralEstimate e = integrate(make_grid(s1, s2, eps, n));
    rows.push_back({n, e.chi, e.tau, std::abs(e.chi - chi_exact), std::abs(e.tau - tau_exact)});
  }
  return rows;
}

TopologicalProfile k3_profile() { return {"K3", 24, 16, true}; }
TopologicalProfile s2xs2_profile() { return {"S2xS2", 4, 0, true}; }

TopologicalProfile cp2_blowup_profile(int k) {
  if (k < 0) throw Error(ErrorKind::DomainError, "k must be nonnegative");
  // Einstein metrics are known for 0 <= k <= 8.
  return {"CP2#" + std::to_string(k) + "CP2bar", 3 + k, 1 - k, k <= 8};
}

ObstructionReport obstruction_report(const TopologicalProfile& p) {
  ObstructionReport r;
  r.profile = p;
  r.hitchin_thorpe = 2 * p.chi >= 3 * std::abs(p.tau);
  auto mod4 = [](int x) { return ((x % 4) + 4) % 4 == 0; };
  r.neutral_congruences = mod4(p.chi + p.tau) && mod4(p.chi - p.tau);
  r.tau_vanishes = p.tau == 0;
  r.parallel_excluded = p.einstein_known && r.neutral_congruences && !r.tau_vanishes;
  return r;
}

}  // namespace paraplex
