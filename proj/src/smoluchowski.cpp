#include "coagraph/smoluchowski.hpp"

#include <cmath>

#include "coagraph/errors.hpp"
#include "coagraph/gw_law.hpp"
#include "coagraph/kernels.hpp"

namespace coagraph {

double ConcentrationGrid::total_mass() const {
  double mass = 0.0;
  for (int a = 0; a <= a_max; ++a)
    for (int k = 1; k <= k_max; ++k) mass += double(k) * at(a, k);
  return mass;
}

double ConcentrationGrid::total_arms() const {
  double arms = 0.0;
  for (int a = 1; a <= a_max; ++a)
    arms += double(a) * kernels::sum(row(a), std::size_t(k_max));
  return arms;
}

ConcentrationGrid initial_monomers(const DegreeLaw& mu, int a_max, int k_max) {
  if (a_max < mu.support_max)
    throw TruncationTooSmallError("a_max below the law's largest degree");
  if (k_max < 1) throw TruncationTooSmallError("k_max must be >= 1");
  ConcentrationGrid grid;
  grid.a_max = a_max;
  grid.k_max = k_max;
  grid.c.assign(std::size_t(a_max + 1) * k_max, 0.0);
  for (const auto& [i, p] : mu.weights) grid.at(i, 1) = p / mu.m;
  return grid;
}

void rhs(const ConcentrationGrid& grid, ConcentrationGrid& out) {
  const int A = grid.a_max, K = grid.k_max;
  out.a_max = A;
  out.k_max = K;
  out.c.assign(grid.c.size(), 0.0);

  double total_arms = 0.0;   // sum a c(a,k)
  double armed_mass = 0.0;   // sum a k c(a,k)
  for (int a = 1; a <= A; ++a) {
    const double* r = grid.row(a);
    for (int k = 1; k <= K; ++k) {
      total_arms += double(a) * r[k - 1];
      armed_mass += double(a) * double(k) * r[k - 1];
    }
  }

  // Gain: every ordered arm pair (a1, a2) feeds a k-convolution of the two
  // rows into row a1 + a2 - 2, weighted a1 a2 / 2.
  for (int a1 = 1; a1 <= A; ++a1) {
    const double* r1 = grid.row(a1);
    for (int a2 = 1; a2 <= A; ++a2) {
      const int a_out = a1 + a2 - 2;
      if (a_out > A) continue;  // shed, recovered by the mass balance below
      const double rate = 0.5 * double(a1) * double(a2);
      double* dst = out.row(a_out);
      const double* r2 = grid.row(a2);
      for (int k1 = 1; k1 < K; ++k1) {
        if (r1[k1 - 1] == 0.0) continue;
        kernels::axpy(dst + k1, r2, rate * r1[k1 - 1], std::size_t(K - k1));
      }
    }
  }

  // Coagulation conserves mass, so everything the loss term removes that
  // the truncated gain does not restore has been shed past the bounds.
  double gained_mass = 0.0;
  for (int a = 0; a <= A; ++a)
    for (int k = 1; k <= K; ++k) gained_mass += double(k) * out.at(a, k);
  out.shed_mass = total_arms * armed_mass - gained_mass;

  for (int a = 1; a <= A; ++a) {
    double* o = out.row(a);
    const double* r = grid.row(a);
    const double factor = double(a) * total_arms;
    for (int k = 1; k <= K; ++k) o[k - 1] -= factor * r[k - 1];
  }
}

namespace {

void check_and_clamp(ConcentrationGrid& grid) {
  for (double& x : grid.c) {
    if (!std::isfinite(x)) throw BlowUpError("non-finite concentration");
    if (x < 0.0) {
      if (x < -1e-14)
        throw NegativeConcentrationError("c = " + std::to_string(x));
      x = 0.0;
    }
  }
}

// One fixed step; stage storage is reused across steps.
struct Stepper {
  ConcentrationGrid k1, k2, k3, k4, scratch;

  void euler(ConcentrationGrid& grid, double dt) {
    rhs(grid, k1);
    kernels::axpy(grid.c.data(), k1.c.data(), dt, grid.c.size());
    grid.shed_mass += dt * k1.shed_mass;
  }

  void rk4(ConcentrationGrid& grid, double dt) {
    const std::size_t n = grid.c.size();
    rhs(grid, k1);
    stage(grid, k1, dt / 2.0);
    rhs(scratch, k2);
    stage(grid, k2, dt / 2.0);
    rhs(scratch, k3);
    stage(grid, k3, dt);
    rhs(scratch, k4);
    for (std::size_t i = 0; i < n; ++i)
      grid.c[i] += dt / 6.0 * (k1.c[i] + 2.0 * k2.c[i] + 2.0 * k3.c[i] + k4.c[i]);
    grid.shed_mass += dt / 6.0 * (k1.shed_mass + 2.0 * k2.shed_mass +
                                  2.0 * k3.shed_mass + k4.shed_mass);
  }

 private:
  void stage(const ConcentrationGrid& grid, const ConcentrationGrid& slope,
             double h) {
    scratch = grid;
    kernels::axpy(scratch.c.data(), slope.c.data(), h, scratch.c.size());
  }
};

}  // namespace

IntegrateResult integrate(ConcentrationGrid grid, double horizon, double dt,
                          Method method) {
  if (dt <= 0.0) throw Error("dt must be positive");
  if (horizon < 0.0) throw Error("horizon must be non-negative");
  IntegrateResult result;
  Stepper stepper;
  double t = 0.0;
  double next_checkpoint = dt;
  while (t < horizon - 1e-12) {
    const double step = std::min(dt, horizon - t);
    if (method == Method::rk4)
      stepper.rk4(grid, step);
    else
      stepper.euler(grid, step);
    t += step;
    check_and_clamp(grid);
    if (t >= next_checkpoint - 1e-12) {
      result.checkpoints.push_back({t, grid});
      while (next_checkpoint <= t + 1e-12) next_checkpoint *= 2.0;
    }
  }
  result.checkpoints.push_back({t, grid});
  result.t = t;
  result.final = std::move(grid);
  return result;
}

std::vector<SteadyStateRow> steady_state_error(const ConcentrationGrid& grid,
                                               const DegreeLaw& mu,
                                               int k_report) {
  if (k_report > grid.k_max) throw Error("k_report exceeds the grid");
  const OffspringLaw nu = offspring_law(mu);
  std::vector<SteadyStateRow> rows;
  rows.reserve(std::size_t(k_report) - 1);
  for (int k = 2; k <= k_report; ++k) {
    const Distribution conv = convolution_power(nu, k, std::max(k - 2, 0));
    SteadyStateRow row;
    row.k = k;
    row.computed = grid.at(0, k);
    row.target = conv.mass(k - 2) / (double(k) * double(k - 1));
    row.abs_error = std::abs(row.computed - row.target);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace coagraph
