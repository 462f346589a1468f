#ifndef COAGRAPH_SMOLUCHOWSKI_HPP_
#define COAGRAPH_SMOLUCHOWSKI_HPP_

#include <vector>

#include "coagraph/degree_law.hpp"

namespace coagraph {

/// Concentrations c(a, k) for 0 <= a <= a_max, 1 <= k <= k_max, row-major
/// by a. shed_mass is the cumulative k-weighted mass pushed past the
/// truncation bounds.
struct ConcentrationGrid {
  int a_max = 0;
  int k_max = 0;
  std::vector<double> c;
  double shed_mass = 0.0;

  double& at(int a, int k) { return c[std::size_t(a) * k_max + (k - 1)]; }
  double at(int a, int k) const { return c[std::size_t(a) * k_max + (k - 1)]; }
  const double* row(int a) const { return c.data() + std::size_t(a) * k_max; }
  double* row(int a) { return c.data() + std::size_t(a) * k_max; }

  double total_mass() const;  // sum k c(a,k)
  double total_arms() const;  // sum a c(a,k)
};

/// Monomer initial data: c(a, 1) = mu(a) / m.
ConcentrationGrid initial_monomers(const DegreeLaw& mu, int a_max, int k_max);

/// Coagulation right-hand side on the truncated grid; `out` receives dc/dt
/// and, in out.shed_mass, the k-weighted mass flux past the bounds.
void rhs(const ConcentrationGrid& grid, ConcentrationGrid& out);

enum class Method { rk4, euler };

struct Checkpoint {
  double t = 0.0;
  ConcentrationGrid grid;
};

struct IntegrateResult {
  ConcentrationGrid final;
  double t = 0.0;
  std::vector<Checkpoint> checkpoints;  // geometric times, plus the end
};

IntegrateResult integrate(ConcentrationGrid grid, double horizon, double dt,
                          Method method);

struct SteadyStateRow {
  int k = 0;
  double computed = 0.0;
  double target = 0.0;  // nu^{*k}(k-2) / (k(k-1))
  double abs_error = 0.0;
};

std::vector<SteadyStateRow> steady_state_error(const ConcentrationGrid& grid,
                                               const DegreeLaw& mu,
                                               int k_report);

}  // namespace coagraph

#endif  // COAGRAPH_SMOLUCHOWSKI_HPP_
