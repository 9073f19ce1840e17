// Walks the second energy coefficient from a coarse momentum grid to the
// closed-form value.  Two spins a quarter unit apart in a unit field along
// z; each step doubles-ish the radial order while the recursion and the
// direct mode sum are printed side by side.

#include <cstdio>

#include "spinboson/closed_form.hpp"
#include "spinboson/hamiltonian.hpp"
#include "spinboson/perturbation.hpp"

using namespace spinboson;

int main() {
  const ChiProfile chi = ChiProfile::annular_bump();
  SpinConfig spins;
  spins.beta = Eigen::Vector3d(0.0, 0.0, 1.0);
  spins.positions = {Eigen::Vector3d::Zero(),
                     Eigen::Vector3d(0.25, 0.0, 0.0)};

  const double target = lambda2_closed(chi, spins);
  std::printf("closed-form lambda_2 = %+.12f\n\n", target);
  std::printf("%8s %8s %12s %16s %16s %12s\n", "radial", "angular", "modes",
              "recursion", "mode sum", "rel gap");

  for (int radial : {2, 3, 4, 6}) {
    const MomentumGrid grid = build_grid(chi, radial, 6, chi.support_radius());
    const ModelOperators ops = assemble(grid, chi, spins, 2);
    const ExpansionResult res = expand_through(ops, 2);
    const double mode_sum = lambda2_grid(grid, chi, spins);
    const double gap = std::abs(res.lambda[1] - target) / std::abs(target);
    std::printf("%8d %8d %12d %+16.10f %+16.10f %12.3e\n", radial, 6,
                grid.mode_count(), res.lambda[1], mode_sum, gap);
  }

  std::printf("\nthe two columns agree to rounding at every order; the gap\n"
              "to the closed form is pure discretization error.\n");
  return 0;
}
