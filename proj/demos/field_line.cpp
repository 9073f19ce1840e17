// Samples the classical magnetic field along a line through two spins and
// checks two identities on the fly: the component along the external field
// is h times the summed pair interaction, and the transverse electric
// field vanishes.  Output is CSV on stdout.

#include <cstdio>

#include "spinboson/closed_form.hpp"

using namespace spinboson;

int main() {
  const ChiProfile chi = ChiProfile::annular_bump();
  SpinConfig spins;
  spins.beta = Eigen::Vector3d(0.0, 0.0, 1.0);
  spins.positions = {Eigen::Vector3d::Zero(),
                     Eigen::Vector3d(1.2, 0.0, 0.0)};
  const double h = 0.05;
  const Eigen::Vector3d n = spins.beta_direction();

  std::printf("t,Bx,By,Bz,B_parallel,h_sum_F,E_norm\n");
  for (int i = 0; i <= 24; ++i) {
    const double t = -0.6 + 0.1 * i;  // parameter along the spin axis
    const Eigen::Vector3d x(t, 0.0, 0.0);
    const Eigen::Vector3d b = magnetic_field(chi, spins, x, h);

    double pair_sum = 0.0;
    for (const auto& site : spins.positions)
      pair_sum += pair_interaction(chi, x - site, n);

    std::printf("%.2f,%.6e,%.6e,%.6e,%.6e,%.6e,%.1e\n", t, b[0], b[1], b[2],
                b.dot(n), h * pair_sum, electric_field(x, h).norm());
  }
  return 0;
}
