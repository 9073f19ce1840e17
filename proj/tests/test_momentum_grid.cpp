#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "spinboson/momentum_grid.hpp"
#include "spinboson/quadrature.hpp"

using namespace spinboson;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("built grid covers the chi shell with the exact shell volume",
          "[grid]") {
    ChiProfile chi = ChiProfile::annular_bump(2.0, 1.0);
    MomentumGrid grid = build_grid(chi, 3, 6, 3.0);
    REQUIRE(grid.node_count() == 18);
    REQUIRE(grid.mode_count() == 36);

    double wsum = 0.0;
    for (int i = 0; i < grid.node_count(); ++i) {
        const double r = grid.node(i).norm();
        REQUIRE(r > 1.0);
        REQUIRE(r < 3.0);
        REQUIRE(grid.weight(i) > 0.0);
        wsum += grid.weight(i);
    }
    // Sum of weights = shell volume, exactly at this polynomial degree.
    const double shell = 4.0 * kPi * (27.0 - 1.0) / 3.0;
    REQUIRE(wsum == Catch::Approx(shell).epsilon(1e-12));
    REQUIRE(grid.min_frequency() > 1.0);
}

TEST_CASE("grid construction rejects bad parameters", "[grid]") {
    ChiProfile chi = ChiProfile::annular_bump(2.0, 1.0);
    REQUIRE_THROWS_AS(build_grid(chi, 1, 6, 3.0), PreconditionError);
    REQUIRE_THROWS_AS(build_grid(chi, 3, 6, 1.0), PreconditionError);
    REQUIRE_THROWS_AS(build_grid(chi, 3, 7, 3.0), ConfigError);
    REQUIRE_THROWS_AS(MomentumGrid({}, {}), PreconditionError);
    REQUIRE_THROWS_AS(
        MomentumGrid({Eigen::Vector3d(1, 0, 0)}, {1.0, 2.0}), PreconditionError);
    REQUIRE_THROWS_AS(MomentumGrid({Eigen::Vector3d(1, 0, 0)}, {-1.0}),
                      PreconditionError);
}

TEST_CASE("polarizations are unit transverse pairs", "[grid]") {
    ChiProfile chi = ChiProfile::annular_bump(2.0, 1.0);
    MomentumGrid grid = build_grid(chi, 4, 26, 3.0);
    for (int i = 0; i < grid.node_count(); ++i) {
        const Eigen::Vector3d khat = grid.node(i).normalized();
        const Eigen::Vector3d e1 = grid.polarization(i, 0);
        const Eigen::Vector3d e2 = grid.polarization(i, 1);
        REQUIRE(std::abs(e1.norm() - 1.0) < 1e-12);
        REQUIRE(std::abs(e2.norm() - 1.0) < 1e-12);
        REQUIRE(std::abs(e1.dot(khat)) < 1e-12);
        REQUIRE(std::abs(e2.dot(khat)) < 1e-12);
        REQUIRE(std::abs(e1.dot(e2)) < 1e-12);
    }
}

TEST_CASE("polarization pair at the poles falls back to the xy axes",
          "[grid]") {
    auto [e1, e2] = polarization_pair(Eigen::Vector3d(0, 0, 2.0));
    REQUIRE(e1 == Eigen::Vector3d(1, 0, 0));
    REQUIRE(e2 == Eigen::Vector3d(0, 1, 0));
    auto [f1, f2] = polarization_pair(Eigen::Vector3d(0, 0, -2.0));
    REQUIRE(f1 == Eigen::Vector3d(1, 0, 0));
    REQUIRE(f2 == Eigen::Vector3d(0, 1, 0));
    REQUIRE_THROWS_AS(polarization_pair(Eigen::Vector3d::Zero()),
                      PreconditionError);
}

TEST_CASE("built grids are inversion symmetric", "[grid]") {
    // The electric-field cancellation and the reality of grid-summed
    // classical fields both rest on this symmetry, so pin it down.
    ChiProfile chi = ChiProfile::annular_bump(2.0, 1.0);
    for (int order : {6, 14, 26, 38}) {
        MomentumGrid grid = build_grid(chi, 3, order, 3.0);
        for (int i = 0; i < grid.node_count(); ++i) {
            bool found = false;
            for (int j = 0; j < grid.node_count(); ++j) {
                if ((grid.node(j) + grid.node(i)).norm() < 1e-12 &&
                    std::abs(grid.weight(j) - grid.weight(i)) < 1e-14) {
                    found = true;
                    break;
                }
            }
            REQUIRE(found);
        }
    }
}

TEST_CASE("coupling norm matches the radial reduction of the continuum integral",
          "[grid]") {
    ChiProfile chi = ChiProfile::annular_bump(2.0, 1.0);
    auto radial = integrate_adaptive(
        [&](double r) { return chi(r) * chi(r) * r * r * r; }, 1.0, 3.0, 1e-13);
    const double continuum =
        radial.value * (8.0 * kPi / 3.0) / std::pow(2.0 * kPi, 3);

    double previous_gap = 1e300;
    for (int order : {8, 16, 32}) {
        MomentumGrid grid = build_grid(chi, order, 6, 3.0);
        Eigen::VectorXcd amps =
            coupling_amplitudes(grid, chi, Eigen::Vector3d(0.2, -0.1, 0.4), 2);
        const double gap = std::abs(amps.squaredNorm() - continuum);
        REQUIRE(gap <= previous_gap * 1.5);
        previous_gap = gap;
    }
    REQUIRE(previous_gap < 1e-6 * continuum);
}

TEST_CASE("coupling amplitudes at the origin are purely imaginary", "[grid]") {
    ChiProfile chi = ChiProfile::annular_bump(2.0, 1.0);
    MomentumGrid grid = build_grid(chi, 3, 14, 3.0);
    for (int axis = 0; axis < 3; ++axis) {
        Eigen::VectorXcd amps =
            coupling_amplitudes(grid, chi, Eigen::Vector3d::Zero(), axis);
        for (int q = 0; q < amps.size(); ++q) REQUIRE(amps[q].real() == 0.0);
    }
}

TEST_CASE("translation multiplies each amplitude by a momentum phase",
          "[grid]") {
    ChiProfile chi = ChiProfile::annular_bump(2.0, 1.0);
    MomentumGrid grid = build_grid(chi, 3, 14, 3.0);
    const Eigen::Vector3d x(0.3, 0.1, -0.2), shift(0.15, -0.4, 0.25);
    Eigen::VectorXcd base = coupling_amplitudes(grid, chi, x, 0);
    Eigen::VectorXcd moved = coupling_amplitudes(grid, chi, x + shift, 0);
    for (int q = 0; q < base.size(); ++q) {
        const Eigen::Vector3d& k = grid.node(grid.mode_node(q));
        const std::complex<double> phase =
            std::exp(std::complex<double>(0.0, -k.dot(shift)));
        REQUIRE(std::abs(moved[q] - phase * base[q]) <
                1e-13 * (1.0 + std::abs(base[q])));
    }
}

TEST_CASE("amplitudes are linear in the profile amplitude", "[grid]") {
    ChiProfile one = ChiProfile::annular_bump(2.0, 1.0, 1.0);
    ChiProfile two = ChiProfile::annular_bump(2.0, 1.0, 2.0);
    MomentumGrid grid = build_grid(one, 3, 6, 3.0);
    const Eigen::Vector3d x(0.1, 0.2, 0.3);
    Eigen::VectorXcd a = coupling_amplitudes(grid, one, x, 1);
    Eigen::VectorXcd b = coupling_amplitudes(grid, two, x, 1);
    REQUIRE((b - 2.0 * a).norm() < 1e-14 * a.norm());
}

TEST_CASE("electric polarization factors complete the transverse projection",
          "[grid]") {
    ChiProfile chi = ChiProfile::annular_bump(2.0, 1.0);
    MomentumGrid grid = build_grid(chi, 3, 26, 3.0);
    for (int i = 0; i < grid.node_count(); ++i) {
        const Eigen::Vector3d khat = grid.node(i).normalized();
        for (int axis = 0; axis < 3; ++axis) {
            Eigen::Vector3d e = Eigen::Vector3d::Zero();
            e[axis] = 1.0;
            double sum = 0.0;
            for (int s = 0; s < 2; ++s) {
                const double c = grid.polarization(i, s).dot(e);
                sum += c * c;
            }
            const double expected = 1.0 - std::pow(khat.dot(e), 2);
            REQUIRE(std::abs(sum - expected) < 1e-12);
        }
    }
}

TEST_CASE("mode indexing round-trips", "[grid]") {
    ChiProfile chi = ChiProfile::annular_bump(2.0, 1.0);
    MomentumGrid grid = build_grid(chi, 2, 6, 3.0);
    for (int m = 0; m < grid.mode_count(); ++m) {
        REQUIRE(2 * grid.mode_node(m) + grid.mode_pol(m) == m);
        REQUIRE(grid.mode_frequency(m) ==
                Catch::Approx(grid.node(grid.mode_node(m)).norm()));
    }
}
