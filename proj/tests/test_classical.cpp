#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qdaemon/classical.hpp"

using namespace qdaemon;

namespace {

ClassicalEnsemble make_box(double P_R = 1.0, double P_UV = 3.0, double x_L = 1.0) {
    ClassicalEnsemble e;
    e.P_R = P_R;
    e.P_UV = P_UV;
    e.x_L = x_L;
    return e;
}

} // namespace

TEST_CASE("activation bands") {
    const double P_R = 1.0, P_UV = 3.0;
    CHECK(activation(0.5, P_R, P_UV) == 1.0);          // slow right-mover band
    CHECK(activation(-2.0, P_R, P_UV) == -1.0);        // fast left-mover band
    CHECK(activation(2.0, P_R, P_UV) == 0.0);          // fast right-mover: open
    CHECK(activation(-0.5, P_R, P_UV) == 0.0);         // slow left-mover: open
    CHECK(activation(4.0, P_R, P_UV) == 0.0);          // above the cutoff
    CHECK(activation(-4.0, P_R, P_UV) == 0.0);
    CHECK(activation(1.0, P_R, P_UV) == 0.5);          // threshold, Θ(0) = 1/2
}

TEST_CASE("slow right-mover starting left never crosses the gate") {
    ClassicalEnsemble e = make_box();
    e.particles.push_back({-0.7, 0.5});
    const auto traj = step_ensemble(e, 0.13, 400);
    for (const auto& snap : traj.snapshots) {
        CHECK(snap[0].x <= 0.0);
        CHECK(std::fabs(snap[0].p) == 0.5);
    }
}

TEST_CASE("fast left-mover starting right never crosses the gate") {
    ClassicalEnsemble e = make_box();
    e.particles.push_back({0.9, -2.0});
    const auto traj = step_ensemble(e, 0.07, 500);
    for (const auto& snap : traj.snapshots) {
        CHECK(snap[0].x >= 0.0);
        CHECK(std::fabs(snap[0].p) == 2.0);
    }
}

TEST_CASE("above the ultraviolet cutoff the gate is open both ways") {
    ClassicalEnsemble e = make_box();
    e.particles.push_back({-0.5, 3.5});
    const auto traj = step_ensemble(e, 0.01, 200);
    bool visited_right = false, visited_left = false;
    for (const auto& snap : traj.snapshots) {
        if (snap[0].x > 0.1) visited_right = true;
        if (snap[0].x < -0.1) visited_left = true;
    }
    CHECK(visited_right);
    CHECK(visited_left);
}

TEST_CASE("momentum magnitude is conserved bit-exactly along a busy trajectory") {
    ClassicalEnsemble e = make_box();
    e.particles.push_back({0.3, 0.7});
    e.particles.push_back({-0.2, -2.9});
    e.particles.push_back({0.1, 1.7});
    const auto traj = step_ensemble(e, 0.0917, 1000);
    for (const auto& snap : traj.snapshots) {
        CHECK(std::fabs(snap[0].p) == 0.7);
        CHECK(std::fabs(snap[1].p) == 2.9);
        CHECK(std::fabs(snap[2].p) == 1.7);
    }
}

TEST_CASE("asymptotic sorting of the two reference ensembles") {
    ClassicalEnsemble e = make_box(1.0, 3.0, 1.0);
    // slow ensemble in the first quadrant, fast ensemble in the third
    const int n1 = 40, n2 = 40;
    for (int i = 0; i < n1; ++i) {
        const double x = 0.05 + 0.9 * (i % 8) / 8.0;
        const double p = 0.05 + 0.9 * (i / 8) / (n1 / 8.0);
        e.particles.push_back({x, p});
    }
    for (int i = 0; i < n2; ++i) {
        const double x = -0.05 - 0.9 * (i % 8) / 8.0;
        const double p = -(1.05 + 1.8 * (i / 8) / (n2 / 8.0));
        e.particles.push_back({x, p});
    }
    // t >> x_L / p_min with p_min = 0.05
    const auto traj = step_ensemble(e, 0.5, 400);
    const auto s = occupancy(traj.snapshots.back(), e.P_R, e.P_UV);
    CHECK(s.slow_left == 1.0);
    CHECK(s.fast_right == 1.0);
    CHECK(s.temperature_right > s.temperature_left);
}

TEST_CASE("free flight preserves phase-space cell areas") {
    // a cell of initial conditions evolving without daemon events is a shear
    ClassicalEnsemble e = make_box(1.0, 3.0, 50.0);  // walls far away
    const double x0 = 4.0, p0 = 1.4, dx = 0.01, dp = 0.01;
    e.particles.push_back({x0, p0});
    e.particles.push_back({x0 + dx, p0});
    e.particles.push_back({x0 + dx, p0 + dp});
    e.particles.push_back({x0, p0 + dp});
    const auto traj = step_ensemble(e, 0.25, 40);
    const auto& c = traj.snapshots.back();
    double area = 0.0;  // shoelace over the evolved quadrilateral
    for (int i = 0; i < 4; ++i) {
        const auto& a = c[i];
        const auto& b = c[(i + 1) % 4];
        area += a.x * b.p - b.x * a.p;
    }
    area = 0.5 * std::fabs(area);
    CHECK(std::fabs(area - dx * dp) < 1e-9);
}

TEST_CASE("validation rejects particles outside the box and bad bands") {
    ClassicalEnsemble e = make_box();
    e.particles.push_back({2.0, 0.1});
    CHECK_THROWS_AS(e.validate(), ConfigError);
    ClassicalEnsemble f = make_box(2.0, 1.0);
    CHECK_THROWS_AS(f.validate(), ConfigError);
}
