// presets.hpp — run configurations shipped with the tool.  The same texts
// live as files under presets/; a test keeps the two in sync.

#pragma once

#include <map>
#include <string>

namespace qdaemon_cli {

inline const std::map<std::string, std::string>& presets() {
    static const std::map<std::string, std::string> table = {
        {"classical_sorting",
         "# two-quadrant ensembles sorted by the momentum gate\n"
         "P_R = 1.0\n"
         "P_UV = 3.0\n"
         "x_L = 1.0\n"
         "n_rho1 = 5000\n"
         "n_rho2 = 5000\n"
         "dt = 0.5\n"
         "n_steps = 1000\n"
         "snapshot_every = 100\n"},
        {"lattice_boltzmann",
         "# thermal-superposition run on the 249-site chain\n"
         "half_size = 124\n"
         "upsilon0 = 0.1\n"
         "kappa_R = pi/4\n"
         "kappa_D = pi\n"
         "initial_state = boltzmann\n"
         "beta = 0.01\n"
         "tau_max = 20000\n"
         "tau_steps = 2000\n"},
        {"lattice_uniform",
         "# uniform (isospectral) initial state on the 249-site chain\n"
         "half_size = 124\n"
         "upsilon0 = 0.1\n"
         "kappa_R = pi/4\n"
         "kappa_D = pi\n"
         "initial_state = uniform\n"
         "tau_max = 20000\n"
         "tau_steps = 2000\n"},
        {"lattice_beta_sweep",
         "# entropy traces across the order-parameter range\n"
         "half_size = 124\n"
         "upsilon0 = 0.1\n"
         "kappa_R = pi/4\n"
         "kappa_D = pi\n"
         "initial_state = boltzmann\n"
         "beta = 0.01\n"
         "beta_sweep = 0.5, 0.2, 0.1, 0.05, 0.02, 0.01, 0.005\n"
         "tau_max = 20000\n"
         "tau_steps = 1000\n"},
        {"greens_box",
         "# daemon resolvent in the box, reference momentum a = 20.5 pi\n"
         "L = 2.0\n"
         "M = 2000\n"
         "P_R = 20.5pi\n"
         "eta = 1e-6\n"
         "coupling = 1.0\n"
         "mode = daemon\n"
         "x_points = 9\n"
         "e_lo = 0.5\n"
         "e_hi = 120.0\n"
         "e_points = 24\n"},
        {"greens_delta",
         "# local-delta degeneration with the in-run dual evaluation\n"
         "L = 2.0\n"
         "M = 1200\n"
         "P_R = 3.0\n"
         "eta = 1e-6\n"
         "mode = delta\n"
         "V0 = 0.8\n"
         "x_points = 7\n"
         "e_lo = 0.5\n"
         "e_hi = 12.0\n"
         "e_points = 10\n"},
        {"epsilon_daemon",
         "# inverse dielectric sweep, omega/c from pi to 40pi, reference 16pi\n"
         "omega_min = pi\n"
         "omega_max = 40pi\n"
         "omega_count = 40\n"
         "omega_R_over_c = 16pi\n"
         "mu_r = 1.0\n"
         "eps0_re = 2.0\n"
         "eps0_im = 0.0\n"
         "deps0_re = 1.0\n"
         "deps0_im = 0.0\n"
         "x_half = 1.0\n"
         "x_points = 21\n"
         "step = 1e-3\n"
         "harmonic_compare = true\n"},
        {"epsilon_daemon_alt",
         "# alternative initial slope preset\n"
         "omega_min = pi\n"
         "omega_max = 40pi\n"
         "omega_count = 40\n"
         "omega_R_over_c = 16pi\n"
         "mu_r = 1.0\n"
         "eps0_re = 2.0\n"
         "eps0_im = 0.0\n"
         "deps0_re = 2.0\n"
         "deps0_im = 0.0\n"
         "x_half = 1.0\n"
         "x_points = 21\n"
         "step = 1e-3\n"},
        {"epsilon_vacuum",
         "# vacuum fixed point\n"
         "omega_min = 2pi\n"
         "omega_max = 2pi\n"
         "omega_count = 1\n"
         "omega_R_over_c = 16pi\n"
         "mu_r = 1.0\n"
         "eps0_re = 1.0\n"
         "eps0_im = 0.0\n"
         "deps0_re = 0.0\n"
         "deps0_im = 0.0\n"
         "x_half = 1.0\n"
         "x_points = 21\n"},
        {"em_reference_modes",
         "# thirteen-curtain reference stack, refined mode table\n"
         "L = 12.0\n"
         "b = 0.12\n"
         "mu_r = 1.0\n"
         "xi2 = 0.0\n"
         "n_modes = 12\n"
         "omega_p = 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3\n"
         "omega_0 = 0.48, 0.60, 0.72, 0.84, 0.96, 1.08, 1.20, 1.08, 0.96, 0.84, 0.72, 0.60, 0.48\n"
         "gamma = 0.020, 0.025, 0.030, 0.035, 0.040, 0.045, 0.050, 0.045, 0.040, 0.035, 0.030, 0.025, 0.020\n"
         "refinement = full\n"
         "field = false\n"},
        {"em_reference_field",
         "# thirteen-curtain reference stack, field carpet from the algebraic modes\n"
         "L = 12.0\n"
         "b = 0.12\n"
         "mu_r = 1.0\n"
         "xi2 = 0.0\n"
         "n_modes = 12\n"
         "omega_p = 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3\n"
         "omega_0 = 0.48, 0.60, 0.72, 0.84, 0.96, 1.08, 1.20, 1.08, 0.96, 0.84, 0.72, 0.60, 0.48\n"
         "gamma = 0.020, 0.025, 0.030, 0.035, 0.040, 0.045, 0.050, 0.045, 0.040, 0.035, 0.030, 0.025, 0.020\n"
         "refinement = algebraic\n"
         "field = true\n"
         "b_init = 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0\n"
         "tau_min = 0.0\n"
         "tau_max = 30.0\n"
         "tau_steps = 301\n"
         "x_points = 241\n"},
        {"em_empty",
         "# bare cavity regression\n"
         "L = 12.0\n"
         "n_bilayers = 0\n"
         "n_modes = 6\n"
         "refinement = full\n"
         "field = false\n"},
    };
    return table;
}

} // namespace qdaemon_cli
