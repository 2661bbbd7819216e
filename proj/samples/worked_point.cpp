// Minimal library usage: statistics of one operating point and the two
// independent routes to the noise-to-signal ratio.

#include <cstdio>

#include "relmachine/machine.hpp"
#include "relmachine/stochastic.hpp"

int main() {
    using namespace relmachine;

    // Qubit A moves at 0.8c through the hot bath, qubit B is at rest.
    const machine::MachineConfig cfg{
        .omega_A = 1.0,
        .omega_B = 0.55,
        .bath_A = detector::BathSpec{2.0},
        .bath_B = detector::BathSpec{1.0},
        .speed_A = 0.8,
        .speed_B = 0.0,
    };
    const auto point = machine::make_point(cfg);
    const auto stats = machine::cycle_statistics(point);
    const auto dist = stochastic::enumerate_distribution(point);

    std::printf("T_eff_A = %.6f   T_eff_B = %.6f\n", 1.0 / point.beta_eff_A(), 1.0 / point.beta_eff_B());
    std::printf("regime  = %s\n", machine::to_string(stats.regime).data());
    std::printf("<W>     = %+.6f   (enumerated %+.6f)\n", stats.mean_work, stochastic::moments(dist, 1, 0));
    std::printf("<Q_H>   = %+.6f   <Q_C> = %+.6f\n", stats.mean_heat_hot, stats.mean_heat_cold);
    std::printf("Sigma   = %.6f   <exp(-sigma)> = %.15f\n", stats.entropy_production,
                stochastic::check_integral_ft(dist));

    const auto tur = machine::tur_report(point);
    std::printf("SNR     = %.6f   2/Sigma = %.6f   2/Sigma-1 = %.6f   generalized = %.6f\n", tur.snr,
                tur.classical_rhs, tur.shifted_rhs, tur.generalized_rhs);
    return 0;
}
