#include <chrono>
#include <cstdio>
#include <cstring>

#include "uwit/geometry.hpp"
#include "uwit/reservoir.hpp"
#ifdef _OPENMP
#include <omp.h>
#endif

using namespace uwit;

namespace {
double now() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch()).count();
}
} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n\n", omp_get_max_threads());
#else
    std::printf("OpenMP not available, parallel policy runs serially\n\n");
#endif

    {
        const std::uint64_t n = 2000000, seed = 42;
        double t0 = now();
        FractionReport ser = sample_fractions(Vec3::Zero(), Vec3::Zero(), n, seed,
                                              ExecPolicy::serial);
        double ts = now() - t0;
        t0 = now();
        FractionReport par = sample_fractions(Vec3::Zero(), Vec3::Zero(), n, seed,
                                              ExecPolicy::parallel);
        double tp = now() - t0;
        const bool same = ser.n_physical == par.n_physical &&
                          ser.n_useful == par.n_useful && ser.n_neg_h == par.n_neg_h;
        std::printf("montecarlo n=%llu\n", static_cast<unsigned long long>(n));
        std::printf("  serial   %.3f s\n", ts);
        std::printf("  parallel %.3f s  (speedup %.2fx)\n", tp, ts / tp);
        std::printf("  counts identical: %s\n\n", same ? "yes" : "NO");
        if (!same) return 1;
    }

    {
        EwlSpec spec{Family::psi, 1.0, 0.70710678118654752440, 0.0};
        PTrajectory traj = lorentzian_trajectory({0.1, 0.8, 1.0}, 40.0, 0.002);
        double t0 = now();
        WitnessTrajectory ser = evolve(spec, traj, ExecPolicy::serial);
        double ts = now() - t0;
        t0 = now();
        WitnessTrajectory par = evolve(spec, traj, ExecPolicy::parallel);
        double tp = now() - t0;
        double maxdiff = 0.0;
        for (std::size_t i = 0; i < ser.reports.size(); ++i) {
            maxdiff = std::max(maxdiff, std::abs(ser.reports[i].te - par.reports[i].te));
            maxdiff = std::max(maxdiff, std::abs(ser.reports[i].me - par.reports[i].me));
            maxdiff = std::max(maxdiff, std::abs(ser.reports[i].fe - par.reports[i].fe));
        }
        std::printf("evolve %zu points\n", ser.reports.size());
        std::printf("  serial   %.3f s\n", ts);
        std::printf("  parallel %.3f s  (speedup %.2fx)\n", tp, ts / tp);
        std::printf("  max report difference: %g\n\n", maxdiff);
        if (maxdiff != 0.0) return 1;
    }

    {
        double t0 = now();
        PTrajectory traj = solve_volterra_p({3.0, 0.01, 2.0}, 30.0, 0.005);
        double ts = now() - t0;
        std::printf("volterra s=3 eta=0.01 omega_c=2 t_max=30\n");
        std::printf("  solve    %.3f s (converged internal step %g)\n", ts, traj.solver_step);
    }
    return 0;
}
