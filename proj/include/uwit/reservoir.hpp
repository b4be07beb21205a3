#pragma once
#include <functional>
#include <variant>
#include <vector>
#include "uncertainty.hpp"
#include "exec.hpp"

namespace uwit {

// Units: omega0 = 1 for Ohmic-class models, gamma0 = 1 for Lorentzian.

// J(w) = eta w^s wc^{1-s} e^{-w/wc}; s in {1/2, 1, 2, 3, ...}
struct OhmicClass {
    double s = 1.0;
    double eta = 0.01;
    double omega_c = 2.0;
};

// J(w) = gamma0 lambda^2 / (2 pi [ (w - w0 + delta)^2 + lambda^2 ])
struct Lorentzian {
    double lambda = 0.1;
    double delta = 0.0;
    double gamma0 = 1.0;
};

using SpectralModel = std::variant<OhmicClass, Lorentzian>;

enum class Frame { lab, rotating };

struct PTrajectory {
    std::vector<double> times;
    std::vector<cplx> p;
    Frame frame = Frame::lab;
    double step = 0.0;
    double solver_step = 0.0;   // internal grid the solver converged on
    SpectralModel model;
};

// Lab-frame reservoir correlation f(x); rotating-frame kernel is f(x) e^{i x}.
cplx ohmic_kernel(const OhmicClass& m, double x);

// Analytic amplitude for the Lorentzian model, overflow-safe for large t,
// series fallback near the critical-damping point d = 0.
cplx lorentzian_p(const Lorentzian& m, double t);

// q' = -(g * q), q(0) = 1, product-integration rule with exact per-cell
// kernel moments and trapezoidal stepping. Returns q on the grid k*h.
std::vector<cplx> solve_volterra_kernel(const std::function<cplx(double)>& g,
                                        double t_max, double h);

// p' + i p + (f * p) = 0 solved in the rotating frame, internal step halved
// from `step` until the max-norm change is below conv_tol; throws
// std::runtime_error with diagnostics when the ladder is exhausted.
PTrajectory solve_volterra_p(const OhmicClass& m, double t_max, double step,
                             double conv_tol = 1e-6, int max_halvings = 8);

PTrajectory lorentzian_trajectory(const Lorentzian& m, double t_max, double step);

// Amplitude-damping pair: E0 = [[p,0],[0,1]], E1 = [[0,0],[sqrt(1-|p|^2),0]]
// applied as E_i x E_j on both qubits. Requires |p| <= 1.
Mat4 apply_channel(const Mat4& rho, cplx p);

// Amplitude between grid points: analytic for Lorentzian, linear
// interpolation of the rotating-frame amplitude for solver output.
cplx p_at(const PTrajectory& traj, double t);

enum class Estimator { te, me, fe };
const char* to_string(Estimator e);
double estimate_of(const Mat4& rho, Estimator e);

struct WitnessTrajectory {
    EwlSpec initial;
    PTrajectory ptraj;
    std::vector<UncertaintyReport> reports;
};

WitnessTrajectory evolve(const EwlSpec& initial, PTrajectory ptraj,
                         ExecPolicy policy = ExecPolicy::parallel);

struct WitnessInterval {
    double t_lo = 0, t_hi = 0;
    double c_lo = 0, c_hi = 0;  // concurrence range attained on the interval
    bool open_end = false;      // still witnessed at the end of the trajectory
};

// Maximal contiguous regions with estimate < 1, boundaries refined by
// bisection to 1e-6 in t.
std::vector<WitnessInterval> witness_intervals(const WitnessTrajectory& wt, Estimator e);

enum class CrossStatus { crossed, never_witnessed, witnessed_at_end };

struct CriticalTime {
    CrossStatus status = CrossStatus::never_witnessed;
    double t = 0;               // last crossing of 1 from below to above
};

CriticalTime critical_time(const WitnessTrajectory& wt, Estimator e);

enum class PcStatus { crossed, never_witnessed, always_witnessed };

struct CriticalP {
    PcStatus status = PcStatus::never_witnessed;
    double pc = 0;
    double c_lo = 0, c_hi = 0;  // witnessed concurrence region [C(pc), C(1)]
};

// Real p swept over [0,1]; last crossing of estimate = 1, bisected to 1e-6.
CriticalP critical_p(const EwlSpec& initial, Estimator e);

} // namespace uwit
