#include "uwit/reservoir.hpp"
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace uwit {

namespace {
const cplx I1(0.0, 1.0);

bool near_int(double x) { return std::abs(x - std::round(x)) < 1e-12; }

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

cplx ipow(cplx z, int n) {
    cplx out = 1.0;
    for (int k = 0; k < n; ++k) out *= z;
    return out;
}
} // namespace

cplx ohmic_kernel(const OhmicClass& m, double x) {
    if (m.eta < 0.0 || m.omega_c <= 0.0)
        throw std::domain_error("coupling must be >= 0 and cutoff > 0");
    if (std::abs(m.s - 0.5) < 1e-12) {
        const double w = 1.5 * std::atan(m.omega_c * x);
        const double den = 2.0 * std::pow(1.0 + m.omega_c * m.omega_c * x * x, 0.75);
        return m.eta * m.omega_c * m.omega_c * std::sqrt(M_PI) *
               std::polar(1.0, -w) / den;
    }
    if (m.s >= 1.0 && near_int(m.s)) {
        const int s = static_cast<int>(std::round(m.s));
        return m.eta * factorial(s) * m.omega_c * m.omega_c /
               ipow(1.0 + I1 * m.omega_c * x, s + 1);
    }
    throw std::domain_error("exponent must be 1/2 or a positive integer");
}

cplx lorentzian_p(const Lorentzian& m, double t) {
    if (t < 0.0)
        throw std::domain_error("negative time");
    const cplx l(m.lambda, -m.delta);
    const cplx d2 = l * l - 2.0 * m.gamma0 * m.lambda;
    const cplx d = std::sqrt(d2);
    if (std::abs(d) * t < 2e-4) {
        // cosh(dt/2) + (l/d) sinh(dt/2) expanded through (dt/2)^2
        const cplx x2 = d2 * t * t / 4.0;
        return std::exp(-0.5 * l * t) *
               (1.0 + x2 / 2.0 + 0.5 * l * t * (1.0 + x2 / 6.0));
    }
    const cplx w = l / d;
    return 0.5 * (1.0 + w) * std::exp(0.5 * (d - l) * t) +
           0.5 * (1.0 - w) * std::exp(0.5 * (-d - l) * t);
}

std::vector<cplx> solve_volterra_kernel(const std::function<cplx(double)>& g,
                                        double t_max, double h) {
    if (t_max <= 0.0 || h <= 0.0)
        throw std::domain_error("time span and step must be positive");
    const std::size_t n = static_cast<std::size_t>(std::llround(t_max / h));
    if (n < 1)
        throw std::domain_error("step larger than time span");

    static const double glx[8] = {
        -0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
        -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
        0.7966664774136267,  0.9602898564975363};
    static const double glw[8] = {
        0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
        0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
        0.2223810344533745, 0.1012285362903763};

    // A_k = int_0^h g(kh+x)(1-x/h) dx, B_k = int_0^h g(kh+x)(x/h) dx.
    // Convolution weights: c_0 = A_0, c_i = A_i + B_{i-1}; tail B_j q(0).
    std::vector<double> ar(n), ai(n), br(n), bi(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double base = static_cast<double>(k) * h;
        double sar = 0, sai = 0, sbr = 0, sbi = 0;
        for (int q = 0; q < 8; ++q) {
            const double x = 0.5 * h * (glx[q] + 1.0);
            const double w = 0.5 * h * glw[q];
            const cplx gv = g(base + x);
            const double wa = w * (1.0 - x / h), wb = w * (x / h);
            sar += wa * gv.real();
            sai += wa * gv.imag();
            sbr += wb * gv.real();
            sbi += wb * gv.imag();
        }
        ar[k] = sar; ai[k] = sai; br[k] = sbr; bi[k] = sbi;
    }
    std::vector<double> cr(n), ci(n);
    cr[0] = ar[0];
    ci[0] = ai[0];
    for (std::size_t i = 1; i < n; ++i) {
        cr[i] = ar[i] + br[i - 1];
        ci[i] = ai[i] + bi[i - 1];
    }

    // Trapezoidal step on q' = F, F_j = -(c * q)_j; the implicit c_0 q_{j+1}
    // piece is folded into the denominator. q is also kept reversed so the
    // history sum runs over two contiguous ascending ranges.
    std::vector<cplx> q(n + 1), f(n + 1);
    std::vector<double> qrr(n + 1), qri(n + 1);
    q[0] = 1.0;
    f[0] = 0.0;
    qrr[n] = 1.0;
    qri[n] = 0.0;
    const cplx a0(ar[0], ai[0]);
    const cplx den = 1.0 + 0.5 * h * a0;
    const double* __restrict pcr = cr.data();
    const double* __restrict pci = ci.data();
    double* __restrict pqr = qrr.data();
    double* __restrict pqi = qri.data();
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t b = n - j - 1;
        double accr = br[j], acci = bi[j];
        for (std::size_t i = 1; i <= j; ++i) {
            const double xr = pqr[b + i], xi = pqi[b + i];
            accr += pcr[i] * xr - pci[i] * xi;
            acci += pcr[i] * xi + pci[i] * xr;
        }
        const cplx ft(-accr, -acci);
        const cplx qn = (q[j] + 0.5 * h * (f[j] + ft)) / den;
        q[j + 1] = qn;
        f[j + 1] = ft - a0 * qn;
        pqr[b] = qn.real();
        pqi[b] = qn.imag();
    }
    if (!std::isfinite(std::abs(q[n])))
        throw std::runtime_error("amplitude solver produced non-finite values");
    return q;
}

PTrajectory solve_volterra_p(const OhmicClass& m, double t_max, double step,
                             double conv_tol, int max_halvings) {
    if (t_max <= 0.0 || step <= 0.0)
        throw std::domain_error("time span and step must be positive");
    const std::size_t n_out = static_cast<std::size_t>(std::llround(t_max / step));
    if (n_out < 2)
        throw std::domain_error("fewer than two output steps");
    const double span = static_cast<double>(n_out) * step;

    auto g = [&m](double x) { return ohmic_kernel(m, x) * std::polar(1.0, x); };

    double h = step;
    std::vector<cplx> prev = solve_volterra_kernel(g, span, h);
    double diff = 0.0;
    for (int iter = 0; iter < max_halvings; ++iter) {
        const double hf = 0.5 * h;
        if (span / hf > 2e6)
            break;
        std::vector<cplx> cur = solve_volterra_kernel(g, span, hf);
        diff = 0.0;
        for (std::size_t k = 0; k < prev.size(); ++k)
            diff = std::max(diff, std::abs(prev[k] - cur[2 * k]));
        h = hf;
        prev = std::move(cur);
        if (diff < conv_tol) {
            PTrajectory traj;
            traj.frame = Frame::lab;
            traj.step = step;
            traj.solver_step = h;
            traj.model = m;
            const std::size_t stride = static_cast<std::size_t>(std::llround(step / h));
            traj.times.resize(n_out + 1);
            traj.p.resize(n_out + 1);
            for (std::size_t k = 0; k <= n_out; ++k) {
                const double t = static_cast<double>(k) * step;
                traj.times[k] = t;
                traj.p[k] = prev[k * stride] * std::polar(1.0, -t);
            }
            return traj;
        }
    }
    std::ostringstream msg;
    msg << "amplitude solver did not converge: max-norm change " << diff
        << " at internal step " << h << " (tolerance " << conv_tol << ")";
    throw std::runtime_error(msg.str());
}

PTrajectory lorentzian_trajectory(const Lorentzian& m, double t_max, double step) {
    if (t_max <= 0.0 || step <= 0.0)
        throw std::domain_error("time span and step must be positive");
    const std::size_t n_out = static_cast<std::size_t>(std::llround(t_max / step));
    if (n_out < 2)
        throw std::domain_error("fewer than two output steps");
    PTrajectory traj;
    traj.frame = Frame::rotating;
    traj.step = step;
    traj.solver_step = step;
    traj.model = m;
    traj.times.resize(n_out + 1);
    traj.p.resize(n_out + 1);
    for (std::size_t k = 0; k <= n_out; ++k) {
        traj.times[k] = static_cast<double>(k) * step;
        traj.p[k] = lorentzian_p(m, traj.times[k]);
    }
    return traj;
}

Mat4 apply_channel(const Mat4& rho, cplx p) {
    const double ap = std::abs(p);
    if (ap > 1.0 + 1e-12)
        throw std::domain_error("amplitude magnitude above 1");
    Mat2 e0 = Mat2::Zero(), e1 = Mat2::Zero();
    e0(0, 0) = p;
    e0(1, 1) = 1.0;
    e1(1, 0) = std::sqrt(std::max(0.0, 1.0 - ap * ap));
    const Mat4 k[4] = {kron(e0, e0), kron(e0, e1), kron(e1, e0), kron(e1, e1)};
    Mat4 out = Mat4::Zero();
    for (const auto& m : k)
        out += m * rho * m.adjoint();
    return out;
}

cplx p_at(const PTrajectory& traj, double t) {
    const double t_end = traj.times.back();
    if (t < -1e-9 || t > t_end + 1e-9)
        throw std::domain_error("time outside the trajectory span");
    t = std::clamp(t, 0.0, t_end);
    if (const auto* lor = std::get_if<Lorentzian>(&traj.model))
        return lorentzian_p(*lor, t);
    // lab-frame solver output: interpolate the smooth rotating-frame amplitude
    const std::size_t n = traj.times.size() - 1;
    std::size_t i = std::min(static_cast<std::size_t>(t / traj.step), n - 1);
    const double u = (t - traj.times[i]) / traj.step;
    const cplx qa = traj.p[i] * std::polar(1.0, traj.times[i]);
    const cplx qb = traj.p[i + 1] * std::polar(1.0, traj.times[i + 1]);
    return ((1.0 - u) * qa + u * qb) * std::polar(1.0, -t);
}

const char* to_string(Estimator e) {
    switch (e) {
        case Estimator::te: return "te";
        case Estimator::me: return "me";
        case Estimator::fe: return "fe";
    }
    return "?";
}

double estimate_of(const Mat4& rho, Estimator e) {
    switch (e) {
        case Estimator::te: return tomographic_estimate(rho, sigma1(), sigma3());
        case Estimator::me: return measurement_estimate(rho, sigma1(), sigma3());
        case Estimator::fe: return fano_estimate(rho, sigma1(), sigma3());
    }
    throw std::domain_error("unknown estimator");
}

WitnessTrajectory evolve(const EwlSpec& initial, PTrajectory ptraj, ExecPolicy policy) {
    WitnessTrajectory wt;
    wt.initial = initial;
    wt.ptraj = std::move(ptraj);
    const Mat4 rho0 = ewl_state(initial);
    const std::size_t n = wt.ptraj.p.size();
    wt.reports.resize(n);
    const bool par = policy == ExecPolicy::parallel;
#pragma omp parallel for schedule(static) if (par)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
        wt.reports[i] = witness_report(apply_channel(rho0, wt.ptraj.p[i]));
    return wt;
}

namespace {

double report_estimate(const UncertaintyReport& r, Estimator e) {
    switch (e) {
        case Estimator::te: return r.te;
        case Estimator::me: return r.me;
        case Estimator::fe: return r.fe;
    }
    return 0.0;
}

bool is_witnessed(double est) { return est < 1.0 - 1e-9; }

} // namespace

std::vector<WitnessInterval> witness_intervals(const WitnessTrajectory& wt, Estimator e) {
    const auto& times = wt.ptraj.times;
    const std::size_t n = times.size();
    if (n < 2 || wt.reports.size() != n)
        throw std::domain_error("trajectory has no evaluated reports");
    const Mat4 rho0 = ewl_state(wt.initial);
    auto est_at = [&](double t) {
        return estimate_of(apply_channel(rho0, p_at(wt.ptraj, t)), e);
    };
    auto conc_at = [&](double t) {
        return concurrence(apply_channel(rho0, p_at(wt.ptraj, t)));
    };
    // boundary between a non-witnessed point a and a witnessed point b
    auto refine = [&](double a, double b) {
        while (std::abs(b - a) > 1e-6) {
            const double m = 0.5 * (a + b);
            if (is_witnessed(est_at(m)))
                b = m;
            else
                a = m;
        }
        return 0.5 * (a + b);
    };

    std::vector<WitnessInterval> out;
    std::size_t i = 0;
    while (i < n) {
        if (!is_witnessed(report_estimate(wt.reports[i], e))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < n && is_witnessed(report_estimate(wt.reports[j + 1], e)))
            ++j;
        WitnessInterval w;
        w.t_lo = (i == 0) ? times[0] : refine(times[i - 1], times[i]);
        if (j + 1 < n) {
            w.t_hi = refine(times[j + 1], times[j]);
            w.open_end = false;
        } else {
            w.t_hi = times[j];
            w.open_end = true;
        }
        double c_lo = std::min(conc_at(w.t_lo), conc_at(w.t_hi));
        double c_hi = std::max(conc_at(w.t_lo), conc_at(w.t_hi));
        for (std::size_t k = i; k <= j; ++k) {
            c_lo = std::min(c_lo, wt.reports[k].concurrence);
            c_hi = std::max(c_hi, wt.reports[k].concurrence);
        }
        w.c_lo = c_lo;
        w.c_hi = c_hi;
        out.push_back(w);
        i = j + 1;
    }
    return out;
}

CriticalTime critical_time(const WitnessTrajectory& wt, Estimator e) {
    const auto intervals = witness_intervals(wt, e);
    if (intervals.empty())
        return {CrossStatus::never_witnessed, 0.0};
    const auto& last = intervals.back();
    if (last.open_end)
        return {CrossStatus::witnessed_at_end, wt.ptraj.times.back()};
    return {CrossStatus::crossed, last.t_hi};
}

CriticalP critical_p(const EwlSpec& initial, Estimator e) {
    const Mat4 rho0 = ewl_state(initial);
    auto est = [&](double p) {
        return estimate_of(apply_channel(rho0, cplx(p, 0.0)), e);
    };
    const int grid = 2000;
    std::vector<double> vals(grid + 1);
    for (int i = 0; i <= grid; ++i)
        vals[i] = est(static_cast<double>(i) / grid);

    int last = -1;
    for (int i = 0; i < grid; ++i)
        if (!is_witnessed(vals[i]) && is_witnessed(vals[i + 1]))
            last = i;
    CriticalP out;
    if (last < 0) {
        out.status = is_witnessed(vals[grid]) ? PcStatus::always_witnessed
                                              : PcStatus::never_witnessed;
        out.pc = 0.0;
        out.c_lo = out.status == PcStatus::always_witnessed
                       ? concurrence(apply_channel(rho0, cplx(0.0, 0.0)))
                       : 0.0;
        out.c_hi = out.status == PcStatus::always_witnessed ? concurrence(rho0) : 0.0;
        return out;
    }
    double a = static_cast<double>(last) / grid;       // not witnessed
    double b = static_cast<double>(last + 1) / grid;   // witnessed
    while (b - a > 1e-6) {
        const double m = 0.5 * (a + b);
        if (is_witnessed(est(m)))
            b = m;
        else
            a = m;
    }
    out.status = PcStatus::crossed;
    out.pc = 0.5 * (a + b);
    out.c_lo = concurrence(apply_channel(rho0, cplx(out.pc, 0.0)));
    out.c_hi = concurrence(rho0);
    return out;
}

} // namespace uwit
