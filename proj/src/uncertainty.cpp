#include "uwit/uncertainty.hpp"
#include <cmath>
#include <stdexcept>

namespace uwit {

namespace {
double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

Mat4 embed_a(const Mat2& m) { return kron(m, Mat2::Identity()); }
Mat4 embed_b(const Mat2& m) { return kron(Mat2::Identity(), m); }
} // namespace

Observable make_observable(const Mat2& m) {
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
        throw std::domain_error("observable is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat2> es(m);
    if (es.eigenvalues()(1) - es.eigenvalues()(0) < 1e-9)
        throw std::domain_error("observable spectrum is degenerate");
    Observable o;
    o.matrix = m;
    o.eigenvalues << es.eigenvalues()(1), es.eigenvalues()(0);
    o.eigenvectors.col(0) = es.eigenvectors().col(1);
    o.eigenvectors.col(1) = es.eigenvectors().col(0);
    return o;
}

const Observable& sigma1() {
    static const Observable o = [] {
        Observable s;
        s.matrix = pauli(1);
        s.eigenvalues << 1, -1;
        const double q = 1.0 / std::sqrt(2.0);
        s.eigenvectors << q, -q, q, q;   // (|1>+|0>)/sqrt2, (|0>-|1>)/sqrt2
        return s;
    }();
    return o;
}

const Observable& sigma3() {
    static const Observable o = [] {
        Observable s;
        s.matrix = pauli(3);
        s.eigenvalues << 1, -1;
        s.eigenvectors = Mat2::Identity();
        return s;
    }();
    return o;
}

double complementarity(const Observable& R, const Observable& S) {
    double c = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            c = std::max(c, std::norm(R.eigenvectors.col(i).dot(S.eigenvectors.col(j))));
    return c;
}

double binary_entropy(double p) {
    if (p < -1e-12 || p > 1.0 + 1e-12)
        throw std::domain_error("probability outside [0,1]");
    p = std::clamp(p, 0.0, 1.0);
    const double h = -xlog2x(p) - xlog2x(1.0 - p);
    return h == 0.0 ? 0.0 : h;
}

Mat4 postmeasure_cq(const Mat4& rho, const Observable& obs) {
    Mat4 out = Mat4::Zero();
    for (int r = 0; r < 2; ++r) {
        Mat2 proj = obs.eigenvectors.col(r) * obs.eigenvectors.col(r).adjoint();
        Mat4 pa = embed_a(proj);
        out += pa * rho * pa;
    }
    return out;
}

double conditional_on_memory(const Mat4& rho, const Observable& obs) {
    return von_neumann_entropy(postmeasure_cq(rho, obs)) -
           von_neumann_entropy(partial_trace(rho, Subsystem::B));
}

double tomographic_estimate(const Mat4& rho, const Observable& R, const Observable& S) {
    return conditional_on_memory(rho, R) + conditional_on_memory(rho, S);
}

double berta_bound(const Mat4& rho, const Observable& R, const Observable& S) {
    return std::log2(1.0 / complementarity(R, S)) + conditional_entropy(rho);
}

Eigen::Matrix2d joint_outcome_distribution(const Mat4& rho, const Observable& obs) {
    Eigen::Matrix2d t;
    for (int a = 0; a < 2; ++a) {
        Mat2 pa = obs.eigenvectors.col(a) * obs.eigenvectors.col(a).adjoint();
        for (int b = 0; b < 2; ++b) {
            Mat2 pb = obs.eigenvectors.col(b) * obs.eigenvectors.col(b).adjoint();
            t(a, b) = (kron(pa, pb) * rho).trace().real();
        }
    }
    return t;
}

namespace {
double table_cond_entropy(const Eigen::Matrix2d& t) {
    double h_joint = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            h_joint -= xlog2x(std::max(0.0, t(a, b)));
    double h_b = 0.0;
    for (int b = 0; b < 2; ++b)
        h_b -= xlog2x(std::max(0.0, t(0, b) + t(1, b)));
    return h_joint - h_b;
}
} // namespace

double measurement_estimate(const Mat4& rho, const Observable& R, const Observable& S) {
    return table_cond_entropy(joint_outcome_distribution(rho, R)) +
           table_cond_entropy(joint_outcome_distribution(rho, S));
}

double fano_estimate(const Mat4& rho, const Observable& R, const Observable& S) {
    const Eigen::Matrix2d tr = joint_outcome_distribution(rho, R);
    const Eigen::Matrix2d ts = joint_outcome_distribution(rho, S);
    return binary_entropy(std::clamp(tr(0, 1) + tr(1, 0), 0.0, 1.0)) +
           binary_entropy(std::clamp(ts(0, 1) + ts(1, 0), 0.0, 1.0));
}

UncertaintyReport witness_report(const Mat4& rho) {
    const Observable& R = sigma1();
    const Observable& S = sigma3();
    UncertaintyReport rep;
    rep.te = tomographic_estimate(rho, R, S);
    rep.me = measurement_estimate(rho, R, S);
    rep.fe = fano_estimate(rho, R, S);
    rep.cond_entropy = conditional_entropy(rho);
    rep.bb = 1.0 + rep.cond_entropy;
    rep.concurrence = concurrence(rho);
    rep.tele_n = teleportation_N(rho);
    rep.avg_fidelity = 0.5 + rep.tele_n / 6.0;
    rep.chsh = chsh_parameter(rho);
    auto wit = [](double est) { return est < 1.0 - 1e-9; };
    rep.witnessed = {wit(rep.te), wit(rep.me), wit(rep.fe), wit(rep.bb)};
    return rep;
}

} // namespace uwit
