#include "uwit/state.hpp"
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uwit {

namespace {
const cplx I1(0.0, 1.0);

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }
} // namespace

const Mat2& pauli(int k) {
    static const Mat2 s1 = (Mat2() << 0, 1, 1, 0).finished();
    static const Mat2 s2 = (Mat2() << 0, -I1, I1, 0).finished();
    static const Mat2 s3 = (Mat2() << 1, 0, 0, -1).finished();
    switch (k) {
        case 1: return s1;
        case 2: return s2;
        case 3: return s3;
    }
    throw std::domain_error("pauli index must be 1, 2 or 3");
}

Mat4 kron(const Mat2& a, const Mat2& b) {
    Mat4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

Mat4 from_canonical(const CanonicalBloch& c) {
    for (int k = 0; k < 3; ++k)
        if (std::abs(c.r[k]) > 1.0 || std::abs(c.s[k]) > 1.0 || std::abs(c.v[k]) > 1.0)
            throw std::domain_error("canonical component outside [-1,1]");
    Mat4 rho = Mat4::Identity();
    const Mat2 id = Mat2::Identity();
    for (int k = 1; k <= 3; ++k) {
        rho += c.r[k - 1] * kron(pauli(k), id);
        rho += c.s[k - 1] * kron(id, pauli(k));
        rho += c.v[k - 1] * kron(pauli(k), pauli(k));
    }
    return rho / 4.0;
}

BlochDecomposition bloch_decompose(const Mat4& rho) {
    BlochDecomposition d;
    const Mat2 id = Mat2::Identity();
    for (int i = 1; i <= 3; ++i) {
        d.x[i - 1] = (rho * kron(pauli(i), id)).trace().real();
        d.y[i - 1] = (rho * kron(id, pauli(i))).trace().real();
        for (int j = 1; j <= 3; ++j)
            d.T(i - 1, j - 1) = (rho * kron(pauli(i), pauli(j))).trace().real();
    }
    return d;
}

double min_eigenvalue(const Mat4& rho) {
    Eigen::SelfAdjointEigenSolver<Mat4> es(rho, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

bool is_physical(const Mat4& rho, double tol) {
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
        throw std::domain_error("state is not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > 1e-9 || std::abs(rho.trace().imag()) > 1e-9)
        throw std::domain_error("state trace is not 1");
    return min_eigenvalue(rho) >= -tol;
}

Mat2 partial_trace(const Mat4& rho, Subsystem keep) {
    Mat2 out = Mat2::Zero();
    if (keep == Subsystem::A) {
        for (int b = 0; b < 2; ++b)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    out(i, j) += rho(2 * i + b, 2 * j + b);
    } else {
        for (int a = 0; a < 2; ++a)
            out += rho.block<2, 2>(2 * a, 2 * a);
    }
    return out;
}

double von_neumann_entropy(const Eigen::Ref<const Eigen::MatrixXcd>& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    double h = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        double lam = es.eigenvalues()(i);
        if (lam < -kPsdTol)
            throw std::domain_error("entropy of a non-positive matrix");
        h -= xlog2x(std::clamp(lam, 0.0, 1.0));
    }
    return h;
}

double conditional_entropy(const Mat4& rho) {
    return von_neumann_entropy(rho) - von_neumann_entropy(partial_trace(rho, Subsystem::B));
}

double distillable_lower_bound(const Mat4& rho) {
    return std::max(0.0, -conditional_entropy(rho));
}

double concurrence(const Mat4& rho) {
    static const Mat4 yy = kron(pauli(2), pauli(2));
    Mat4 R = rho * yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<Mat4> es(R, false);
    double mu[4];
    for (int i = 0; i < 4; ++i)
        mu[i] = std::sqrt(std::max(0.0, std::abs(es.eigenvalues()(i).real())));
    std::sort(mu, mu + 4, std::greater<double>());
    return std::max(0.0, mu[0] - mu[1] - mu[2] - mu[3]);
}

double teleportation_N(const Mat4& rho) {
    Eigen::Matrix3d t = bloch_decompose(rho).T;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es;
    es.computeDirect(t.transpose() * t, Eigen::EigenvaluesOnly);
    double n = 0.0;
    for (int i = 0; i < 3; ++i)
        n += std::sqrt(std::max(0.0, es.eigenvalues()(i)));
    return n;
}

double average_fidelity(const Mat4& rho) {
    return 0.5 + teleportation_N(rho) / 6.0;
}

double chsh_parameter(const Mat4& rho) {
    Eigen::Matrix3d t = bloch_decompose(rho).T;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es;
    es.computeDirect(t.transpose() * t, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(1) + es.eigenvalues()(2);
}

Mat4 ewl_state(const EwlSpec& spec) {
    if (spec.r < 0.0 || spec.r > 1.0)
        throw std::domain_error("purity weight outside [0,1]");
    if (spec.alpha < 0.0 || spec.alpha > 1.0)
        throw std::domain_error("alpha outside [0,1]");
    Eigen::Vector4cd ket = Eigen::Vector4cd::Zero();
    const cplx phase = std::exp(I1 * spec.theta) * std::sqrt(1.0 - spec.alpha * spec.alpha);
    if (spec.family == Family::psi) {
        ket(3) = spec.alpha;   // |00>
        ket(0) = phase;        // |11>
    } else {
        ket(1) = spec.alpha;   // |10>
        ket(2) = phase;        // |01>
    }
    return spec.r * (ket * ket.adjoint()) + (1.0 - spec.r) / 4.0 * Mat4::Identity();
}

Mat4 octahedron_vertex_state(const Vec3& vertex, double a) {
    if (std::abs(a) > 1.0)
        throw std::domain_error("local length outside [-1,1]");
    int axis = -1, sign = 0;
    for (int k = 0; k < 3; ++k) {
        if (vertex[k] == 0.0) continue;
        if (std::abs(vertex[k]) != 1.0 || axis >= 0)
            throw std::domain_error("vertex must be a signed unit basis vector");
        axis = k;
        sign = vertex[k] > 0 ? 1 : -1;
    }
    if (axis < 0)
        throw std::domain_error("vertex must be a signed unit basis vector");
    CanonicalBloch c;
    c.v = vertex;
    if (axis != 2) {
        c.r[axis] = a;
        c.s[axis] = sign * a;
    }
    return from_canonical(c);
}

} // namespace uwit
