#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include "uwit/geometry.hpp"
#include "uwit/state.hpp"
#include "test_util.hpp"

using namespace uwit;

namespace {

using Vec4c = Eigen::Vector4cd;

Vec4c ket(int i) {
    Vec4c v = Vec4c::Zero();
    v(i) = 1.0;
    return v;
}

Mat4 bell_psi_minus() {
    // (|01> - |10>)/sqrt(2), basis order {11,10,01,00}
    Vec4c v = (ket(2) - ket(1)) / std::sqrt(2.0);
    return v * v.adjoint();
}

Mat4 bell_phi_plus() {
    Vec4c v = (ket(0) + ket(3)) / std::sqrt(2.0);
    return v * v.adjoint();
}

std::array<double, 4> bell_diag_eigs(const Vec3& v) {
    return {(1 + v[0] - v[1] + v[2]) / 4, (1 - v[0] + v[1] + v[2]) / 4,
            (1 + v[0] + v[1] - v[2]) / 4, (1 - v[0] - v[1] - v[2]) / 4};
}

} // namespace

TEST_CASE("pauli algebra") {
    for (int k = 1; k <= 3; ++k) {
        const Mat2 s = pauli(k);
        CHECK((s * s - Mat2::Identity()).norm() < 1e-15);
        CHECK(std::abs(s.trace()) < 1e-15);
        CHECK((s - s.adjoint()).norm() < 1e-15);
    }
    const Mat2 prod = pauli(1) * pauli(2);
    CHECK((prod - cplx(0, 1) * pauli(3)).norm() < 1e-15);
    CHECK_THROWS_AS(pauli(0), std::domain_error);
    CHECK_THROWS_AS(pauli(4), std::domain_error);
}

TEST_CASE("kron block layout") {
    Mat2 a, b;
    a << 1, 2, 3, 4;
    b << 5, 6, 7, 8;
    const Mat4 k = kron(a, b);
    CHECK(k(0, 0).real() == doctest::Approx(5));
    CHECK(k(0, 2).real() == doctest::Approx(10));
    CHECK(k(2, 0).real() == doctest::Approx(15));
    CHECK(k(3, 3).real() == doctest::Approx(32));
}

TEST_CASE("from_canonical basics") {
    const Vec3 z{0, 0, 0};
    CHECK((from_canonical({z, z, z}) - Mat4::Identity() / 4.0).norm() < 1e-15);

    CHECK_THROWS_AS(from_canonical({{1.5, 0, 0}, z, z}), std::domain_error);
    CHECK_THROWS_AS(from_canonical({z, z, {0, 0, -1.01}}), std::domain_error);

    // v = (-1,-1,-1) is the singlet projector
    const Mat4 rho = from_canonical({z, z, {-1, -1, -1}});
    CHECK((rho - bell_psi_minus()).norm() < 1e-12);
}

TEST_CASE("Bell-diagonal spectrum formula") {
    const std::uint64_t seed = 7;
    int tested = 0;
    for (std::uint64_t i = 0; tested < 50 && i < 4000; ++i) {
        const Vec3 v = tu::random_cube(seed, i);
        if (!in_tetrahedron(v)) continue;
        ++tested;
        const Mat4 rho = from_canonical({{0, 0, 0}, {0, 0, 0}, v});
        Eigen::SelfAdjointEigenSolver<Mat4> es(rho);
        auto want = bell_diag_eigs(v);
        std::sort(want.begin(), want.end());
        for (int k = 0; k < 4; ++k)
            CHECK(es.eigenvalues()(k) == doctest::Approx(want[k]).epsilon(1e-12));
    }
    CHECK(tested == 50);
}

TEST_CASE("bloch_decompose") {
    const auto d0 = bloch_decompose(Mat4::Identity() / 4.0);
    CHECK(d0.x.norm() < 1e-15);
    CHECK(d0.y.norm() < 1e-15);
    CHECK(d0.T.norm() < 1e-15);

    const Vec3 r{0.1, -0.2, 0.3}, s{0.05, 0.0, -0.1}, v{0.4, -0.5, 0.2};
    const auto d = bloch_decompose(from_canonical({r, s, v}));
    for (int k = 0; k < 3; ++k) {
        CHECK(d.x[k] == doctest::Approx(r[k]).epsilon(1e-12));
        CHECK(d.y[k] == doctest::Approx(s[k]).epsilon(1e-12));
        CHECK(d.T(k, k) == doctest::Approx(v[k]).epsilon(1e-12));
        for (int l = 0; l < 3; ++l)
            if (l != k) CHECK(std::abs(d.T(k, l)) < 1e-12);
    }

    // maximally entangled psi (alpha=1/sqrt(2), theta=0): T = diag(1,-1,1)
    const auto de = bloch_decompose(ewl_state({Family::psi, 1.0, 1.0 / std::sqrt(2.0), 0.0}));
    CHECK(de.T(0, 0) == doctest::Approx(1).epsilon(1e-12));
    CHECK(de.T(1, 1) == doctest::Approx(-1).epsilon(1e-12));
    CHECK(de.T(2, 2) == doctest::Approx(1).epsilon(1e-12));
}

TEST_CASE("bloch reconstruction closes on random states") {
    const std::uint64_t seed = 11;
    for (std::uint64_t i = 0; i < 40; ++i) {
        const Mat4 rho = tu::random_physical(seed, i);
        const auto d = bloch_decompose(rho);
        Mat4 rebuilt = Mat4::Identity();
        const Mat2 id = Mat2::Identity();
        for (int k = 0; k < 3; ++k) {
            rebuilt += d.x[k] * kron(pauli(k + 1), id);
            rebuilt += d.y[k] * kron(id, pauli(k + 1));
            for (int l = 0; l < 3; ++l)
                rebuilt += d.T(k, l) * kron(pauli(k + 1), pauli(l + 1));
        }
        rebuilt /= 4.0;
        CHECK((rebuilt - rho).norm() < 1e-12);
    }
}

TEST_CASE("is_physical") {
    CHECK(is_physical(Mat4::Identity() / 4.0));
    CHECK(is_physical(bell_psi_minus()));
    CHECK_FALSE(is_physical(from_canonical({{0, 0, 0}, {0, 0, 0}, {1, 1, 1}})));

    Mat4 bad = Mat4::Identity() / 4.0;
    bad(0, 1) = cplx(0.1, 0.0); // not matched at (1,0)
    CHECK_THROWS_AS(is_physical(bad), std::domain_error);

    Mat4 tr = Mat4::Identity() / 2.0;
    CHECK_THROWS_AS(is_physical(tr), std::domain_error);

    CHECK(min_eigenvalue(bell_psi_minus()) == doctest::Approx(0).epsilon(1e-12));
}

TEST_CASE("partial_trace") {
    const Mat4 bell = bell_psi_minus();
    CHECK((partial_trace(bell, Subsystem::A) - Mat2::Identity() / 2.0).norm() < 1e-12);
    CHECK((partial_trace(bell, Subsystem::B) - Mat2::Identity() / 2.0).norm() < 1e-12);

    const Mat2 a = tu::qubit_state(0.3, -0.1, 0.5);
    const Mat2 b = tu::qubit_state(-0.2, 0.4, 0.1);
    const Mat4 prod = kron(a, b);
    CHECK((partial_trace(prod, Subsystem::A) - a).norm() < 1e-12);
    CHECK((partial_trace(prod, Subsystem::B) - b).norm() < 1e-12);

    // psi family: population of |1> on B is r*(1-alpha^2) + (1-r)/2
    const double r = 0.7, al = 0.6;
    const Mat2 mb = partial_trace(ewl_state({Family::psi, r, al, 0.3}), Subsystem::B);
    CHECK(mb(0, 0).real() == doctest::Approx(r * (1 - al * al) + (1 - r) / 2).epsilon(1e-12));
}

TEST_CASE("von_neumann_entropy") {
    CHECK(von_neumann_entropy(bell_psi_minus()) == doctest::Approx(0).epsilon(1e-9));
    CHECK(von_neumann_entropy(Mat4::Identity() / 4.0) == doctest::Approx(2).epsilon(1e-12));

    Eigen::MatrixXcd d2 = Eigen::MatrixXcd::Zero(2, 2);
    d2(0, 0) = 0.75;
    d2(1, 1) = 0.25;
    CHECK(von_neumann_entropy(d2) == doctest::Approx(0.8112781245).epsilon(1e-6));

    Eigen::MatrixXcd neg = Eigen::MatrixXcd::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(von_neumann_entropy(neg), std::domain_error);

    // additivity on products
    const Mat2 a = tu::qubit_state(0.2, 0.1, -0.4);
    const Mat2 b = tu::qubit_state(0.0, -0.3, 0.6);
    CHECK(von_neumann_entropy(kron(a, b)) ==
          doctest::Approx(von_neumann_entropy(a) + von_neumann_entropy(b)).epsilon(1e-10));
}

TEST_CASE("conditional entropy and distillable bound") {
    CHECK(conditional_entropy(bell_psi_minus()) == doctest::Approx(-1).epsilon(1e-9));
    CHECK(conditional_entropy(Mat4::Identity() / 4.0) == doctest::Approx(1).epsilon(1e-12));

    CHECK(distillable_lower_bound(bell_phi_plus()) == doctest::Approx(1).epsilon(1e-9));

    const Mat4 sep = 0.5 * kron(tu::qubit_state(0, 0, 1), tu::qubit_state(0, 0, 1)) +
                     0.5 * kron(tu::qubit_state(0, 0, -1), tu::qubit_state(0, 0, -1));
    CHECK(distillable_lower_bound(sep) == doctest::Approx(0).epsilon(1e-12));

    // isotropic mixture of the singlet: spectrum {r + e/4, e/4 x3} with e = 1-r
    const double r = 0.9;
    const Mat4 iso = r * bell_psi_minus() + (1 - r) * Mat4::Identity() / 4.0;
    const double lam = (1 - r) / 4;
    const double hab = -(r + lam) * std::log2(r + lam) - 3 * lam * std::log2(lam);
    CHECK(distillable_lower_bound(iso) == doctest::Approx(1 - hab).epsilon(1e-9));
}

TEST_CASE("concurrence") {
    CHECK(concurrence(bell_psi_minus()) == doctest::Approx(1).epsilon(1e-9));
    CHECK(concurrence(bell_phi_plus()) == doctest::Approx(1).epsilon(1e-9));
    CHECK(concurrence(Mat4::Identity() / 4.0) == doctest::Approx(0).epsilon(1e-9));

    const Mat4 sep = 0.3 * kron(tu::qubit_state(0.4, 0, 0.2), tu::qubit_state(0, 0.5, 0)) +
                     0.7 * kron(tu::qubit_state(0, 0, -0.8), tu::qubit_state(0.1, 0, 0));
    CHECK(concurrence(sep) == doctest::Approx(0).epsilon(1e-9));
}

TEST_CASE("concurrence closed form for mixed parameterized states") {
    for (const Family fam : {Family::psi, Family::phi})
        for (const double r : {0.3, 0.5, 0.8, 1.0})
            for (const double al : {0.3, 1.0 / std::sqrt(2.0), 0.9})
                for (const double th : {0.0, 1.1}) {
                    const double want =
                        std::max(0.0, 2 * r * al * std::sqrt(1 - al * al) - (1 - r) / 2);
                    CHECK(concurrence(ewl_state({fam, r, al, th})) ==
                          doctest::Approx(want).epsilon(1e-7));
                }
}

TEST_CASE("teleportation figures") {
    CHECK(teleportation_N(bell_psi_minus()) == doctest::Approx(3).epsilon(1e-9));
    CHECK(average_fidelity(bell_psi_minus()) == doctest::Approx(1).epsilon(1e-9));
    CHECK(teleportation_N(Mat4::Identity() / 4.0) == doctest::Approx(0).epsilon(1e-9));
    CHECK(average_fidelity(Mat4::Identity() / 4.0) == doctest::Approx(0.5).epsilon(1e-12));

    const Mat4 rho = from_canonical({{0, 0, 0}, {0, 0, 0}, {0.5, -0.3, 0.4}});
    CHECK(teleportation_N(rho) == doctest::Approx(1.2).epsilon(1e-9));
    CHECK(average_fidelity(rho) == doctest::Approx(0.5 + 1.2 / 6).epsilon(1e-9));
}

TEST_CASE("chsh parameter") {
    CHECK(chsh_parameter(bell_phi_plus()) == doctest::Approx(2).epsilon(1e-9));
    CHECK(chsh_parameter(Mat4::Identity() / 4.0) == doctest::Approx(0).epsilon(1e-9));

    const Mat4 ex = from_canonical({{0, 0, 0.25}, {0, 0, 0.25}, {0.95, -0.25, 0.30}});
    CHECK(chsh_parameter(ex) == doctest::Approx(0.9925).epsilon(1e-9));

    // diagonal T: sum of the two largest squared entries
    const Vec3 v{0.6, -0.2, 0.5};
    std::array<double, 3> sq{v[0] * v[0], v[1] * v[1], v[2] * v[2]};
    std::sort(sq.begin(), sq.end());
    const Mat4 rho = from_canonical({{0, 0, 0}, {0, 0, 0}, v});
    CHECK(chsh_parameter(rho) == doctest::Approx(sq[1] + sq[2]).epsilon(1e-12));
}

TEST_CASE("chsh and N relations on random states") {
    const std::uint64_t seed = 23;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const Mat4 rho = tu::random_physical(seed, i);
        const double m = chsh_parameter(rho);
        CHECK(m <= 2 + 1e-9);
        if (m > 1 + 1e-9) CHECK(teleportation_N(rho) > 1);
    }
}

TEST_CASE("parameterized family construction") {
    CHECK((ewl_state({Family::psi, 0.0, 0.3, 0.7}) - Mat4::Identity() / 4.0).norm() < 1e-12);

    // pure psi: alpha|00> + e^{i theta} sqrt(1-alpha^2)|11>
    const double al = 0.6, th = 0.9;
    Vec4c v = Vec4c::Zero();
    v(3) = al;
    v(0) = std::exp(cplx(0, th)) * std::sqrt(1 - al * al);
    CHECK((ewl_state({Family::psi, 1.0, al, th}) - Mat4(v * v.adjoint())).norm() < 1e-12);

    // pure phi: alpha|10> + e^{i theta} sqrt(1-alpha^2)|01>
    Vec4c w = Vec4c::Zero();
    w(1) = al;
    w(2) = std::exp(cplx(0, th)) * std::sqrt(1 - al * al);
    CHECK((ewl_state({Family::phi, 1.0, al, th}) - Mat4(w * w.adjoint())).norm() < 1e-12);

    CHECK_THROWS_AS(ewl_state({Family::psi, 1.2, 0.5, 0.0}), std::domain_error);
    CHECK_THROWS_AS(ewl_state({Family::psi, 0.5, 1.2, 0.0}), std::domain_error);
}

TEST_CASE("octahedron vertex states") {
    const Mat4 rho = octahedron_vertex_state({1, 0, 0}, 0.5);
    CHECK(is_physical(rho));
    Eigen::SelfAdjointEigenSolver<Mat4> es(rho);
    CHECK(es.eigenvalues()(0) == doctest::Approx(0).epsilon(1e-12));
    CHECK(es.eigenvalues()(1) == doctest::Approx(0).epsilon(1e-12));
    CHECK(es.eigenvalues()(2) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(es.eigenvalues()(3) == doctest::Approx(0.75).epsilon(1e-12));

    const Mat4 rz = octahedron_vertex_state({0, 0, 1}, 0.0);
    Eigen::SelfAdjointEigenSolver<Mat4> esz(rz);
    CHECK(esz.eigenvalues()(2) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(esz.eigenvalues()(3) == doctest::Approx(0.5).epsilon(1e-12));

    // conditional entropy vanishes along every pinned segment
    const Vec3 verts[6] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    for (const auto& vtx : verts)
        for (const double a : {0.0, 0.3, 0.7, 1.0}) {
            const Mat4 m = octahedron_vertex_state(vtx, a);
            CHECK(is_physical(m));
            CHECK(conditional_entropy(m) == doctest::Approx(0).epsilon(1e-9));
        }

    CHECK(is_physical(octahedron_vertex_state({-1, 0, 0}, 1.0)));
    CHECK_THROWS_AS(octahedron_vertex_state({1, 1, 0}, 0.5), std::domain_error);
    CHECK_THROWS_AS(octahedron_vertex_state({0.5, 0, 0}, 0.5), std::domain_error);
    CHECK_THROWS_AS(octahedron_vertex_state({1, 0, 0}, 1.5), std::domain_error);
}

TEST_CASE("negative conditional entropy implies useful teleportation") {
    const std::uint64_t seed = 31;
    for (std::uint64_t i = 0; i < 10000; ++i) {
        const Mat4 rho = tu::random_physical(seed, i);
        if (conditional_entropy(rho) < 0) {
            CHECK(teleportation_N(rho) > 1);
            CHECK(average_fidelity(rho) > 2.0 / 3.0);
        }
    }
}

TEST_CASE("octahedron interior is never negative-entropy for diagonal states") {
    const std::uint64_t seed = 37;
    int n = 0;
    for (std::uint64_t i = 0; n < 300 && i < 10000; ++i) {
        const Vec3 v = tu::random_cube(seed, i);
        if (!in_octahedron(v)) continue;
        ++n;
        const Mat4 rho = from_canonical({{0, 0, 0}, {0, 0, 0}, v});
        CHECK(conditional_entropy(rho) >= -1e-9);
        CHECK(concurrence(rho) == doctest::Approx(0).epsilon(1e-9));
    }
    CHECK(n == 300);
}

TEST_CASE("mirror pair symmetry") {
    const Vec3 r{0, 0, 0.25}, s{0, 0, 0.25};
    const std::uint64_t seed = 41;
    int n = 0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        Vec3 v = 0.9 * tu::random_cube(seed, i);
        const Mat4 a = from_canonical({r, s, v});
        if (!is_physical(a)) continue;
        ++n;
        const Mat4 b = from_canonical({r, s, {-v[0], -v[1], v[2]}});
        CHECK(is_physical(b));
        CHECK(conditional_entropy(a) ==
              doctest::Approx(conditional_entropy(b)).epsilon(1e-10));
        CHECK(chsh_parameter(a) == doctest::Approx(chsh_parameter(b)).epsilon(1e-10));
    }
    CHECK(n > 20);
}
