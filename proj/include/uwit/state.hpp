#pragma once
#include <complex>
#include <Eigen/Dense>

namespace uwit {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec3 = Eigen::Vector3d;

// Two-qubit basis order is {|11>, |10>, |01>, |00>}; single qubit {|1>, |0>}.
// Index of |ab> is 2*(1-a) + (1-b).

inline constexpr double kHermTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

enum class Family { psi, phi };
enum class Subsystem { A, B };

// psi: alpha|00> + e^{i theta} sqrt(1-alpha^2)|11>
// phi: alpha|10> + e^{i theta} sqrt(1-alpha^2)|01>
struct EwlSpec {
    Family family = Family::psi;
    double r = 1.0;       // purity weight of the projector vs I/4
    double alpha = 0.70710678118654752440;
    double theta = 0.0;
};

struct CanonicalBloch {
    Vec3 r = Vec3::Zero();  // local vector of A
    Vec3 s = Vec3::Zero();  // local vector of B
    Vec3 v = Vec3::Zero();  // diagonal of the correlation tensor
};

struct BlochDecomposition {
    Vec3 x, y;              // local vectors of A and B
    Eigen::Matrix3d T;      // T_ij = tr[rho (sigma_i x sigma_j)]
};

const Mat2& pauli(int k);   // k = 1,2,3
Mat4 kron(const Mat2& a, const Mat2& b);

// rho = (I + sum r_k s_k x I + sum s_k I x s_k + sum v_k s_k x s_k)/4.
// Hermitian unit trace by construction; not necessarily positive.
Mat4 from_canonical(const CanonicalBloch& c);

BlochDecomposition bloch_decompose(const Mat4& rho);

// Requires Hermitian unit-trace input; positivity up to -tol on eigenvalues.
bool is_physical(const Mat4& rho, double tol = kPsdTol);
double min_eigenvalue(const Mat4& rho);

Mat2 partial_trace(const Mat4& rho, Subsystem keep);

// Base-2. Eigenvalues clipped to [0,1]; below -kPsdTol is a domain error.
double von_neumann_entropy(const Eigen::Ref<const Eigen::MatrixXcd>& rho);

// H(A|B) = H(AB) - H(B)
double conditional_entropy(const Mat4& rho);

// -H(A|B), a lower bound on one-way distillable entanglement when positive
double distillable_lower_bound(const Mat4& rho);

double concurrence(const Mat4& rho);

// N = sum of singular values of T; fidelity F = 1/2 + N/6, useful iff N > 1
double teleportation_N(const Mat4& rho);
double average_fidelity(const Mat4& rho);

// M = sum of the two largest eigenvalues of T^T T; local-realism bound M <= 1
double chsh_parameter(const Mat4& rho);

Mat4 ewl_state(const EwlSpec& spec);

// Bell-diagonal family pinned to an octahedron vertex with local vectors of
// length |a| chosen so that H(A|B) = 0 on the whole segment:
//   v=(+-1,0,0) -> r=(a,0,0), s=(+-a,0,0)
//   v=(0,+-1,0) -> r=(0,a,0), s=(0,+-a,0)
//   v=(0,0,+-1) -> r=s=0     (a ignored)
Mat4 octahedron_vertex_state(const Vec3& vertex, double a);

} // namespace uwit
