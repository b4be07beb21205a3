#include "uwit/geometry.hpp"
#include "uwit/uncertainty.hpp"
#include <cmath>
#include <stdexcept>

namespace uwit {

bool in_tetrahedron(const Vec3& v) {
    return v[0] + v[1] + v[2] <= 1.0 && v[0] - v[1] - v[2] <= 1.0 &&
           -v[0] + v[1] - v[2] <= 1.0 && -v[0] - v[1] + v[2] <= 1.0;
}

bool in_octahedron(const Vec3& v) {
    return std::abs(v[0]) + std::abs(v[1]) + std::abs(v[2]) <= 1.0;
}

const char* to_string(RegionLabel l) {
    switch (l) {
        case RegionLabel::unphysical: return "unphysical";
        case RegionLabel::physical_in_O: return "physical_in_O";
        case RegionLabel::useful_teleport: return "useful_teleport";
        case RegionLabel::negative_cond_entropy: return "negative_cond_entropy";
    }
    return "?";
}

RegionLabel classify(const Vec3& v, const Vec3& r, const Vec3& s) {
    CanonicalBloch c{r, s, v};
    Mat4 rho = from_canonical(c);
    if (!is_physical(rho)) return RegionLabel::unphysical;
    if (!(average_fidelity(rho) > 2.0 / 3.0)) return RegionLabel::physical_in_O;
    if (conditional_entropy(rho) < 0.0) return RegionLabel::negative_cond_entropy;
    return RegionLabel::useful_teleport;
}

namespace {

// Kron basis of the canonical family, assembled once.
struct CanonicalBasis {
    Mat4 base;      // (I + sum r_k s_k x I + sum s_k I x s_k)/4
    Mat4 kv[3];     // (s_k x s_k)/4
    double h_b;     // entropy of the fixed B marginal
    CanonicalBasis(const Vec3& r, const Vec3& s) {
        const Mat2 id = Mat2::Identity();
        base = Mat4::Identity();
        for (int k = 1; k <= 3; ++k) {
            base += r[k - 1] * kron(pauli(k), id);
            base += s[k - 1] * kron(id, pauli(k));
            kv[k - 1] = 0.25 * kron(pauli(k), pauli(k));
        }
        base /= 4.0;
        h_b = binary_entropy(0.5 * (1.0 + s.norm()));
    }
};

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// 0 = unphysical, 1 = physical, 2 = useful, 3 = negative H(A|B).
// T = diag(v) for this family, so N = |v1|+|v2|+|v3| exactly.
inline int classify_fast(const CanonicalBasis& cb, const Vec3& v,
                         Eigen::SelfAdjointEigenSolver<Mat4>& es) {
    Mat4 rho = cb.base + v[0] * cb.kv[0] + v[1] * cb.kv[1] + v[2] * cb.kv[2];
    es.compute(rho, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    if (ev(0) < -kPsdTol) return 0;
    if (!(std::abs(v[0]) + std::abs(v[1]) + std::abs(v[2]) > 1.0)) return 1;
    double h_ab = 0.0;
    for (int i = 0; i < 4; ++i)
        h_ab -= xlog2x(std::clamp(ev(i), 0.0, 1.0));
    return (h_ab - cb.h_b < 0.0) ? 3 : 2;
}

} // namespace

FractionReport sample_fractions(const Vec3& r, const Vec3& s,
                                std::uint64_t n, std::uint64_t seed,
                                ExecPolicy policy) {
    if (n < 10000)
        throw std::domain_error("sample count below 1e4");
    const CanonicalBasis cb(r, s);
    std::uint64_t cp = 0, cu = 0, cn = 0;

    if (policy == ExecPolicy::parallel) {
#pragma omp parallel
        {
            Eigen::SelfAdjointEigenSolver<Mat4> es;
#pragma omp for reduction(+ : cp, cu, cn) schedule(static)
            for (long long i = 0; i < static_cast<long long>(n); ++i) {
                const std::uint64_t c0 = 3ull * static_cast<std::uint64_t>(i);
                Vec3 v(draw_sym(seed, c0), draw_sym(seed, c0 + 1), draw_sym(seed, c0 + 2));
                int lab = classify_fast(cb, v, es);
                if (lab >= 1) ++cp;
                if (lab >= 2) ++cu;
                if (lab >= 3) ++cn;
            }
        }
    } else {
        Eigen::SelfAdjointEigenSolver<Mat4> es;
        for (std::uint64_t i = 0; i < n; ++i) {
            const std::uint64_t c0 = 3ull * i;
            Vec3 v(draw_sym(seed, c0), draw_sym(seed, c0 + 1), draw_sym(seed, c0 + 2));
            int lab = classify_fast(cb, v, es);
            if (lab >= 1) ++cp;
            if (lab >= 2) ++cu;
            if (lab >= 3) ++cn;
        }
    }

    auto frac = [](std::uint64_t num, std::uint64_t den) {
        return den ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
    };
    auto se = [&](double p, std::uint64_t den) {
        return den ? std::sqrt(p * (1.0 - p) / static_cast<double>(den)) : 0.0;
    };
    FractionReport rep;
    rep.n_samples = n;
    rep.seed = seed;
    rep.n_physical = cp;
    rep.n_useful = cu;
    rep.n_neg_h = cn;
    rep.frac_physical = frac(cp, n);
    rep.frac_useful_of_physical = frac(cu, cp);
    rep.frac_neg_h_of_physical = frac(cn, cp);
    rep.frac_neg_h_of_useful = frac(cn, cu);
    rep.se_physical = se(rep.frac_physical, n);
    rep.se_useful_of_physical = se(rep.frac_useful_of_physical, cp);
    rep.se_neg_h_of_physical = se(rep.frac_neg_h_of_physical, cp);
    rep.se_neg_h_of_useful = se(rep.frac_neg_h_of_useful, cu);
    return rep;
}

std::vector<MeshPoint> region_mesh(const Vec3& r, const Vec3& s, int resolution) {
    if (resolution < 10)
        throw std::domain_error("mesh resolution below 10");
    const CanonicalBasis cb(r, s);
    std::vector<MeshPoint> mesh;
    mesh.reserve(static_cast<std::size_t>(resolution) * resolution * resolution);
    auto coord = [&](int i) { return -1.0 + 2.0 * i / (resolution - 1); };
    Eigen::SelfAdjointEigenSolver<Mat4> es;
    for (int i = 0; i < resolution; ++i)
        for (int j = 0; j < resolution; ++j)
            for (int k = 0; k < resolution; ++k) {
                Vec3 v(coord(i), coord(j), coord(k));
                mesh.push_back({v, static_cast<RegionLabel>(classify_fast(cb, v, es))});
            }
    return mesh;
}

} // namespace uwit
