#pragma once
#include <cstdint>
#include <vector>
#include "state.hpp"
#include "exec.hpp"

namespace uwit {

// Correlation tetrahedron facets: v1+v2+v3 <= 1, v1-v2-v3 <= 1,
// -v1+v2-v3 <= 1, -v1-v2+v3 <= 1. Octahedron: |v1|+|v2|+|v3| <= 1.
bool in_tetrahedron(const Vec3& v);
bool in_octahedron(const Vec3& v);

enum class RegionLabel { unphysical, physical_in_O, useful_teleport, negative_cond_entropy };
const char* to_string(RegionLabel l);

// Checks in order: is_physical, average_fidelity > 2/3, conditional_entropy < 0.
RegionLabel classify(const Vec3& v, const Vec3& r, const Vec3& s);

struct FractionReport {
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t n_physical = 0, n_useful = 0, n_neg_h = 0;
    double frac_physical = 0;
    double frac_useful_of_physical = 0;
    double frac_neg_h_of_physical = 0;
    double frac_neg_h_of_useful = 0;
    double se_physical = 0;
    double se_useful_of_physical = 0;
    double se_neg_h_of_physical = 0;
    double se_neg_h_of_useful = 0;
};

// v uniform in [-1,1)^3 from the counter RNG; fixed r, s. n < 1e4 is a
// domain error. Serial and parallel policies give identical counts.
FractionReport sample_fractions(const Vec3& r, const Vec3& s,
                                std::uint64_t n, std::uint64_t seed,
                                ExecPolicy policy = ExecPolicy::parallel);

struct MeshPoint { Vec3 v; RegionLabel label; };

// Inclusive grid over [-1,1]^3, resolution points per axis (>= 10).
std::vector<MeshPoint> region_mesh(const Vec3& r, const Vec3& s, int resolution);

} // namespace uwit
