#pragma once
#include <iosfwd>
#include <json.hpp>
#include "geometry.hpp"
#include "reservoir.hpp"

namespace uwit {

using json = nlohmann::json;

// {"re": [[..4x4..]], "im": [[..4x4..]]}
json state_to_json(const Mat4& rho);

// Validates shape, Hermiticity and unit trace (std::invalid_argument).
// Positivity is the caller's concern.
Mat4 state_from_json(const json& j);

// {"r": [3], "s": [3], "v": [3]}
json canonical_to_json(const CanonicalBloch& c);
CanonicalBloch canonical_from_json(const json& j);

json report_to_json(const UncertaintyReport& r);
json fractions_to_json(const FractionReport& f);

// Exact header: t,re_p,im_p,abs_p,te,me,fe,bb,concurrence,chsh
void write_trajectory_csv(std::ostream& os, const WitnessTrajectory& wt);

// Exact header: v1,v2,v3,label
void write_mesh_csv(std::ostream& os, const std::vector<MeshPoint>& mesh);

// Witness intervals and critical time per estimator for a trajectory.
json intervals_to_json(const WitnessTrajectory& wt);

} // namespace uwit
