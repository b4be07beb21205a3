#include "uwit/serialize.hpp"
#include <cstdio>
#include <ostream>

namespace uwit {

json state_to_json(const Mat4& rho) {
    json re = json::array(), im = json::array();
    for (int i = 0; i < 4; ++i) {
        json rrow = json::array(), irow = json::array();
        for (int j = 0; j < 4; ++j) {
            rrow.push_back(rho(i, j).real());
            irow.push_back(rho(i, j).imag());
        }
        re.push_back(rrow);
        im.push_back(irow);
    }
    return json{{"re", re}, {"im", im}};
}

Mat4 state_from_json(const json& j) {
    if (!j.is_object() || !j.contains("re") || !j.contains("im"))
        throw std::invalid_argument("state JSON needs \"re\" and \"im\" 4x4 arrays");
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (!re.is_array() || !im.is_array() || re.size() != 4 || im.size() != 4)
        throw std::invalid_argument("state JSON needs \"re\" and \"im\" 4x4 arrays");
    Mat4 rho;
    for (int i = 0; i < 4; ++i) {
        if (re[i].size() != 4 || im[i].size() != 4)
            throw std::invalid_argument("state JSON rows must have 4 entries");
        for (int k = 0; k < 4; ++k) {
            if (!re[i][k].is_number() || !im[i][k].is_number())
                throw std::invalid_argument("state JSON entries must be numbers");
            rho(i, k) = cplx(re[i][k].get<double>(), im[i][k].get<double>());
        }
    }
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
        throw std::invalid_argument("state matrix is not Hermitian");
    if (std::abs(rho.trace() - cplx(1.0, 0.0)) > 1e-9)
        throw std::invalid_argument("state matrix trace is not 1");
    return rho;
}

namespace {
json vec3_to_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

Vec3 vec3_from_json(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array() || j.at(key).size() != 3)
        throw std::invalid_argument(std::string("expected 3-vector for \"") + key + "\"");
    Vec3 v;
    for (int k = 0; k < 3; ++k) {
        if (!j.at(key)[k].is_number())
            throw std::invalid_argument("vector entries must be numbers");
        v[k] = j.at(key)[k].get<double>();
    }
    return v;
}
} // namespace

json canonical_to_json(const CanonicalBloch& c) {
    return json{{"r", vec3_to_json(c.r)}, {"s", vec3_to_json(c.s)}, {"v", vec3_to_json(c.v)}};
}

CanonicalBloch canonical_from_json(const json& j) {
    CanonicalBloch c;
    c.r = vec3_from_json(j, "r");
    c.s = vec3_from_json(j, "s");
    c.v = vec3_from_json(j, "v");
    return c;
}

json report_to_json(const UncertaintyReport& r) {
    return json{
        {"te", r.te},
        {"me", r.me},
        {"fe", r.fe},
        {"bb", r.bb},
        {"cond_entropy", r.cond_entropy},
        {"concurrence", r.concurrence},
        {"tele_n", r.tele_n},
        {"avg_fidelity", r.avg_fidelity},
        {"chsh", r.chsh},
        {"witnessed",
         {{"te", r.witnessed.te},
          {"me", r.witnessed.me},
          {"fe", r.witnessed.fe},
          {"bb", r.witnessed.bb}}}};
}

json fractions_to_json(const FractionReport& f) {
    return json{
        {"n_samples", f.n_samples},
        {"seed", f.seed},
        {"n_physical", f.n_physical},
        {"n_useful", f.n_useful},
        {"n_neg_h", f.n_neg_h},
        {"frac_physical", f.frac_physical},
        {"frac_useful_of_physical", f.frac_useful_of_physical},
        {"frac_neg_h_of_physical", f.frac_neg_h_of_physical},
        {"frac_neg_h_of_useful", f.frac_neg_h_of_useful},
        {"se_physical", f.se_physical},
        {"se_useful_of_physical", f.se_useful_of_physical},
        {"se_neg_h_of_physical", f.se_neg_h_of_physical},
        {"se_neg_h_of_useful", f.se_neg_h_of_useful}};
}

void write_trajectory_csv(std::ostream& os, const WitnessTrajectory& wt) {
    os << "t,re_p,im_p,abs_p,te,me,fe,bb,concurrence,chsh\n";
    char buf[360];
    for (std::size_t i = 0; i < wt.ptraj.times.size(); ++i) {
        const cplx p = wt.ptraj.p[i];
        const auto& r = wt.reports[i];
        std::snprintf(buf, sizeof(buf),
                      "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                      wt.ptraj.times[i], p.real(), p.imag(), std::abs(p), r.te,
                      r.me, r.fe, r.bb, r.concurrence, r.chsh);
        os << buf;
    }
}

void write_mesh_csv(std::ostream& os, const std::vector<MeshPoint>& mesh) {
    os << "v1,v2,v3,label\n";
    char buf[160];
    for (const auto& m : mesh) {
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%s\n", m.v[0], m.v[1],
                      m.v[2], to_string(m.label));
        os << buf;
    }
}

namespace {
const char* to_string(CrossStatus s) {
    switch (s) {
        case CrossStatus::crossed: return "crossed";
        case CrossStatus::never_witnessed: return "never_witnessed";
        case CrossStatus::witnessed_at_end: return "witnessed_at_end";
    }
    return "?";
}
} // namespace

json intervals_to_json(const WitnessTrajectory& wt) {
    json out;
    for (Estimator e : {Estimator::te, Estimator::me, Estimator::fe}) {
        json iv = json::array();
        for (const auto& w : witness_intervals(wt, e))
            iv.push_back(json{{"t", {w.t_lo, w.t_hi}},
                              {"concurrence", {w.c_lo, w.c_hi}},
                              {"open_end", w.open_end}});
        const CriticalTime ct = critical_time(wt, e);
        json ctj{{"status", to_string(ct.status)}};
        if (ct.status == CrossStatus::crossed)
            ctj["t"] = ct.t;
        else
            ctj["t"] = nullptr;
        out[to_string(e)] = json{{"intervals", iv}, {"critical_time", ctj}};
    }
    return out;
}

} // namespace uwit
