#pragma once
#include "state.hpp"

namespace uwit {

// Eigenvector columns ordered by descending eigenvalue (+1 before -1 for
// Paulis), cached so repeated calls see identical phases.
struct Observable {
    Mat2 matrix;
    Mat2 eigenvectors;          // columns
    Eigen::Vector2d eigenvalues;
};

// Degenerate spectrum (gap < 1e-9) is a domain error.
Observable make_observable(const Mat2& m);

const Observable& sigma1();
const Observable& sigma3();

// c = max_{r,s} |<r|s>|^2 over eigenvector pairs
double complementarity(const Observable& R, const Observable& S);

double binary_entropy(double p);

// sum_r (P_r x I) rho (P_r x I): classical register on A, memory on B intact
Mat4 postmeasure_cq(const Mat4& rho, const Observable& obs);

// H(X|B) of the post-measurement cq state
double conditional_on_memory(const Mat4& rho, const Observable& obs);

// TE = H(R|B) + H(S|B)
double tomographic_estimate(const Mat4& rho, const Observable& R, const Observable& S);

// BB = log2(1/c) + H(A|B)
double berta_bound(const Mat4& rho, const Observable& R, const Observable& S);

// p(a,b) = tr[(P_a x P_b) rho], same observable on both sides; rows index a
Eigen::Matrix2d joint_outcome_distribution(const Mat4& rho, const Observable& obs);

// ME = sum_X H(X_A|X_B) from the joint outcome tables
double measurement_estimate(const Mat4& rho, const Observable& R, const Observable& S);

// FE = sum_X h(p_X), p_X = disagreement probability (off-diagonal table mass)
double fano_estimate(const Mat4& rho, const Observable& R, const Observable& S);

struct WitnessedFlags { bool te, me, fe, bb; };

struct UncertaintyReport {
    double te, me, fe, bb;
    double cond_entropy;
    double concurrence;
    double tele_n;
    double avg_fidelity;
    double chsh;
    WitnessedFlags witnessed;   // estimate < 1 for (sigma1, sigma3), strict to 1e-9
};

UncertaintyReport witness_report(const Mat4& rho);

} // namespace uwit
