#pragma once

#include <stdexcept>
#include <vector>

#include "qbraid/braidops.hpp"

namespace qbraid {

struct FitFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Carrier (M, mu) on a finite-dimensional K; an N-pair (they commute).
struct RepSpec {
    NPair generator;
    Index carrier_dim() const { return generator.R.dim(); }
};

// Carrier (g, gamma) on K for representations of M.
struct RepSpecM {
    MPair generator;
    Index carrier_dim() const { return generator.b.dim(); }
};

RepSpec make_rep_spec(const Mat& m, const Mat& mu);
RepSpecM make_rep_spec_m(const Mat& g, const Mat& gamma);

// Joint eigenvectors of (M, mu): columns of `vectors`, eigenvalues m and mu0.
struct JointBasis {
    Mat vectors;
    std::vector<double> m;
    std::vector<int> mu;
};
JointBasis joint_basis(const RepSpec& spec);

// V(R, rho) = F(M (x) R, (mu (x) rho) chi(M (x) R < 0)), built eigenspace by eigenspace.
Mat rep_N_build(const PlanckParam& p, const RepSpec& spec, const NPair& pair);
Action rep_N_action(const PlanckParam& p, const RepSpec& spec, const NPair& pair);
// The same formula through joint calculus of M (x) R; also defined when the
// carrier does not commute (mutation controls).
Mat rep_N_formula(const PlanckParam& p, const NPair& carrier, const NPair& pair);

// U(b, beta) = F(g (x) b, (gamma (x) beta) chi(g (x) b < 0)).
Mat rep_M_build(const PlanckParam& p, const RepSpecM& spec, const MPair& pair);

// V(R,rho) V(S,sigma) against V of the composite, on probes of K (x) H.
double rep_equation_residual(const PlanckParam& p, const RepSpec& spec, const BlockSystem& sys,
                             const ExtensionData& ext, const HermitianSpectral& sum, const std::vector<Vec>& probes);
// Same with V replaced by its rho-even part V1 (not a representation).
double rep_equation_residual_v1_only(const PlanckParam& p, const BlockSystem& sys, const HermitianSpectral& sum,
                                     const std::vector<Vec>& probes);

struct V1V2 {
    Mat v1, v2;
};
V1V2 decompose_V1_V2(const Mat& v_plus, const Mat& v_minus);
// V1 + rho V2 for a scalar reflection value rho = +-1.
Mat reconstruct(const V1V2& parts, int rho);

// V(r, rho) on the carrier for scalar arguments, via the formula (any carrier).
Mat rep_scalar(const PlanckParam& p, const NPair& carrier, double r, int rho);

// e^{-2}, ..., e^{2}: 9 log-spaced magnitudes.
std::vector<double> default_magnitudes();

// The ten commuting relations of V1, V2 at r, s > 0 and the vanishing of V2(r)V2(-s).
Validation commutation_suite(const PlanckParam& p, const NPair& carrier, const std::vector<double>& magnitudes,
                             double tol = 1e-5, double zero_tol = 1e-9);

// Scalar candidate V0 sampled at r in +-magnitudes, rho = +1 and -1.
struct Dim1Samples {
    std::vector<double> r;
    std::vector<cplx> plus;
    std::vector<cplx> minus;
};
Dim1Samples sample_family(const PlanckParam& p, double m, int mu, const std::vector<double>& magnitudes);
// rho-even part of the family: V2 vanishes on both half-lines.
Dim1Samples sample_v1_only(const PlanckParam& p, double m, const std::vector<double>& magnitudes);

enum class Dim1Case { PositiveM, NegativeM, Trivial, Reject };
const char* to_string(Dim1Case c);

struct Dim1Result {
    Dim1Case kind = Dim1Case::Reject;
    double m = 0.0;
    int mu = 1;
    double residual = 0.0;
};
Dim1Result dim1_classify(const PlanckParam& p, const Dim1Samples& samples, double fit_tol = 1e-4);

}  // namespace qbraid
