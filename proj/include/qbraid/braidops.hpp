#pragma once

#include <vector>

#include "qbraid/domains.hpp"

namespace qbraid {

// Values of F_hbar on the spectrum of A, split as F(A, nu) = even(A) + i odd(A) nu.
struct FhSpectrum {
    Eigen::VectorXcd even;
    Eigen::VectorXcd odd;
};
// scale m evaluates F on m*A with the same eigenvectors.
FhSpectrum fh_spectrum(const PlanckParam& p, const HermitianSpectral& a, double tol = kDefaultTol, double scale = 1.0);

// F_hbar(A, nu) for Hermitian A and a reflection nu commuting with A, nu^2 = chi(A<0)
// on the negative part. Only nu restricted to chi(A<0) matters.
Mat fh_of_pair(const PlanckParam& p, const HermitianSpectral& a, const Mat& nu, double tol = kDefaultTol);
Action fh_action(const PlanckParam& p, const HermitianSpectral& a, const Mat& nu, double tol = kDefaultTol);
Action fh_action(const HermitianSpectral& a, const FhSpectrum& values, const Mat& nu);

// Closed 4x4 block form of F_hbar(T, tau chi(T<0)): V(log T+) on blocks 1 and 4,
// [[VL, i(-1)^k WL], [i(-1)^k WL, VL]] on blocks 2, 3 with VL = V(log T+ - i pi),
// WL = T+^{pi/hbar} VL. reflection_sign = -1 replaces tau by -tau.
Mat fh_block(const BlockSystem& sys, double reflection_sign = 1.0, double tol = kDefaultTol);

struct ExtensionData {
    HermitianSpectral T;
    Mat reflection;  // tau chi(T<0) or phi
    Mat fh;          // F_hbar(T, reflection)
    HermitianSpectral sum;  // [R+S] with spectrum carried over from S
    Mat sigma_tilde;
    double unitarity = 0.0;

    NPair result() const { return {sum, sigma_tilde}; }
    MPair result_m() const { return {sum, sigma_tilde}; }
};

// (R, rho) composed with (S, sigma): conjugation of S and sigma by F_hbar(T, tau chi(T<0)).
ExtensionData op_N(const BlockSystem& sys, double reflection_sign = 1.0);
ExtensionData op_M(const BlockSystem& sys);
// Same without the block structure: T from the generator, F_hbar by joint calculus.
ExtensionData op_N(const PlanckParam& p, const NPair& first, const NPair& second);
ExtensionData op_M(const PlanckParam& p, const MPair& first, const MPair& second);

// Eigendecomposition of the assembled [R+S] matrix, independent of the
// conjugated spectral data.
HermitianSpectral independent_sum_spectrum(const BlockSystem& sys, const ExtensionData& ext);

// F([R+S], sigma~ chi([R+S]<0)) against F(R, rho chi(R<0)) F(S, sigma chi(S<0)).
double exp_equation_residual(const PlanckParam& p, const BlockSystem& sys, const ExtensionData& ext,
                             const std::vector<Vec>& probes);
double exp_equation_residual(const PlanckParam& p, const BlockSystem& sys, const ExtensionData& ext,
                             const HermitianSpectral& sum, const std::vector<Vec>& probes);

// max over probe pairs of |<w|[R+S]v> - <w|Rv> - <w|Sv>| / (|w||v|).
double extension_consistency(const BlockSystem& sys, const ExtensionData& ext, const std::vector<Vec>& probes);

// tau chi(T<0) against (-1)^k [rho chi(R<0) sigma chi(S<0) + sigma chi(S<0) rho chi(R<0)].
double homomorphism_residual_N_to_A(const BlockSystem& sys);
// phi of the image M^2 pair against I_2 (x) tau chi(T<0), on probes of C^2 (x) H.
double homomorphism_residual_N_to_M(const BlockSystem& sys, const std::vector<Vec>& probes);
// Image under (g, gamma) (x) . of the M composite against the N composite of the images.
double homomorphism_residual_M_to_N(const MPair& carrier, const BlockSystem& sys, const std::vector<Vec>& probes);

}  // namespace qbraid
