#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qbraid/hilbert.hpp"

namespace qbraid {

// Delta-normalized eigenvectors of the Schrodinger pair in the x picture:
// Omega_r = e^{i x log r/hbar}, Phi_s = delta(log s - x),
// Psi_t = e^{i x^2/2hbar} e^{i x log t/hbar}, the plane waves over sqrt(2 pi hbar).
enum class KernelKind { OmegaPhi, PsiPhi, OmegaPsi };
const char* to_string(KernelKind k);

// <Omega_r|Phi_s>, <Psi_t|Phi_s>, <Omega_r|Psi_t>; a, b > 0.
cplx overlap(KernelKind kind, double a, double b, const PlanckParam& p);

// <Omega_r|Psi_t> by Gauss-Legendre quadrature of the regularized integral
// (weight e^{-eps x^2}), eps in {1e-2, 1e-3, 1e-4}, extrapolated to eps = 0.
cplx overlap_omega_psi_quadrature(double r, double t, const PlanckParam& p);

double identity_omfi_residual(double r, double s, const PlanckParam& p);
double identity_pom1_residual(double r, double s, double t, const PlanckParam& p);
// f(log t') <Phi_s|Psi_t'><Psi_t'|Phi_r> at t' = 1/t against
// f(-log t) e^{-i log^2 r/hbar} e^{i log^2 s/hbar} <Psi_t|Phi_s><Phi_r|Psi_t>.
double identity_pom2_residual(const std::function<cplx(double)>& f, double r, double s, double t,
                              const PlanckParam& p);
// pom2 with f = V_theta.
double identity_pom20_residual(double r, double s, double t, const PlanckParam& p);

// Max residual over a cube of log-spaced points r, s, t in [e^-lim, e^lim].
struct IdentitySweep {
    double omfi = 0.0, pom1 = 0.0, pom20 = 0.0, pom2 = 0.0;
};
IdentitySweep identity_sweep(const PlanckParam& p, int points = 5, double lim = 1.0);

// Operator forms on the grid, compared through Gaussian-smeared matrix
// elements (sigma 0.5, 13 centres over the inner 75% of the box):
//   ef:   F V(log T)*              = c' V(log T)^T D
//   efw:  F VL(T)*                 = i(-1)^k c' WL(T)^T D
//   efwt: F WL(T)*                 = i(-1)^k c' VL(T)^T D
// with VL = V(log T - i pi), WL = T^{pi/hbar} VL, D = e^{-i log^2 S/hbar}.
// Returns the median relative error over smeared elements at least 1e-6 of the largest.
enum class EfVariant { Ef, Efw, Efwt };
const char* to_string(EfVariant v);
double identity_ef_matrix_residual(const PlanckParam& p, const Grid& g, EfVariant variant);

// Columns: a, b, re, im.
void write_kernel_csv(const std::string& path, const PlanckParam& p, KernelKind kind, const std::vector<double>& as,
                      const std::vector<double>& bs);
// Columns: r, s, t, omfi, pom1, pom20.
void write_identity_csv(const std::string& path, const PlanckParam& p, int points = 5, double lim = 1.0);

}  // namespace qbraid
