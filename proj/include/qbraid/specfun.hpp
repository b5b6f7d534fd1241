#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qbraid {

using cplx = std::complex<double>;

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kDefaultTol = 1e-10;

// hbar = sign*pi/(2k+3). theta is the exponent in log(1 + a^-theta); it is
// pinned to 2*pi/hbar by the reflection identity (see README).
struct PlanckParam {
    int k = 0;
    int sign = 1;
    double hbar = kPi / 3.0;
    double theta = 6.0;
    cplx c_prime{1.0, 0.0};

    int parity() const { return (k % 2 == 0) ? 1 : -1; }  // (-1)^k
};

PlanckParam make_planck(int k, int sign);

// Same hbar and c', arbitrary theta. Used by sensitivity probes only.
PlanckParam with_theta(PlanckParam p, double theta);

// (r, rho) with r > 0 => rho = 0, r < 0 => rho = +-1, r = 0 => any of -1, 0, 1.
struct DeltaRealPoint {
    double r = 0.0;
    int rho = 0;
};

void check_point(const DeltaRealPoint& pt);

// exp{(1/2 pi i) int_0^inf log(1 + a^-theta) da / (a + e^-x)}, |Im x| < pi.
cplx vtheta(const PlanckParam& p, cplx x, double tol = kDefaultTol);

// Analytic continuation to x = y - i pi.
struct LowerEdge {
    cplx pv;           // principal value + half residue
    cplx extrapolated; // eps-shifted evaluations, Richardson to eps = 0
    double discrepancy;
};

LowerEdge vtheta_lower_edge_both(const PlanckParam& p, double y, double tol = kDefaultTol);
cplx vtheta_lower_edge(const PlanckParam& p, double y, double tol = kDefaultTol);

// Fast single-method pieces used by operator functions.
// V(y - i pi) = exp(i*phase - softplus(theta*y)/2).
double lower_edge_phase(const PlanckParam& p, double y, double tol = kDefaultTol);
cplx vtheta_lower_edge_pv(const PlanckParam& p, double y, double tol = kDefaultTol);
cplx vtheta_lower_edge_eps(const PlanckParam& p, double y, double tol = kDefaultTol);
// e^{theta y/2} V(y - i pi), i.e. |r|^{pi/hbar} V(log|r| - i pi) with y = log|r|.
cplx vtheta_lower_edge_dressed(const PlanckParam& p, double y, double tol = kDefaultTol);

// Real-axis phase: V(x) = exp(i * vtheta_phase(x)).
double vtheta_phase(const PlanckParam& p, double x, double tol = kDefaultTol);

cplx fh_scalar(const PlanckParam& p, const DeltaRealPoint& pt, double tol = kDefaultTol);

// F(a, nu) = even + i * odd * nu for a commuting reflection nu.
struct FhPieces {
    cplx even;
    cplx odd;
};
FhPieces fh_pieces(const PlanckParam& p, double a, double tol = kDefaultTol);

double reflection_residual(const PlanckParam& p, double t, double tol = kDefaultTol);
double lower_reflection_residual(const PlanckParam& p, double t, double tol = kDefaultTol);

// Columns: x, re, im.
void write_vtheta_csv(const std::string& path, const PlanckParam& p, const std::vector<double>& xs);
// Columns: r, rho, re, im.
void write_fh_csv(const std::string& path, const PlanckParam& p, const std::vector<DeltaRealPoint>& pts);

}  // namespace qbraid
