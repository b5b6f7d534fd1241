#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "qbraid/specfun.hpp"

namespace qbraid {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Index = Eigen::Index;

struct EigendecompositionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BoundaryEigenvalue : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Periodic grid x_j = x0 + j*dx, j < n, length n*dx.
struct Grid {
    int n = 256;
    double x0 = -12.0;
    double dx = 24.0 / 256.0;

    double length() const { return n * dx; }
    double x(int j) const { return x0 + j * dx; }
    // Angular frequency of DFT column m, in [-n/2, n/2) * 2pi/L.
    double xi(int m) const { return 2.0 * kPi * (m < n / 2 ? m : m - n) / length(); }
    RVec points() const;
    RVec frequencies() const;
};

Grid make_grid(int n, double length, double x0);
Grid make_grid(int n, double length);  // x0 = -length/2

// Dense operator with declared structure, checked on construction.
struct LinOp {
    enum Flag : unsigned { kNone = 0, kHermitian = 1, kUnitary = 2, kPositive = 4, kDiagonal = 8 };

    Mat matrix;
    unsigned flags = kNone;

    LinOp() = default;
    LinOp(Mat m, unsigned f, double tol = 1e-12);

    bool has(Flag f) const { return (flags & f) != 0; }
};

// A = U diag(lambda) U*, lambda ascending. Carries unbounded grid operators
// exactly: functions of A are applied through the eigenvalues, never by
// forming A itself when it is badly scaled.
class HermitianSpectral {
  public:
    HermitianSpectral() = default;
    HermitianSpectral(RVec eigenvalues, Mat eigenvectors);

    static HermitianSpectral from_matrix(const Mat& a);
    static HermitianSpectral diagonal(const RVec& d);

    const RVec& eigenvalues() const { return lambda_; }
    const Mat& eigenvectors() const { return u_; }
    Index dim() const { return lambda_.size(); }

    Mat matrix() const;
    Mat apply(const std::function<cplx(double)>& f) const;
    Mat apply_values(const Eigen::VectorXcd& values) const;
    HermitianSpectral scaled(double m) const;
    double reconstruction_residual(const Mat& a) const;

    // -1, 0, +1. Spectra from a numerical eigensolver get a relative zero
    // tolerance and the boundary guard; spectra built from exact eigenvalues
    // (exp of a logarithm, sign patterns) are taken at face value.
    int sign_of(Index i) const;
    bool numerical() const { return numerical_; }
    void set_numerical(bool v) { numerical_ = v; }

  private:
    RVec lambda_;
    Mat u_;
    bool numerical_ = false;
};

HermitianSpectral direct_sum(const std::vector<HermitianSpectral>& parts);
HermitianSpectral kron(const HermitianSpectral& a, const HermitianSpectral& b);
Mat kron(const Mat& a, const Mat& b);
Mat block_diag(const std::vector<Mat>& parts);

Mat func_of_hermitian(const Mat& a, const std::function<cplx(double)>& f);
Mat func_of_hermitian(const HermitianSpectral& a, const std::function<cplx(double)>& f);

enum class Region { Negative, Positive, Zero, NonZero, NonNegative };

// Eigenvalues with |lambda| <= zero_tol * max|lambda| count as exact zeros;
// anything else within the 1e-9 guard of the boundary is rejected.
inline constexpr double kBoundaryGuard = 1e-9;
inline constexpr double kZeroTol = 1e-13;

Mat spectral_projection(const HermitianSpectral& a, Region region);
Mat spectral_projection(const Mat& a, Region region);
Mat sign_op(const HermitianSpectral& a);
Mat sign_op(const Mat& a);

// |A|^{is} on the support of A, zero on its kernel.
Mat imag_power(const HermitianSpectral& a, double s);
// log|A| on the support, zero on the kernel.
Mat log_abs(const HermitianSpectral& a);

Mat z_transform(const Mat& t);
Mat z_transform(const HermitianSpectral& a);

Vec conjugation_J(const Vec& v);
Mat conjugate_op(const Mat& a);

Mat dft_matrix(int n);  // unitary, F_jm = e^{-2 pi i jm/n}/sqrt(n)

// R = F_dft^{-1} diag(e^{hbar xi}) F_dft, S = diag(e^{x}); both positive.
struct CanonicalPair {
    HermitianSpectral R;
    HermitianSpectral S;
};
CanonicalPair canonical_zakrzewski_pair(const PlanckParam& p, const Grid& g);
// (u (x) R0, v (x) S0) with +-1 diagonal u, v.
CanonicalPair canonical_pair_with_signs(const std::vector<int>& u, const std::vector<int>& v, const PlanckParam& p,
                                        const Grid& g);

// T = e^{i hbar/2} S^{-1} R, built from log T = sym(log R - log S) so that no
// product of unbounded matrices is ever formed. Signs must commute with both.
HermitianSpectral zakrzewski_quotient(const HermitianSpectral& r, const HermitianSpectral& s);
// Asymmetry ||X - X*||/||X|| of log R - log S before symmetrization.
double quotient_asymmetry(const HermitianSpectral& r, const HermitianSpectral& s);

// Spectral data with the sign and the modulus taken from commuting operators.
HermitianSpectral polar_compose(const Mat& sgn, const Mat& log_modulus);

// F = e^{i pi/4} e^{-i log^2 S/hbar} e^{-i log^2 T/2hbar}.
Mat fourier_F(const PlanckParam& p, const HermitianSpectral& s, const HermitianSpectral& t);

// Gaussian windows exp(-(x-c)^2/2 sigma^2 + i p0 x/hbar), one per block, normalized.
struct ProbeOptions {
    double sigma = 1.0;
    double centre_range = 3.0;
    double momentum_range = 1.0;
};
std::vector<Vec> make_probes(const Grid& g, const PlanckParam& p, int count, std::uint64_t seed, int blocks = 1,
                             ProbeOptions opt = {});

enum class Style { Commute, Anticommute };
double commutation_residual(const Mat& a, const Mat& b, Style style, const std::vector<Vec>& probes);
// max_w ||(A - B) w|| / ||w||
double probe_residual(const Mat& a, const Mat& b, const std::vector<Vec>& probes);
// max_w ||X w|| / ||w||
double probe_norm(const Mat& x, const std::vector<Vec>& probes);

// <w|A v> evaluated through the spectral data.
cplx spectral_form(const HermitianSpectral& a, const Vec& w, const Vec& v);

// Lazily applied operators, f(A) w = U (f(lambda) .* U* w). Actions built
// from a matrix or a spectral object reference it; keep it alive.
using Action = std::function<Vec(const Vec&)>;
Action act(const Mat& m);
Action act_values(const HermitianSpectral& a, Eigen::VectorXcd values);
Action act(const HermitianSpectral& a, const std::function<cplx(double)>& f);
Action act_imag_power(const HermitianSpectral& a, double s);
Action act_sign(const HermitianSpectral& a);
Action act_z(const HermitianSpectral& a);
Action act_projection(const HermitianSpectral& a, Region region);
Action compose(Action outer, Action inner);
Action scale(cplx c, Action a);

double commutation_residual(const Action& a, const Action& b, Style style, const std::vector<Vec>& probes);
double probe_residual(const Action& a, const Action& b, const std::vector<Vec>& probes);

// Action of J A J: w -> conj(A conj(w)).
Action conjugated(Action a);

// Grid checks of the Fourier operator, on probes:
//   defF  F against the direct sum dx/sqrt(2 pi hbar) e^{-i x y/hbar}
//   fr    F R^{is} F* = S^{is} and F S^{is} F* = R^{-is}
//   fj    F J = J F*
//   ftf   J T^{is} J = F T^{is} F*
//   jrj   J R^{is} J = R^{is}, i.e. J R J = R^{-1}
// with s in {-1, -1/2, 1/2, 1}.
struct FourierChecks {
    double unitarity = 0.0;
    double defF = 0.0, fr = 0.0, fj = 0.0, ftf = 0.0, jrj = 0.0;
};
FourierChecks fourier_checks(const PlanckParam& p, const Grid& g, const std::vector<Vec>& probes);

double unitarity_residual(const Mat& u);
double hermiticity_residual(const Mat& a);

}  // namespace qbraid
