#include "qbraid/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace qbraid {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr double kTwoPi = 2.0 * kPi;
constexpr double kLeftCut = 60.0;    // e^-60 below double resolution of the exponent
constexpr double kRightDecay = 45.0; // theta*u beyond this: log1p(e^-theta u) < 1e-19

double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

// log(1 + e^{-theta u}) without overflow.
double ell(double theta, double u) { return softplus(-theta * u); }

void require_positive_theta(const PlanckParam& p) {
    if (!(p.hbar > 0.0) || !(p.theta > 0.0))
        throw DomainError("V_theta needs hbar > 0: the defining integral diverges for theta < 0");
}

cplx cexpm1(cplx z) {
    double a = z.real(), b = z.imag();
    double s = std::sin(0.5 * b);
    return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

// Bisection driven by |K61 - K31|; the built-in error estimate of the
// adaptive routine is far too pessimistic near the lower-edge pole.
template <class F>
auto panel(F& f, double a, double b, double atol, int depth, double& err) {
    auto k61 = gauss_kronrod<double, 61>::integrate(f, a, b, 0, 0.0);
    auto k31 = gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0);
    double diff = std::abs(k61 - k31);
    if (diff <= atol || diff <= 1e-15 * std::abs(k61) || depth == 0) {
        err += diff;
        return k61;
    }
    double m = 0.5 * (a + b);
    return panel(f, a, m, 0.5 * atol, depth - 1, err) + panel(f, m, b, 0.5 * atol, depth - 1, err);
}

template <class T>
struct Accum {
    T value{};
    double error = 0.0;
    double atol = 1e-13;

    template <class F>
    void add(F&& f, double a, double b) {
        if (!(b > a)) return;
        value += panel(f, a, b, atol, 40, error);
    }
};

std::vector<double> breakpoints(double lo, double hi, std::initializer_list<double> inner) {
    std::vector<double> pts{lo, hi};
    for (double c : inner)
        if (c > lo && c < hi) pts.push_back(c);
    std::sort(pts.begin(), pts.end());
    return pts;
}

double upper_cut(const PlanckParam& p, double start) { return std::max(start, 0.0) + kRightDecay / p.theta + 1.0; }

void check_budget(double error, double tol, const char* what) {
    if (!std::isfinite(error) || error > kTwoPi * tol)
        throw NonConvergence(std::string(what) + ": quadrature error estimate above tolerance");
}

// Integral of L(u)/(1 + e^{-(x+u)}) over the real line, complex x.
cplx exponent_integral(const PlanckParam& p, cplx x, double tol, std::vector<double> extra = {}) {
    const double th = p.theta;
    const double c = -x.real();
    // Near Im x = +-pi write 1 + e^{-z} = -expm1(-(z - i pi)) to keep the pole resolved.
    const bool near_edge = std::abs(x.imag()) > kPi / 2.0;
    const cplx shift = near_edge ? x - cplx(0.0, std::copysign(kPi, x.imag())) : x;
    auto f = [th, shift, near_edge](double u) -> cplx {
        cplx z = shift + u;
        cplx denom = near_edge ? -cexpm1(-z) : 1.0 + std::exp(-z);
        return ell(th, u) / denom;
    };
    const double lo = std::min(0.0, c) - kLeftCut;
    const double hi = upper_cut(p, c);
    auto pts = breakpoints(lo, hi, {0.0, c});
    for (double e : extra)
        if (e > lo && e < hi) pts.push_back(e);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    Accum<cplx> acc;
    for (size_t i = 0; i + 1 < pts.size(); ++i) acc.add(f, pts[i], pts[i + 1]);
    check_budget(acc.error, tol, "vtheta");
    return acc.value;
}

// Principal value of int L(u) / (1 - e^{-(u - u0)}) du, u0 = -y.
double lower_edge_pv_integral(const PlanckParam& p, double y, double tol) {
    const double th = p.theta;
    const double u0 = -y;
    const double h = 0.5;
    Accum<double> acc;

    // Symmetric fold around the pole. For u0 < 0 the linear part -theta*u of L
    // is folded in closed form, leaving a small smooth remainder.
    const bool linear = u0 < 0.0;
    auto rest = [th, linear](double u) { return linear ? std::log1p(std::exp(th * u)) : ell(th, u); };
    auto mid = [&](double s) {
        double cp = -1.0 / std::expm1(-s);
        double cm = -1.0 / std::expm1(s);
        double v = rest(u0 + s) * cp + rest(u0 - s) * cm;
        if (linear) {
            double scoth = (s < 1e-8) ? 2.0 : s / std::tanh(0.5 * s);
            v += -th * (u0 + scoth);
        }
        return v;
    };
    acc.add(mid, 0.0, h);

    auto q = [th, u0](double u) { return ell(th, u) / (-std::expm1(u0 - u)); };
    const double lo = std::min(u0, 0.0) - h - kLeftCut;
    auto left = breakpoints(lo, u0 - h, {0.0});
    for (size_t i = 0; i + 1 < left.size(); ++i) acc.add(q, left[i], left[i + 1]);
    auto right = breakpoints(u0 + h, upper_cut(p, u0 + h), {0.0});
    for (size_t i = 0; i + 1 < right.size(); ++i) acc.add(q, right[i], right[i + 1]);

    check_budget(acc.error, tol, "vtheta_lower_edge");
    return acc.value;
}

// Neville extrapolation of samples (h_i, v_i) to h = 0.
cplx neville_at_zero(const std::vector<double>& h, std::vector<cplx> v) {
    const size_t n = h.size();
    for (size_t m = 1; m < n; ++m)
        for (size_t i = 0; i + m < n; ++i)
            v[i] = (h[i + m] * v[i] - h[i] * v[i + 1]) / (h[i + m] - h[i]);
    return v[0];
}

}  // namespace

PlanckParam make_planck(int k, int sign) {
    if (k < 0) throw DomainError("k must be nonnegative");
    if (sign != 1 && sign != -1) throw DomainError("sign must be +1 or -1");
    PlanckParam p;
    p.k = k;
    p.sign = sign;
    p.hbar = sign * kPi / (2.0 * k + 3.0);
    p.theta = kTwoPi / p.hbar;
    double arg = kPi / 4.0 + p.hbar / 24.0 + kPi * kPi / (6.0 * p.hbar);
    p.c_prime = std::polar(1.0, std::remainder(arg, kTwoPi));
    return p;
}

PlanckParam with_theta(PlanckParam p, double theta) {
    p.theta = theta;
    return p;
}

void check_point(const DeltaRealPoint& pt) {
    if (!std::isfinite(pt.r)) throw DomainError("r must be finite");
    if (pt.rho < -1 || pt.rho > 1) throw DomainError("rho must be -1, 0 or 1");
    if (pt.r > 0.0 && pt.rho != 0) throw DomainError("r > 0 requires rho = 0");
    if (pt.r < 0.0 && pt.rho == 0) throw DomainError("r < 0 requires rho = +-1");
}

double vtheta_phase(const PlanckParam& p, double x, double tol) {
    require_positive_theta(p);
    if (!(tol > 0.0)) throw DomainError("tol must be positive");
    const double th = p.theta;
    auto f = [th, x](double u) {
        double z = x + u;
        double logistic = z >= 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
        return ell(th, u) * logistic;
    };
    const double c = -x;
    auto pts = breakpoints(std::min(0.0, c) - kLeftCut, upper_cut(p, c), {0.0, c});
    Accum<double> acc;
    for (size_t i = 0; i + 1 < pts.size(); ++i) acc.add(f, pts[i], pts[i + 1]);
    check_budget(acc.error, tol, "vtheta");
    return -acc.value / kTwoPi;
}

cplx vtheta(const PlanckParam& p, cplx x, double tol) {
    require_positive_theta(p);
    if (!(tol > 0.0)) throw DomainError("tol must be positive");
    if (!(std::abs(x.imag()) < kPi)) throw DomainError("vtheta needs |Im x| < pi");
    if (x.imag() == 0.0) return std::polar(1.0, vtheta_phase(p, x.real(), tol));
    cplx integral = exponent_integral(p, x, tol);
    return std::exp(integral / cplx(0.0, kTwoPi));
}

double lower_edge_phase(const PlanckParam& p, double y, double tol) {
    require_positive_theta(p);
    return -lower_edge_pv_integral(p, y, tol) / kTwoPi;
}

cplx vtheta_lower_edge_pv(const PlanckParam& p, double y, double tol) {
    return std::exp(cplx(-0.5 * softplus(p.theta * y), lower_edge_phase(p, y, tol)));
}

cplx vtheta_lower_edge_dressed(const PlanckParam& p, double y, double tol) {
    return std::exp(cplx(-0.5 * softplus(-p.theta * y), lower_edge_phase(p, y, tol)));
}

cplx vtheta_lower_edge_eps(const PlanckParam& p, double y, double tol) {
    require_positive_theta(p);
    const std::vector<double> eps{1e-2, 1e-3, 1e-4, 1e-5};
    std::vector<cplx> vals;
    for (double e : eps) {
        // The pole sits at u = -y - i*eps; grade panels geometrically towards it.
        std::vector<double> extra;
        for (double w = e; w < 2.0; w *= 4.0) {
            extra.push_back(-y - w);
            extra.push_back(-y + w);
        }
        vals.push_back(exponent_integral(p, cplx(y, -kPi + e), tol, extra));
    }
    cplx integral = neville_at_zero(eps, vals);
    return std::exp(integral / cplx(0.0, kTwoPi));
}

LowerEdge vtheta_lower_edge_both(const PlanckParam& p, double y, double tol) {
    LowerEdge out;
    out.pv = vtheta_lower_edge_pv(p, y, tol);
    out.extrapolated = vtheta_lower_edge_eps(p, y, tol);
    out.discrepancy = std::abs(out.pv - out.extrapolated);
    return out;
}

cplx vtheta_lower_edge(const PlanckParam& p, double y, double tol) {
    LowerEdge e = vtheta_lower_edge_both(p, y, tol);
    if (e.discrepancy > tol)
        throw NonConvergence("vtheta_lower_edge: principal-value and extrapolated values disagree");
    return e.pv;
}

FhPieces fh_pieces(const PlanckParam& p, double a, double tol) {
    if (a > 0.0) return {std::polar(1.0, vtheta_phase(p, std::log(a), tol)), 0.0};
    if (a == 0.0) return {1.0, 0.0};
    double y = std::log(-a);
    double ph = lower_edge_phase(p, y, tol);
    return {std::exp(cplx(-0.5 * softplus(p.theta * y), ph)), std::exp(cplx(-0.5 * softplus(-p.theta * y), ph))};
}

cplx fh_scalar(const PlanckParam& p, const DeltaRealPoint& pt, double tol) {
    check_point(pt);
    if (pt.r == 0.0) return 1.0;
    if (pt.r > 0.0) return vtheta(p, std::log(pt.r), tol);
    double y = std::log(-pt.r);
    cplx low = vtheta_lower_edge(p, y, tol);
    return (1.0 + cplx(0.0, pt.rho) * std::exp(0.5 * p.theta * y)) * low;
}

double reflection_residual(const PlanckParam& p, double t, double tol) {
    if (!(t > 0.0)) throw DomainError("t must be positive");
    const double y = std::log(t);
    cplx lhs = std::conj(vtheta(p, y, tol));
    cplx rhs = std::polar(1.0, -kPi / 4.0 + y * y / (2.0 * p.hbar)) * p.c_prime * vtheta(p, -y, tol);
    return std::abs(lhs - rhs);
}

double lower_reflection_residual(const PlanckParam& p, double t, double tol) {
    if (!(t > 0.0)) throw DomainError("t must be positive");
    const double y = std::log(t);
    cplx lhs = std::conj(vtheta_lower_edge(p, y, tol));
    // e^{-theta y/2} V(-y - i pi) is the dressed value at -y.
    cplx dressed = std::exp(cplx(-0.5 * p.theta * y, 0.0)) * vtheta_lower_edge(p, -y, tol);
    cplx rhs = cplx(0.0, p.parity()) * p.c_prime * std::polar(1.0, -kPi / 4.0 + y * y / (2.0 * p.hbar)) * dressed;
    return std::abs(lhs - rhs);
}

void write_vtheta_csv(const std::string& path, const PlanckParam& p, const std::vector<double>& xs) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "x,re,im\n" << std::setprecision(17);
    for (double x : xs) {
        cplx v = vtheta(p, x);
        out << x << ',' << v.real() << ',' << v.imag() << '\n';
    }
}

void write_fh_csv(const std::string& path, const PlanckParam& p, const std::vector<DeltaRealPoint>& pts) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "r,rho,re,im\n" << std::setprecision(17);
    for (const auto& pt : pts) {
        cplx v = fh_scalar(p, pt);
        out << pt.r << ',' << pt.rho << ',' << v.real() << ',' << v.imag() << '\n';
    }
}

}  // namespace qbraid
