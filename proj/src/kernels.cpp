#include "qbraid/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

namespace qbraid {

namespace {

void require_positive(double a, const char* what) {
    if (!(a > 0.0)) throw DomainError(what);
}

double norm_const(const PlanckParam& p) { return 1.0 / std::sqrt(2.0 * kPi * std::abs(p.hbar)); }

cplx phase(double x) { return std::polar(1.0, x); }

// <Phi_r|Psi_t> = conj <Psi_t|Phi_r>.
cplx phi_psi(double r, double t, const PlanckParam& p) { return std::conj(overlap(KernelKind::PsiPhi, t, r, p)); }

}  // namespace

const char* to_string(KernelKind k) {
    switch (k) {
        case KernelKind::OmegaPhi: return "OmegaPhi";
        case KernelKind::PsiPhi: return "PsiPhi";
        case KernelKind::OmegaPsi: return "OmegaPsi";
    }
    return "?";
}

cplx overlap(KernelKind kind, double a, double b, const PlanckParam& p) {
    require_positive(a, "overlap arguments must be positive");
    require_positive(b, "overlap arguments must be positive");
    const double la = std::log(a), lb = std::log(b), h = p.hbar;
    const double c = norm_const(p);
    switch (kind) {
        case KernelKind::OmegaPhi: return c * phase(-la * lb / h);
        case KernelKind::PsiPhi: return c * phase(-lb * lb / (2.0 * h) - lb * la / h);
        case KernelKind::OmegaPsi: return c * phase(kPi / 4.0 - (lb - la) * (lb - la) / (2.0 * h));
    }
    throw DomainError("unknown kernel kind");
}

cplx overlap_omega_psi_quadrature(double r, double t, const PlanckParam& p) {
    require_positive(r, "overlap arguments must be positive");
    require_positive(t, "overlap arguments must be positive");
    if (!(p.hbar > 0.0)) throw DomainError("quadrature oracle needs hbar > 0");
    const double h = p.hbar;
    const double b = (std::log(t) - std::log(r)) / h;
    using GL = boost::math::quadrature::gauss<double, 10>;
    const auto& nodes = GL::abscissa();
    const auto& weights = GL::weights();

    const std::vector<double> eps = {1e-2, 1e-3, 1e-4};
    std::vector<cplx> val;
    for (double e : eps) {
        // e^{-e X^2} below 1e-17 outside [-X, X].
        const double X = std::sqrt(40.0 / e);
        // Local wavelength 2 pi hbar/|x + b hbar|; a quarter of it per panel at the edge.
        const double h_panel = 0.25 * 2.0 * kPi * h / (X + std::abs(b) * h);
        const long panels = static_cast<long>(std::ceil(2.0 * X / h_panel));
        const double w = 2.0 * X / panels;
        cplx acc = 0.0;
        for (long k = 0; k < panels; ++k) {
            const double mid = -X + (k + 0.5) * w;
            for (size_t i = 0; i < nodes.size(); ++i) {
                for (double sgn : {-1.0, 1.0}) {
                    if (nodes[i] == 0.0 && sgn < 0) continue;
                    const double x = mid + sgn * 0.5 * w * nodes[i];
                    acc += weights[i] * std::exp(cplx(-e * x * x, x * x / (2.0 * h) + b * x));
                }
            }
        }
        val.push_back(acc * (0.5 * w) / (2.0 * kPi * h));
    }
    // Neville to eps = 0.
    std::vector<cplx> q = val;
    for (size_t m = 1; m < q.size(); ++m)
        for (size_t i = q.size() - 1; i >= m; --i)
            q[i] = (eps[i - m] * q[i] - eps[i] * q[i - 1]) / (eps[i - m] - eps[i]);
    return q.back();
}

double identity_omfi_residual(double r, double s, const PlanckParam& p) {
    return std::abs(overlap(KernelKind::OmegaPhi, r, s, p) - overlap(KernelKind::OmegaPhi, s, r, p));
}

double identity_pom1_residual(double r, double s, double t, const PlanckParam& p) {
    const double lr = std::log(r), lt = std::log(t), h = p.hbar;
    const cplx psi_phi_s = overlap(KernelKind::PsiPhi, t, s, p);
    const cplx lhs = phase(-kPi / 4.0 + lt * lt / (2.0 * h)) * overlap(KernelKind::OmegaPsi, r, t, p) * psi_phi_s;
    const cplx rhs = phase(-lr * lr / h) * phi_psi(r, t, p) * psi_phi_s;
    return std::abs(lhs - rhs);
}

double identity_pom2_residual(const std::function<cplx(double)>& f, double r, double s, double t,
                              const PlanckParam& p) {
    require_positive(r, "identity arguments must be positive");
    require_positive(s, "identity arguments must be positive");
    require_positive(t, "identity arguments must be positive");
    const double lr = std::log(r), ls = std::log(s), lt = std::log(t), h = p.hbar;
    const double ti = 1.0 / t;
    const cplx lhs = f(std::log(ti)) * phi_psi(s, ti, p) * overlap(KernelKind::PsiPhi, ti, r, p);
    const cplx rhs = f(-lt) * phase(-lr * lr / h + ls * ls / h) * overlap(KernelKind::PsiPhi, t, s, p) * phi_psi(r, t, p);
    return std::abs(lhs - rhs);
}

double identity_pom20_residual(double r, double s, double t, const PlanckParam& p) {
    return identity_pom2_residual([&p](double x) { return vtheta(p, x); }, r, s, t, p);
}

IdentitySweep identity_sweep(const PlanckParam& p, int points, double lim) {
    if (points < 2) throw DomainError("identity sweep needs at least two points per axis");
    std::vector<double> axis;
    for (int i = 0; i < points; ++i) axis.push_back(std::exp(-lim + 2.0 * lim * i / (points - 1)));
    // Nonconstant test function with modulus varying along the axis.
    auto f = [](double x) { return cplx(std::cos(x) + 2.0, std::sin(3.0 * x)); };
    IdentitySweep out;
    for (double r : axis)
        for (double s : axis) {
            out.omfi = std::max(out.omfi, identity_omfi_residual(r, s, p));
            for (double t : axis) {
                out.pom1 = std::max(out.pom1, identity_pom1_residual(r, s, t, p));
                out.pom20 = std::max(out.pom20, identity_pom20_residual(r, s, t, p));
                out.pom2 = std::max(out.pom2, identity_pom2_residual(f, r, s, t, p));
            }
        }
    return out;
}

const char* to_string(EfVariant v) {
    switch (v) {
        case EfVariant::Ef: return "ef";
        case EfVariant::Efw: return "efw";
        case EfVariant::Efwt: return "efwt";
    }
    return "?";
}

double identity_ef_matrix_residual(const PlanckParam& p, const Grid& g, EfVariant variant) {
    const CanonicalPair base = canonical_zakrzewski_pair(p, g);
    const HermitianSpectral t = zakrzewski_quotient(base.R, base.S);
    const Index n = g.n;

    Eigen::VectorXcd v(n), vl(n), wl(n);
    for (Index i = 0; i < n; ++i) {
        const double y = std::log(t.eigenvalues()[i]);
        if (variant == EfVariant::Ef) {
            v[i] = phase(vtheta_phase(p, y));
        } else {
            vl[i] = vtheta_lower_edge_pv(p, y);
            wl[i] = vtheta_lower_edge_dressed(p, y);
        }
    }
    const Mat F = fourier_F(p, base.S, t);
    Eigen::VectorXcd d(n);
    for (int j = 0; j < n; ++j) d[j] = phase(-g.x(j) * g.x(j) / p.hbar);

    Mat lhs, rhs;
    const cplx dress = cplx(0.0, double(p.parity())) * p.c_prime;
    switch (variant) {
        case EfVariant::Ef: {
            const Mat V = t.apply_values(v);
            lhs = F * V.adjoint();
            rhs = p.c_prime * V.transpose() * d.asDiagonal();
            break;
        }
        case EfVariant::Efw: {
            lhs = F * t.apply_values(vl).adjoint();
            rhs = dress * t.apply_values(wl).transpose() * d.asDiagonal();
            break;
        }
        case EfVariant::Efwt: {
            lhs = F * t.apply_values(wl).adjoint();
            rhs = dress * t.apply_values(vl).transpose() * d.asDiagonal();
            break;
        }
    }

    constexpr int kCentres = 13;
    constexpr double kSigma = 0.5;
    Mat win = Mat::Zero(n, kCentres);
    for (int c = 0; c < kCentres; ++c) {
        const double centre = -0.375 * g.length() + 0.75 * g.length() * c / (kCentres - 1);
        for (int j = 0; j < n; ++j) {
            const double z = (g.x(j) - centre) / kSigma;
            win(j, c) = std::exp(-0.5 * z * z);
        }
        win.col(c).normalize();
    }
    const Mat a = win.transpose() * lhs * win;
    const Mat b = win.transpose() * rhs * win;
    // Elements below 1e-6 of the largest are numerically zero; their relative error is noise.
    const double floor = 1e-6 * b.cwiseAbs().maxCoeff();
    std::vector<double> rel;
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            if (std::abs(b(i, j)) >= floor) rel.push_back(std::abs(a(i, j) - b(i, j)) / std::abs(b(i, j)));
    auto mid = rel.begin() + rel.size() / 2;
    std::nth_element(rel.begin(), mid, rel.end());
    return *mid;
}

void write_kernel_csv(const std::string& path, const PlanckParam& p, KernelKind kind, const std::vector<double>& as,
                      const std::vector<double>& bs) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out.precision(17);
    out << "a,b,re,im\n";
    for (double a : as)
        for (double b : bs) {
            const cplx v = overlap(kind, a, b, p);
            out << a << ',' << b << ',' << v.real() << ',' << v.imag() << '\n';
        }
}

void write_identity_csv(const std::string& path, const PlanckParam& p, int points, double lim) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out.precision(17);
    out << "r,s,t,omfi,pom1,pom20\n";
    std::vector<double> axis;
    for (int i = 0; i < points; ++i) axis.push_back(std::exp(-lim + 2.0 * lim * i / std::max(points - 1, 1)));
    for (double r : axis)
        for (double s : axis)
            for (double t : axis)
                out << r << ',' << s << ',' << t << ',' << identity_omfi_residual(r, s, p) << ','
                    << identity_pom1_residual(r, s, t, p) << ',' << identity_pom20_residual(r, s, t, p) << '\n';
}

}  // namespace qbraid
