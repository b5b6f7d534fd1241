#include "qbraid/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace qbraid {

RVec Grid::points() const {
    RVec x(n);
    for (int j = 0; j < n; ++j) x[j] = this->x(j);
    return x;
}

RVec Grid::frequencies() const {
    RVec k(n);
    for (int m = 0; m < n; ++m) k[m] = xi(m);
    return k;
}

Grid make_grid(int n, double length, double x0) {
    if (n < 8) throw DomainError("grid needs n >= 8");
    if (!(length > 0.0)) throw DomainError("grid length must be positive");
    return Grid{n, x0, length / n};
}

Grid make_grid(int n, double length) { return make_grid(n, length, -0.5 * length); }

double hermiticity_residual(const Mat& a) {
    double scale = std::max(a.norm(), 1e-300);
    return (a - a.adjoint()).norm() / scale;
}

double unitarity_residual(const Mat& u) {
    Mat d = u.adjoint() * u;
    d.diagonal().array() -= 1.0;
    return d.cwiseAbs().maxCoeff();
}

LinOp::LinOp(Mat m, unsigned f, double tol) : matrix(std::move(m)), flags(f) {
    if (matrix.rows() != matrix.cols()) throw DimensionMismatch("LinOp must be square");
    if (has(kHermitian) && hermiticity_residual(matrix) > tol) throw DomainError("LinOp: not Hermitian");
    if (has(kUnitary) && unitarity_residual(matrix) > tol) throw DomainError("LinOp: not unitary");
    if (has(kDiagonal)) {
        Mat off = matrix;
        off.diagonal().setZero();
        if (off.cwiseAbs().maxCoeff() > tol * std::max(1.0, matrix.cwiseAbs().maxCoeff()))
            throw DomainError("LinOp: not diagonal");
    }
    if (has(kPositive)) {
        Mat h = 0.5 * (matrix + matrix.adjoint());
        Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0)
            throw DomainError("LinOp: not positive");
    }
}

HermitianSpectral::HermitianSpectral(RVec eigenvalues, Mat eigenvectors) {
    if (eigenvectors.rows() != eigenvectors.cols() || eigenvectors.cols() != eigenvalues.size())
        throw DimensionMismatch("HermitianSpectral: shape mismatch");
    const Index n = eigenvalues.size();
    std::vector<Index> order(n);
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return eigenvalues[a] < eigenvalues[b]; });
    lambda_.resize(n);
    u_.resize(n, n);
    for (Index i = 0; i < n; ++i) {
        lambda_[i] = eigenvalues[order[i]];
        u_.col(i) = eigenvectors.col(order[i]);
    }
}

HermitianSpectral HermitianSpectral::from_matrix(const Mat& a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("from_matrix: not square");
    Mat h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    if (es.info() != Eigen::Success) throw EigendecompositionFailure("Hermitian eigensolver did not converge");
    HermitianSpectral out;
    out.lambda_ = es.eigenvalues();
    out.u_ = es.eigenvectors();
    out.numerical_ = true;
    return out;
}

HermitianSpectral HermitianSpectral::diagonal(const RVec& d) {
    return HermitianSpectral(d, Mat::Identity(d.size(), d.size()));
}

Mat HermitianSpectral::apply_values(const Eigen::VectorXcd& values) const {
    return (u_.array().rowwise() * values.transpose().array()).matrix() * u_.adjoint();
}

Mat HermitianSpectral::apply(const std::function<cplx(double)>& f) const {
    Eigen::VectorXcd v(dim());
    for (Index i = 0; i < dim(); ++i) v[i] = f(lambda_[i]);
    return apply_values(v);
}

Mat HermitianSpectral::matrix() const { return apply_values(lambda_.cast<cplx>()); }

HermitianSpectral HermitianSpectral::scaled(double m) const {
    HermitianSpectral out(lambda_ * m, u_);
    out.numerical_ = numerical_;
    return out;
}

double HermitianSpectral::reconstruction_residual(const Mat& a) const {
    return (a - matrix()).norm() / std::max(a.norm(), 1e-300);
}

int HermitianSpectral::sign_of(Index i) const {
    const double l = lambda_[i];
    if (l == 0.0) return 0;
    if (!numerical_) return l > 0.0 ? 1 : -1;
    const double scale = lambda_.cwiseAbs().maxCoeff();
    if (std::abs(l) <= kZeroTol * scale) return 0;
    if (std::abs(l) < kBoundaryGuard) throw BoundaryEigenvalue("eigenvalue within the boundary guard of 0");
    return l > 0.0 ? 1 : -1;
}

HermitianSpectral direct_sum(const std::vector<HermitianSpectral>& parts) {
    Index n = 0;
    bool numerical = false;
    for (const auto& p : parts) {
        n += p.dim();
        numerical = numerical || p.numerical();
    }
    RVec l(n);
    Mat u = Mat::Zero(n, n);
    Index off = 0;
    for (const auto& p : parts) {
        l.segment(off, p.dim()) = p.eigenvalues();
        u.block(off, off, p.dim(), p.dim()) = p.eigenvectors();
        off += p.dim();
    }
    HermitianSpectral out(l, u);
    out.set_numerical(numerical);
    return out;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

HermitianSpectral kron(const HermitianSpectral& a, const HermitianSpectral& b) {
    RVec l(a.dim() * b.dim());
    for (Index i = 0; i < a.dim(); ++i) l.segment(i * b.dim(), b.dim()) = a.eigenvalues()[i] * b.eigenvalues();
    HermitianSpectral out(l, kron(a.eigenvectors(), b.eigenvectors()));
    out.set_numerical(a.numerical() || b.numerical());
    return out;
}

Mat block_diag(const std::vector<Mat>& parts) {
    Index n = 0;
    for (const auto& p : parts) n += p.rows();
    Mat out = Mat::Zero(n, n);
    Index off = 0;
    for (const auto& p : parts) {
        out.block(off, off, p.rows(), p.cols()) = p;
        off += p.rows();
    }
    return out;
}

Mat func_of_hermitian(const Mat& a, const std::function<cplx(double)>& f) {
    return HermitianSpectral::from_matrix(a).apply(f);
}

Mat func_of_hermitian(const HermitianSpectral& a, const std::function<cplx(double)>& f) { return a.apply(f); }

namespace {

Eigen::VectorXcd indicator(const HermitianSpectral& a, Region region) {
    Eigen::VectorXcd v(a.dim());
    for (Index i = 0; i < a.dim(); ++i) {
        int s = a.sign_of(i);
        bool in = false;
        switch (region) {
            case Region::Negative: in = s < 0; break;
            case Region::Positive: in = s > 0; break;
            case Region::Zero: in = s == 0; break;
            case Region::NonZero: in = s != 0; break;
            case Region::NonNegative: in = s >= 0; break;
        }
        v[i] = in ? 1.0 : 0.0;
    }
    return v;
}

Eigen::VectorXcd sign_values(const HermitianSpectral& a) {
    Eigen::VectorXcd v(a.dim());
    for (Index i = 0; i < a.dim(); ++i) v[i] = double(a.sign_of(i));
    return v;
}

Eigen::VectorXcd imag_power_values(const HermitianSpectral& a, double s) {
    Eigen::VectorXcd v(a.dim());
    for (Index i = 0; i < a.dim(); ++i)
        v[i] = a.sign_of(i) == 0 ? cplx(0.0) : std::polar(1.0, s * std::log(std::abs(a.eigenvalues()[i])));
    return v;
}

}  // namespace

Mat spectral_projection(const HermitianSpectral& a, Region region) { return a.apply_values(indicator(a, region)); }

Mat spectral_projection(const Mat& a, Region region) {
    return spectral_projection(HermitianSpectral::from_matrix(a), region);
}

Mat sign_op(const HermitianSpectral& a) { return a.apply_values(sign_values(a)); }

Mat sign_op(const Mat& a) { return sign_op(HermitianSpectral::from_matrix(a)); }

Mat imag_power(const HermitianSpectral& a, double s) { return a.apply_values(imag_power_values(a, s)); }

Mat log_abs(const HermitianSpectral& a) {
    Eigen::VectorXcd v(a.dim());
    for (Index i = 0; i < a.dim(); ++i)
        v[i] = a.sign_of(i) == 0 ? 0.0 : std::log(std::abs(a.eigenvalues()[i]));
    return a.apply_values(v);
}

Mat z_transform(const Mat& t) {
    Mat h = t.adjoint() * t;
    Mat root = func_of_hermitian(h, [](double l) { return cplx(1.0 / std::sqrt(1.0 + std::max(l, 0.0))); });
    return t * root;
}

Mat z_transform(const HermitianSpectral& a) {
    return a.apply([](double l) { return cplx(l / std::hypot(1.0, l)); });
}

Vec conjugation_J(const Vec& v) { return v.conjugate(); }

Mat conjugate_op(const Mat& a) { return a.conjugate(); }

Mat dft_matrix(int n) {
    Mat f(n, n);
    const double s = 1.0 / std::sqrt(double(n));
    for (int j = 0; j < n; ++j)
        for (int m = 0; m < n; ++m) {
            long long jm = (static_cast<long long>(j) * m) % n;
            f(j, m) = std::polar(s, -2.0 * kPi * double(jm) / n);
        }
    return f;
}

CanonicalPair canonical_zakrzewski_pair(const PlanckParam& p, const Grid& g) {
    if (!(std::abs(p.hbar) < kPi)) throw DomainError("canonical pair needs |hbar| < pi");
    RVec lr(g.n), ls(g.n);
    for (int m = 0; m < g.n; ++m) lr[m] = std::exp(p.hbar * g.xi(m));
    for (int j = 0; j < g.n; ++j) ls[j] = std::exp(g.x(j));
    return {HermitianSpectral(lr, dft_matrix(g.n).adjoint()), HermitianSpectral::diagonal(ls)};
}

CanonicalPair canonical_pair_with_signs(const std::vector<int>& u, const std::vector<int>& v, const PlanckParam& p,
                                        const Grid& g) {
    if (u.size() != v.size() || u.empty()) throw DimensionMismatch("sign patterns must have equal nonzero length");
    RVec du(u.size()), dv(v.size());
    for (size_t i = 0; i < u.size(); ++i) {
        if (std::abs(u[i]) != 1 || std::abs(v[i]) != 1) throw DomainError("sign patterns must be +-1");
        du[i] = u[i];
        dv[i] = v[i];
    }
    auto base = canonical_zakrzewski_pair(p, g);
    // Keep the eigenvector blocks in place: kron of diagonal factors.
    auto signed_copy = [](const RVec& d, const HermitianSpectral& a) {
        HermitianSpectral id = HermitianSpectral(d, Mat::Identity(d.size(), d.size()));
        return kron(id, a);
    };
    return {signed_copy(du, base.R), signed_copy(dv, base.S)};
}

HermitianSpectral polar_compose(const Mat& sgn, const Mat& log_modulus) {
    const Index n = sgn.rows();
    // Sign operators assembled from block spectra are diagonal up to round-off;
    // skip the eigensolver for them.
    Mat off = sgn;
    off.diagonal().setZero();
    RVec d = sgn.diagonal().real();
    const bool diagonal = (n == 0 || off.cwiseAbs().maxCoeff() < 1e-12) &&
                          (d.array() - d.array().round()).abs().maxCoeff() < 1e-12;

    Mat basis;
    RVec signs;
    if (diagonal) {
        basis = Mat::Identity(n, n);
        signs = d.array().round().matrix();
    } else {
        auto es = HermitianSpectral::from_matrix(sgn);
        basis = es.eigenvectors();
        signs = es.eigenvalues();
    }
    RVec lam(n);
    Mat u(n, n);
    Index filled = 0;
    for (int target : {-1, 0, 1}) {
        std::vector<Index> idx;
        for (Index i = 0; i < n; ++i)
            if (std::abs(signs[i] - target) < 0.5) idx.push_back(i);
        if (idx.empty()) continue;
        Mat v(n, Index(idx.size()));
        for (size_t c = 0; c < idx.size(); ++c) v.col(Index(c)) = basis.col(idx[c]);
        if (target == 0) {
            u.middleCols(filled, v.cols()) = v;
            lam.segment(filled, v.cols()).setZero();
        } else {
            Mat g = v.adjoint() * log_modulus * v;
            auto es = HermitianSpectral::from_matrix(g);
            u.middleCols(filled, v.cols()) = v * es.eigenvectors();
            lam.segment(filled, v.cols()) = target * es.eigenvalues().array().exp();
        }
        filled += v.cols();
    }
    if (filled != n) throw EigendecompositionFailure("sign operator has eigenvalues outside {-1, 0, 1}");
    return HermitianSpectral(lam, u);
}

namespace {
Mat quotient_log(const HermitianSpectral& r, const HermitianSpectral& s) { return log_abs(r) - log_abs(s); }
}  // namespace

double quotient_asymmetry(const HermitianSpectral& r, const HermitianSpectral& s) {
    return hermiticity_residual(quotient_log(r, s));
}

HermitianSpectral zakrzewski_quotient(const HermitianSpectral& r, const HermitianSpectral& s) {
    if (r.dim() != s.dim()) throw DimensionMismatch("quotient: dimension mismatch");
    Mat g = quotient_log(r, s);
    g = 0.5 * (g + g.adjoint());
    Mat sgn = sign_op(s) * sign_op(r);
    return polar_compose(0.5 * (sgn + sgn.adjoint()), g);
}

Mat fourier_F(const PlanckParam& p, const HermitianSpectral& s, const HermitianSpectral& t) {
    const double h = p.hbar;
    auto chirp = [h](double c) {
        return [h, c](double l) -> cplx {
            if (!(l > 0.0)) throw DomainError("fourier_F needs positive S and T");
            double lg = std::log(l);
            return std::polar(1.0, -lg * lg / (c * h));
        };
    };
    return std::polar(1.0, kPi / 4.0) * s.apply(chirp(1.0)) * t.apply(chirp(2.0));
}

std::vector<Vec> make_probes(const Grid& g, const PlanckParam& p, int count, std::uint64_t seed, int blocks,
                             ProbeOptions opt) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> centre(-opt.centre_range, opt.centre_range);
    std::uniform_real_distribution<double> kick(-opt.momentum_range, opt.momentum_range);
    std::uniform_real_distribution<double> amp(0.5, 1.0);
    std::uniform_real_distribution<double> phase(-kPi, kPi);
    const double mid = g.x0 + 0.5 * g.length();
    std::vector<Vec> out;
    for (int c = 0; c < count; ++c) {
        Vec w(Index(g.n) * blocks);
        for (int b = 0; b < blocks; ++b) {
            double x_c = mid + centre(rng);
            double p0 = kick(rng);
            cplx a = std::polar(amp(rng), phase(rng));
            for (int j = 0; j < g.n; ++j) {
                double x = g.x(j);
                double d = (x - x_c) / opt.sigma;
                w[Index(b) * g.n + j] = a * std::exp(cplx(-0.5 * d * d, p0 * x / std::abs(p.hbar)));
            }
        }
        w /= w.norm();
        out.push_back(std::move(w));
    }
    return out;
}

double probe_residual(const Mat& a, const Mat& b, const std::vector<Vec>& probes) {
    double worst = 0.0;
    for (const auto& w : probes) worst = std::max(worst, (a * w - b * w).norm() / w.norm());
    return worst;
}

double probe_norm(const Mat& x, const std::vector<Vec>& probes) {
    double worst = 0.0;
    for (const auto& w : probes) worst = std::max(worst, (x * w).norm() / w.norm());
    return worst;
}

double commutation_residual(const Mat& a, const Mat& b, Style style, const std::vector<Vec>& probes) {
    if (probes.empty()) throw DomainError("commutation_residual needs probes");
    const double sgn = style == Style::Commute ? -1.0 : 1.0;
    double worst = 0.0;
    for (const auto& w : probes) {
        Vec r = a * (b * w) + sgn * (b * (a * w));
        worst = std::max(worst, r.norm() / w.norm());
    }
    return worst;
}

Action act(const Mat& m) {
    const Mat* pm = &m;
    return [pm](const Vec& w) -> Vec { return (*pm) * w; };
}

Action act_values(const HermitianSpectral& a, Eigen::VectorXcd values) {
    const Mat* u = &a.eigenvectors();
    return [u, values = std::move(values)](const Vec& w) -> Vec {
        Vec c = u->adjoint() * w;
        return (*u) * c.cwiseProduct(values);
    };
}

Action act(const HermitianSpectral& a, const std::function<cplx(double)>& f) {
    Eigen::VectorXcd v(a.dim());
    for (Index i = 0; i < a.dim(); ++i) v[i] = f(a.eigenvalues()[i]);
    return act_values(a, std::move(v));
}

Action act_imag_power(const HermitianSpectral& a, double s) { return act_values(a, imag_power_values(a, s)); }
Action act_sign(const HermitianSpectral& a) { return act_values(a, sign_values(a)); }
Action act_projection(const HermitianSpectral& a, Region region) { return act_values(a, indicator(a, region)); }

Action act_z(const HermitianSpectral& a) {
    return act(a, [](double l) { return cplx(l / std::hypot(1.0, l)); });
}

Action compose(Action outer, Action inner) {
    return [outer = std::move(outer), inner = std::move(inner)](const Vec& w) -> Vec { return outer(inner(w)); };
}

Action scale(cplx c, Action a) {
    return [c, a = std::move(a)](const Vec& w) -> Vec { return c * a(w); };
}

double commutation_residual(const Action& a, const Action& b, Style style, const std::vector<Vec>& probes) {
    if (probes.empty()) throw DomainError("commutation_residual needs probes");
    const double sgn = style == Style::Commute ? -1.0 : 1.0;
    double worst = 0.0;
    for (const auto& w : probes) worst = std::max(worst, (a(b(w)) + sgn * b(a(w))).norm() / w.norm());
    return worst;
}

double probe_residual(const Action& a, const Action& b, const std::vector<Vec>& probes) {
    double worst = 0.0;
    for (const auto& w : probes) worst = std::max(worst, (a(w) - b(w)).norm() / w.norm());
    return worst;
}

cplx spectral_form(const HermitianSpectral& a, const Vec& w, const Vec& v) {
    Vec cw = a.eigenvectors().adjoint() * w;
    Vec cv = a.eigenvectors().adjoint() * v;
    cplx acc = 0.0;
    for (Index i = 0; i < a.dim(); ++i) acc += std::conj(cw[i]) * a.eigenvalues()[i] * cv[i];
    return acc;
}

Action conjugated(Action a) {
    return [a](const Vec& w) -> Vec { return a(w.conjugate()).conjugate(); };
}

FourierChecks fourier_checks(const PlanckParam& p, const Grid& g, const std::vector<Vec>& probes) {
    const CanonicalPair base = canonical_zakrzewski_pair(p, g);
    const HermitianSpectral t = zakrzewski_quotient(base.R, base.S);
    const Mat F = fourier_F(p, base.S, t);
    const Mat Fa = F.adjoint();
    FourierChecks out;
    out.unitarity = unitarity_residual(F);

    Mat direct(g.n, g.n);
    const double c = g.dx / std::sqrt(2.0 * kPi * std::abs(p.hbar));
    for (int j = 0; j < g.n; ++j)
        for (int l = 0; l < g.n; ++l) direct(j, l) = c * std::polar(1.0, -g.x(j) * g.x(l) / p.hbar);
    out.defF = probe_residual(act(F), act(direct), probes);

    const Action f = act(F);
    const Action fa = act(Fa);
    out.fj = probe_residual(compose(f, conjugated([](const Vec& w) { return w; })), conjugated(fa), probes);
    for (double s : {-1.0, -0.5, 0.5, 1.0}) {
        const Action rs = act_imag_power(base.R, s);
        const Action ss = act_imag_power(base.S, s);
        const Action ts = act_imag_power(t, s);
        out.fr = std::max(out.fr, probe_residual(compose(f, compose(rs, fa)), ss, probes));
        out.fr = std::max(out.fr, probe_residual(compose(f, compose(ss, fa)), act_imag_power(base.R, -s), probes));
        out.ftf = std::max(out.ftf, probe_residual(conjugated(ts), compose(f, compose(ts, fa)), probes));
        out.jrj = std::max(out.jrj, probe_residual(conjugated(rs), rs, probes));
    }
    return out;
}

}  // namespace qbraid
