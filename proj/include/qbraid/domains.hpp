#pragma once

#include <string>
#include <vector>

#include "qbraid/hilbert.hpp"

namespace qbraid {

// (R, rho): R rho = rho R, rho^2 = chi(R != 0).
struct NPair {
    HermitianSpectral R;
    Mat rho;
};

// (b, beta): beta b = -b beta, beta^2 = chi(b != 0).
struct MPair {
    HermitianSpectral b;
    Mat beta;
};

// (R, rho_hat): rho_hat R = R rho_hat, rho_hat^2 = chi(R < 0).
struct APair {
    HermitianSpectral R;
    Mat rho_hat;
};

struct CheckItem {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed() const { return residual <= tolerance; }
};

struct Validation {
    std::vector<CheckItem> items;

    void add(std::string name, double residual, double tolerance);
    void append(const Validation& other, const std::string& prefix);
    bool passed() const;
    double worst() const;
    const CheckItem& at(const std::string& name) const;
};

Validation validate_N(const NPair& pair, const std::vector<Vec>& probes, double tol = 1e-9);
Validation validate_M(const MPair& pair, const std::vector<Vec>& probes, double tol = 1e-9);
Validation validate_A(const APair& pair, const std::vector<Vec>& probes, double tol = 1e-9);

// |R|^{il}|S|^{ik} = e^{i hbar l k}|S|^{ik}|R|^{il}, (l, k) in {-2,-1,1,2}^2.
double weyl_residual(const PlanckParam& p, const HermitianSpectral& r, const HermitianSpectral& s,
                     const std::vector<Vec>& probes);

Validation validate_N2(const PlanckParam& p, const NPair& first, const NPair& second, const std::vector<Vec>& probes,
                       double tol = 1e-8);
Validation validate_M2(const PlanckParam& p, const MPair& first, const MPair& second, const std::vector<Vec>& probes,
                       double tol = 1e-8);

// 4x4 block matrix over H+ with identity blocks (times value) at the listed
// 1-based positions.
Mat block_pattern(const std::vector<std::pair<int, int>>& positions, Index n, const std::vector<cplx>& values = {});

// Compatible pair stored in 4x4 block form over H+ (four identified copies).
// For the M system the slots read (b, beta, d, delta, f, phi) in place of
// (R, rho, S, sigma, T, tau chi(T<0)).
struct BlockSystem {
    enum class Kind { N, M };

    Kind kind = Kind::N;
    PlanckParam p;
    Grid grid;
    HermitianSpectral Rp, Sp, Tp;
    HermitianSpectral R, S, T;
    Mat rho, sigma;
    Mat tau;         // (-1)^k rho sigma
    Mat reflection;  // tau chi(T<0) for N, phi for M
    double quotient_asymmetry = 0.0;

    Index hplus_dim() const { return Rp.dim(); }
    NPair first() const { return {R, rho}; }
    NPair second() const { return {S, sigma}; }
    MPair first_m() const { return {R, rho}; }
    MPair second_m() const { return {S, sigma}; }
};

BlockSystem build_N2_standard(const PlanckParam& p, const Grid& g);
BlockSystem build_M2_standard(const PlanckParam& p, const Grid& g);

// Diagonal block H+ operators recovered from an assembled system.
struct HplusBlocks {
    Mat Rp, Sp;
};
HplusBlocks extract_hplus(const BlockSystem& sys);

// T^{is} against e^{i hbar s^2/2} R^{is} S^{-is} on probes, s in {-1,-1/2,1/2,1}.
double quotient_consistency(const PlanckParam& p, const HermitianSpectral& r, const HermitianSpectral& s,
                            const HermitianSpectral& t, const std::vector<Vec>& probes);

APair map_N_to_A(const NPair& pair);
MPair map_N_to_M(const NPair& pair);
NPair map_M_to_N_tensor(const MPair& carrier, const MPair& pair);

}  // namespace qbraid
