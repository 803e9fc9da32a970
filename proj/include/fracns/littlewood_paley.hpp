#pragma once

#include "fracns/field.hpp"

#include <span>
#include <vector>

namespace fracns {

/// Sharp dyadic block containing |k|: -1 for |k| < 1, otherwise the j >= 0
/// with 2^j <= |k| < 2^{j+1}. Computed from |k|^2 without rounding.
int block_index(double k2);

/// Largest block index present on the grid.
int max_block(const Grid& grid);

/// Delta_j f, the indicator of block j applied to f. Requires j >= -1.
SpectralField lp_block(const SpectralField& f, int j);

enum class NormFlavor { inhomogeneous, homogeneous };

struct NormSpec {
    double s = 0.0;
    NormFlavor flavor = NormFlavor::inhomogeneous;
};

/// sum_k (1+|k|^2)^s |f(k)|^2, or sum_k |k|^{2s} |f(k)|^2 for the homogeneous
/// flavor. At s = 0 both equal the squared L^2 norm bit for bit. The
/// homogeneous flavor with s < 0 throws MeanZeroViolation on a nonzero mean.
double sobolev_norm_squared(const SpectralField& f, NormSpec spec);
double sobolev_norm(const SpectralField& f, NormSpec spec);

/// ||f||^2_{H^s} / (||Delta_{-1} f||^2 + sum_{j>=0} 2^{2js} ||Delta_j f||^2).
/// Throws UndefinedRatio for the zero field.
double lp_equivalence_ratio(const SpectralField& f, double s);

struct BernsteinRatios {
    double lower;  // ||(-Delta)^alpha f|| / (2^{2 j alpha} ||f||), at least 1
    double upper;  // ||(-Delta)^alpha f|| / (2^{2 (j+1) alpha} ||f||), at most 1
};

/// Bernstein ratios for Delta_j f on the annulus [2^j, 2^{j+1}). Requires
/// j >= 0 and alpha > 0; throws UndefinedRatio when the block is empty.
BernsteinRatios bernstein_verify(const SpectralField& f, int j, double alpha);

/// u.grad g with dealiased pseudo-spectral products.
SpectralField transport(std::span<const SpectralField> u, const SpectralField& g);

/// [u.grad, Delta_j] f = u.grad(Delta_j f) - Delta_j(u.grad f).
SpectralField commutator_transport(std::span<const SpectralField> u, const SpectralField& f, int j);

/// Lambda^alpha(g h) - g Lambda^alpha h.
SpectralField commutator_lambda(const SpectralField& g, const SpectralField& h, double alpha);

/// Empirical commutator constants, one per block j = -1 .. max_block:
/// c_j = 2^{j(sigma+1)} ||[u.grad, Delta_j] f|| / (||grad u||_{H^{sigma+1}} ||f||_{H^{sigma+1}}).
/// Requires sigma > d/2 - 1.
std::vector<double> commutator_constants(std::span<const SpectralField> u, const SpectralField& f,
                                         double sigma);

/// Both sides of the five frequency-split inequalities for one field, with
/// ||d^k g|| read as ||Lambda^k g||. Each entry holds lhs <= rhs when the
/// inequality is satisfied.
struct SplitInequality {
    double lhs;
    double rhs;
    bool holds(double rel_tol = 1e-12) const { return lhs <= rhs * (1.0 + rel_tol); }
};

struct SplitInequalities {
    SplitInequality low_scaling;    // ||L^k f^l|| <= r0^{k-k0} ||L^k0 f^l||
    SplitInequality low_by_full;    // ||L^k f^l|| <= ||L^k1 f||
    SplitInequality high_scaling;   // ||L^k f^h|| <= R0^{k-k1} ||L^k1 f^h||
    SplitInequality high_by_full;   // ||L^k f^h|| <= ||L^k1 f||
    SplitInequality mid_lower;      // r0^k ||f^m|| <= ||L^k f^m||
    SplitInequality mid_upper;      // ||L^k f^m|| <= R0^k ||f^m||
};

/// Requires 0 < r0 < R0 and 0 <= k0 <= k <= k1.
SplitInequalities split_inequalities(const SpectralField& f, double r0, double R0, int k0, int k,
                                     int k1);

} // namespace fracns
