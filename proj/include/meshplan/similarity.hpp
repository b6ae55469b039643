#pragma once

#include "meshplan/errors.hpp"
#include "meshplan/types.hpp"

#include <cmath>
#include <stdexcept>

namespace meshplan {

/// Exponential kernel parameters. sim_lo / sim_hi pin the similarity
/// ratio across the usable path-loss range [pl_min_db, pl_max_db]; only
/// the ratio is pinned, the kernel itself has no offset.
struct KernelParams {
    double sim_lo = 0.9;
    double sim_hi = 0.01;
    double pl_max_db = 0.0;
    double pl_min_db = 0.0;
};

inline void validate(const KernelParams& k)
{
    if (!(k.sim_hi > 0.0 && k.sim_hi < k.sim_lo && k.sim_lo < 1.0))
        throw std::invalid_argument("kernel: require 0 < sim_hi < sim_lo < 1");
    if (!(k.pl_min_db > 0.0))
        throw std::invalid_argument("kernel: pl_min_db must be > 0");
}

/// Decay rate alpha = ln(sim_lo / sim_hi) / (pl_max - pl_min), in 1/dB.
inline double compute_alpha(const KernelParams& k)
{
    validate(k);
    if (!(k.pl_max_db > k.pl_min_db))
        throw NumericalError("kernel: degenerate range, pl_max_db must exceed pl_min_db");
    return std::log(k.sim_lo / k.sim_hi) / (k.pl_max_db - k.pl_min_db);
}

/// Smallest positive finite off-diagonal path loss; the data-driven
/// default for pl_min_db. Throws when the matrix has no such entry.
inline double derive_pl_min(const PathLossMatrix& pl)
{
    const Index n = pl.values.rows();
    double best = no_path();
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            const double v = pl.values(i, j);
            if (i != j && v > 0.0 && !is_no_path(v) && v < best) best = v;
        }
    if (is_no_path(best))
        throw NumericalError("kernel: no positive finite path loss to derive pl_min_db from");
    return best;
}

/// Elementwise exponential kernel with link-budget thresholding:
/// entries above pl_max (or with no path) get weight exactly 0, the
/// diagonal stays 0. Requires a symmetric, zero-diagonal input; the
/// output is then symmetric by construction.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> similarity_from_path_loss(
    const Eigen::MatrixBase<Derived>& path_loss, typename Derived::Scalar alpha,
    typename Derived::Scalar pl_max)
{
    using Scalar = typename Derived::Scalar;
    const Index n = path_loss.rows();
    if (n != path_loss.cols())
        throw std::invalid_argument("similarity: path-loss matrix must be square");

    DenseMatrix<Scalar> s(n, n);
    for (Index i = 0; i < n; ++i) {
        if (path_loss(i, i) != Scalar(0))
            throw std::invalid_argument("similarity: path-loss diagonal must be zero");
        s(i, i) = Scalar(0);
        for (Index j = i + 1; j < n; ++j) {
            const Scalar pl = path_loss(i, j);
            if (!(pl == path_loss(j, i) || (is_no_path(pl) && is_no_path(path_loss(j, i)))))
                throw std::invalid_argument("similarity: path-loss matrix must be symmetric");
            const Scalar w =
                (is_no_path(pl) || pl > pl_max) ? Scalar(0) : std::exp(-alpha * pl);
            s(i, j) = w;
            s(j, i) = w;
        }
    }
    return s;
}

/// Full kernel step: alpha from the params, kernel + threshold applied.
inline SimilarityMatrix build_similarity(const PathLossMatrix& pl, const KernelParams& k)
{
    const double alpha = compute_alpha(k);
    return {similarity_from_path_loss(pl.values, alpha, k.pl_max_db), alpha};
}

}  // namespace meshplan
