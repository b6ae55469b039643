#pragma once

#include <Eigen/Core>

#include <cmath>
#include <limits>

namespace meshplan {

using Index = Eigen::Index;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = DenseMatrix<double>;
using Vector = DenseVector<double>;

/// Marker for "no propagation path found". It behaves as infinite loss,
/// so it survives max() symmetrization and fails every usability test.
template <typename Scalar = double>
constexpr Scalar no_path()
{
    return std::numeric_limits<Scalar>::infinity();
}

template <typename Scalar>
inline bool is_no_path(Scalar value)
{
    return std::isinf(value);
}

/// Raw directional path loss in dB, entry (i, j) = loss from node i
/// transmitting to node j. May be non-reciprocal and carry a non-zero
/// diagonal; entries are finite >= 0 or no_path().
struct RawPathLoss {
    Matrix values;

    Index size() const { return values.rows(); }
};

/// Canonical pairwise path loss: exactly symmetric, zero diagonal,
/// off-diagonal entries finite >= 0 dB or no_path().
struct PathLossMatrix {
    Matrix values;

    Index size() const { return values.rows(); }
};

/// Weighted adjacency of the connectivity graph. Symmetric, zero
/// diagonal, entries in [0, 1]; unusable links are exactly 0.
/// `alpha` records the decay rate (1/dB) actually used to build it.
struct SimilarityMatrix {
    Matrix values;
    double alpha = 0.0;

    Index size() const { return values.rows(); }
};

}  // namespace meshplan
