#pragma once

#include "meshplan/errors.hpp"
#include "meshplan/types.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace meshplan {

/// Row sums of the affinity matrix (the diagonal of D).
template <typename Derived>
DenseVector<typename Derived::Scalar> degree_vector(const Eigen::MatrixBase<Derived>& S)
{
    return S.rowwise().sum();
}

/// Symmetric normalized Laplacian I - D^{-1/2} S D^{-1/2}, built exactly
/// symmetric. Isolated nodes (degree 0) take D^{-1/2} = 0, which leaves
/// their row/column as an identity row.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> normalized_laplacian(const Eigen::MatrixBase<Derived>& S)
{
    using Scalar = typename Derived::Scalar;
    const Index n = S.rows();
    if (n != S.cols()) throw std::invalid_argument("laplacian: matrix must be square");

    const DenseVector<Scalar> deg = degree_vector(S);
    DenseVector<Scalar> inv_sqrt(n);
    for (Index i = 0; i < n; ++i)
        inv_sqrt(i) = deg(i) > Scalar(0) ? Scalar(1) / std::sqrt(deg(i)) : Scalar(0);

    DenseMatrix<Scalar> L(n, n);
    for (Index i = 0; i < n; ++i) {
        L(i, i) = Scalar(1) - S(i, i) * inv_sqrt(i) * inv_sqrt(i);
        for (Index j = i + 1; j < n; ++j) {
            const Scalar v = -S(i, j) * inv_sqrt(i) * inv_sqrt(j);
            L(i, j) = v;
            L(j, i) = v;
        }
    }
    return L;
}

/// Low-dimensional spectral coordinates. `eigenvalues` keeps the
/// dimension+1 smallest Laplacian eigenvalues (ascending) for
/// diagnostics; coords drops the trivial smallest one.
template <typename Scalar>
struct Embedding {
    DenseMatrix<Scalar> coords;       // n x dimension
    DenseVector<Scalar> eigenvalues;  // the dimension+1 smallest, ascending
    Index dimension = 0;
};

/// Deterministic sign convention: the largest-magnitude entry of each
/// column is made positive, ties broken by lowest row index.
template <typename Scalar>
void fix_column_signs(DenseMatrix<Scalar>& m)
{
    for (Index c = 0; c < m.cols(); ++c) {
        Index arg = 0;
        Scalar best = std::abs(m(0, c));
        for (Index r = 1; r < m.rows(); ++r) {
            const Scalar mag = std::abs(m(r, c));
            if (mag > best) {
                best = mag;
                arg = r;
            }
        }
        if (m(arg, c) < Scalar(0)) m.col(c) = -m.col(c);
    }
}

/// Spectral embedding of the affinity matrix: eigendecompose the
/// normalized Laplacian and keep the eigenvectors of the `dim` smallest
/// eigenvalues after dropping the single trivial smallest one. Columns
/// are ordered by ascending eigenvalue with a fixed sign convention, so
/// repeated runs produce identical coordinates.
template <typename Derived>
Embedding<typename Derived::Scalar> spectral_embedding(const Eigen::MatrixBase<Derived>& S,
                                                       Index dim)
{
    using Scalar = typename Derived::Scalar;
    const Index n = S.rows();
    if (dim < 1 || dim >= n)
        throw std::invalid_argument("embedding: dimension must satisfy 1 <= dim < n");

    const DenseMatrix<Scalar> L = normalized_laplacian(S);
    Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> solver(L);
    if (solver.info() != Eigen::Success)
        throw NumericalError("embedding: eigendecomposition failed");

    Embedding<Scalar> out;
    out.dimension = dim;
    out.eigenvalues = solver.eigenvalues().head(dim + 1);
    out.coords = solver.eigenvectors().middleCols(1, dim);
    fix_column_signs(out.coords);
    return out;
}

/// Connected components of the positive-weight graph (union-find).
/// Isolated nodes count as singleton components.
template <typename Derived>
int count_components(const Eigen::MatrixBase<Derived>& S)
{
    const Index n = S.rows();
    std::vector<Index> parent(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;

    auto find = [&parent](Index v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    };

    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j)
            if (S(i, j) > typename Derived::Scalar(0)) {
                const Index a = find(i);
                const Index b = find(j);
                if (a != b) parent[static_cast<std::size_t>(a)] = b;
            }

    int components = 0;
    for (Index i = 0; i < n; ++i)
        if (find(i) == i) ++components;
    return components;
}

/// Indices of degree-0 nodes; they sit outside every usable link.
template <typename Derived>
std::vector<Index> isolated_nodes(const Eigen::MatrixBase<Derived>& S)
{
    const DenseVector<typename Derived::Scalar> deg = degree_vector(S);
    std::vector<Index> isolated;
    for (Index i = 0; i < deg.size(); ++i)
        if (!(deg(i) > typename Derived::Scalar(0))) isolated.push_back(i);
    return isolated;
}

}  // namespace meshplan
