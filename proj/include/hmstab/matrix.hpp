#pragma once

// Dense exact linear algebra over an arbitrary field scalar K (Rational or
// Fp). Eigen supplies the container and arithmetic; elimination is done here
// because Eigen's own decompositions assume an ordered/absolute-value scalar.

#include <Eigen/Dense>

#include <limits>
#include <optional>
#include <vector>

#include "hmstab/fields.hpp"

namespace hmstab {

template <class K>
using MatrixX = Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic>;
template <class K>
using VectorX = Eigen::Matrix<K, Eigen::Dynamic, 1>;

using MatrixXq = MatrixX<Rational>;
using VectorXq = VectorX<Rational>;

namespace detail {

// Row echelon reduction in place; returns pivot columns. Pure Gauss-Jordan
// with first-nonzero pivoting (valid over any exact field).
template <class K>
std::vector<Eigen::Index> reduce_in_place(MatrixX<K>& a) {
    const Eigen::Index rows = a.rows(), cols = a.cols();
    std::vector<Eigen::Index> pivots;
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index pr = -1;
        for (Eigen::Index i = r; i < rows; ++i)
            if (!is_zero(a(i, c))) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != r) a.row(pr).swap(a.row(r));
        K inv_pivot = K(1) / a(r, c);
        for (Eigen::Index j = c; j < cols; ++j) a(r, j) = a(r, j) * inv_pivot;
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == r || is_zero(a(i, c))) continue;
            K f = a(i, c);
            for (Eigen::Index j = c; j < cols; ++j) a(i, j) = a(i, j) - f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace detail

template <class K>
int rank(MatrixX<K> a) {
    return static_cast<int>(detail::reduce_in_place(a).size());
}

template <class K>
K det(MatrixX<K> a) {
    if (a.rows() != a.cols()) throw DomainError("det: matrix not square");
    const Eigen::Index n = a.rows();
    K d = K(1);
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index pr = -1;
        for (Eigen::Index i = c; i < n; ++i)
            if (!is_zero(a(i, c))) { pr = i; break; }
        if (pr < 0) return K(0);
        if (pr != c) { a.row(pr).swap(a.row(c)); d = -d; }
        d = d * a(c, c);
        K inv_pivot = K(1) / a(c, c);
        for (Eigen::Index i = c + 1; i < n; ++i) {
            if (is_zero(a(i, c))) continue;
            K f = a(i, c) * inv_pivot;
            for (Eigen::Index j = c; j < n; ++j) a(i, j) = a(i, j) - f * a(c, j);
        }
    }
    return d;
}

template <class K>
std::optional<MatrixX<K>> inverse(const MatrixX<K>& a) {
    if (a.rows() != a.cols()) throw DomainError("inverse: matrix not square");
    const Eigen::Index n = a.rows();
    MatrixX<K> aug(n, 2 * n);
    aug.leftCols(n) = a;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) aug(i, n + j) = K(i == j ? 1 : 0);
    auto pivots = detail::reduce_in_place(aug);
    if (static_cast<Eigen::Index>(pivots.size()) < n || pivots.back() >= n) return std::nullopt;
    for (Eigen::Index i = 0; i < n; ++i)
        if (pivots[static_cast<size_t>(i)] != i) return std::nullopt;
    return MatrixX<K>(aug.rightCols(n));
}

// Columns form a basis of the right null space of a.
template <class K>
MatrixX<K> kernel_basis(MatrixX<K> a) {
    const Eigen::Index cols = a.cols();
    auto pivots = detail::reduce_in_place(a);
    std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
    for (auto c : pivots) is_pivot[static_cast<size_t>(c)] = true;
    const Eigen::Index dim = cols - static_cast<Eigen::Index>(pivots.size());
    MatrixX<K> basis(cols, dim);
    for (Eigen::Index i = 0; i < cols; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) basis(i, j) = K(0);
    Eigen::Index k = 0;
    for (Eigen::Index free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[static_cast<size_t>(free_c)]) continue;
        basis(free_c, k) = K(1);
        for (size_t pi = 0; pi < pivots.size(); ++pi)
            basis(pivots[pi], k) = -a(static_cast<Eigen::Index>(pi), free_c);
        ++k;
    }
    return basis;
}

// Smallest integer vector on the ray through a rational vector: clear
// denominators with their lcm, then divide out the gcd of the entries.
inline Eigen::VectorXi scale_to_coprime_integers(const VectorXq& v) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (v.size() == 0) throw DomainError("cannot scale an empty vector");
    Integer mult(1);
    for (Eigen::Index i = 0; i < v.size(); ++i)
        mult = boost::multiprecision::lcm(mult, Integer(denominator(v(i))));
    std::vector<Integer> ints(static_cast<size_t>(v.size()));
    Integer g(0);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        ints[static_cast<size_t>(i)] =
            Integer(numerator(v(i))) * (mult / Integer(denominator(v(i))));
        g = boost::multiprecision::gcd(g, ints[static_cast<size_t>(i)]);
    }
    if (is_zero(g)) throw DomainError("cannot scale the zero vector");
    Eigen::VectorXi out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        Integer q = ints[static_cast<size_t>(i)] / g;
        if (q > Integer(std::numeric_limits<int>::max()) ||
            q < Integer(std::numeric_limits<int>::min()))
            throw InternalError("integerized vector entry out of range");
        out(i) = static_cast<int>(q);
    }
    return out;
}

// One solution of a x = b if consistent.
template <class K>
std::optional<VectorX<K>> solve(const MatrixX<K>& a, const VectorX<K>& b) {
    if (a.rows() != b.size()) throw DomainError("solve: dimension mismatch");
    MatrixX<K> aug(a.rows(), a.cols() + 1);
    aug.leftCols(a.cols()) = a;
    aug.col(a.cols()) = b;
    auto pivots = detail::reduce_in_place(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt; // inconsistent
    VectorX<K> x(a.cols());
    for (Eigen::Index i = 0; i < a.cols(); ++i) x(i) = K(0);
    for (size_t pi = 0; pi < pivots.size(); ++pi)
        x(pivots[pi]) = aug(static_cast<Eigen::Index>(pi), a.cols());
    return x;
}

} // namespace hmstab
