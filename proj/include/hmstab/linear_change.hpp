#pragma once

// Invertible linear coordinate changes g of k^{N+1}. The action on polynomials
// is substitution X_i <- (g.X)_i = sum_j g(i,j) X_j, so composition satisfies
// (F o g) o h = F o (g*h) with * the ordinary matrix product.

#include <utility>

#include "hmstab/matrix.hpp"

namespace hmstab {

template <class K>
class LinearChange {
public:
    explicit LinearChange(MatrixX<K> m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols()) throw DomainError("linear change must be square");
        if (m_.rows() == 0) throw DomainError("linear change must be nonempty");
        det_ = det<K>(m_);
        if (is_zero(det_)) throw DomainError("linear change is singular");
    }

    // ch: field characteristic for the constants (relevant over F_p, where
    // fabricated scalars must be bound to the modulus).
    static LinearChange identity(Eigen::Index n, long ch = 0) {
        MatrixX<K> m(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) m(i, j) = scalar_in<K>(i == j ? 1 : 0, ch);
        return LinearChange(std::move(m));
    }

    const MatrixX<K>& matrix() const { return m_; }
    const K& determinant() const { return det_; }
    Eigen::Index size() const { return m_.rows(); }

    LinearChange inverse() const {
        auto inv = hmstab::inverse<K>(m_);
        return LinearChange(*inv); // always present: det != 0
    }

    friend LinearChange operator*(const LinearChange& a, const LinearChange& b) {
        if (a.size() != b.size()) throw DomainError("linear change size mismatch");
        return LinearChange(MatrixX<K>(a.m_ * b.m_));
    }

    // Image of a point (column vector) under g.
    VectorX<K> apply(const VectorX<K>& x) const {
        if (x.size() != size()) throw DomainError("point dimension mismatch");
        return m_ * x;
    }

    friend bool operator==(const LinearChange& a, const LinearChange& b) {
        if (a.size() != b.size()) return false;
        for (Eigen::Index i = 0; i < a.size(); ++i)
            for (Eigen::Index j = 0; j < a.size(); ++j)
                if (!(a.m_(i, j) == b.m_(i, j))) return false;
        return true;
    }

private:
    MatrixX<K> m_;
    K det_;
};

// Coordinate change sending the last coordinate point [0:...:0:1] to a given
// nonzero point P: column N is P itself; if P's first nonzero coordinate sits
// at pivot != N, column pivot becomes e_N; every other column j stays e_j.
// The determinant is then +/- P(pivot), so the frame is always invertible, and
// for P = [0:...:0:1] the frame is the identity.
template <class K>
LinearChange<K> frame_at(const VectorX<K>& p) {
    const Eigen::Index n = p.size();
    if (n < 2) throw DomainError("frame_at needs at least two coordinates");
    Eigen::Index pivot = -1;
    for (Eigen::Index i = 0; i < n; ++i)
        if (!is_zero(p(i))) { pivot = i; break; }
    if (pivot < 0) throw DomainError("frame_at: point must be nonzero");
    const long ch = characteristic(p(pivot));
    MatrixX<K> m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = scalar_in<K>(0, ch);
    for (Eigen::Index j = 0; j + 1 < n; ++j) {
        if (j == pivot) m(n - 1, j) = scalar_in<K>(1, ch); // column pivot = e_N
        else m(j, j) = scalar_in<K>(1, ch);
    }
    m.col(n - 1) = p;
    return LinearChange<K>(std::move(m));
}

// Invertible frame whose leading columns are the given points (in order),
// completed greedily with standard basis vectors. Empty result when the
// points are linearly dependent.
template <class K>
std::optional<LinearChange<K>> frame_through_points(const std::vector<VectorX<K>>& points,
                                                    Eigen::Index n) {
    if (points.size() > static_cast<size_t>(n)) return std::nullopt;
    long ch = 0;
    for (const auto& p : points)
        for (Eigen::Index i = 0; ch == 0 && i < p.size(); ++i)
            if (!is_zero(p(i))) ch = characteristic(p(i));
    MatrixX<K> m(n, n);
    Eigen::Index used = 0;
    auto try_add = [&](const VectorX<K>& col) {
        if (col.size() != n) throw DomainError("frame point dimension mismatch");
        m.col(used) = col;
        MatrixX<K> head = m.leftCols(used + 1);
        if (rank<K>(head) == used + 1) { ++used; return true; }
        return false;
    };
    for (const auto& p : points)
        if (!try_add(p)) return std::nullopt;
    for (Eigen::Index j = 0; j < n && used < n; ++j) {
        VectorX<K> e(n);
        for (Eigen::Index i = 0; i < n; ++i) e(i) = scalar_in<K>(i == j ? 1 : 0, ch);
        try_add(e);
    }
    if (used < n) return std::nullopt;
    return LinearChange<K>(std::move(m));
}

} // namespace hmstab
