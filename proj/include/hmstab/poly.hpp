#pragma once

// Sparse exact polynomials: HomogeneousPoly<K> (all terms of one total degree,
// in N+1 variables X0..XN) and AffinePoly<K> (arbitrary terms, used for local
// equations after dehomogenization). Terms live in a map keyed by exponent
// vectors under graded lexicographic order; no zero coefficients are stored.

#include <map>
#include <vector>

#include "hmstab/linear_change.hpp"

namespace hmstab {

using Monomial = Eigen::VectorXi; // exponent vector, one entry per variable

inline long total_degree(const Monomial& m) {
    long d = 0;
    for (Eigen::Index i = 0; i < m.size(); ++i) d += m(i);
    return d;
}

// Graded lexicographic order, X0-major: lower total degree first, ties broken
// by the first differing exponent (smaller exponent of the earlier variable
// sorts first). The canonical printer walks this order in reverse.
struct GradedLexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        long da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        for (Eigen::Index i = 0; i < a.size() && i < b.size(); ++i)
            if (a(i) != b(i)) return a(i) < b(i);
        return a.size() < b.size();
    }
};

template <class K>
using TermMap = std::map<Monomial, K, GradedLexLess>;

namespace detail {

template <class K>
void add_term_into(TermMap<K>& terms, const Monomial& m, const K& c) {
    if (is_zero(c)) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
        terms.emplace(m, c);
    } else {
        it->second += c;
        if (is_zero(it->second)) terms.erase(it);
    }
}

template <class K>
K eval_terms(const TermMap<K>& terms, const VectorX<K>& x) {
    K acc = K(0);
    for (const auto& [m, c] : terms) {
        K t = c;
        for (Eigen::Index i = 0; i < m.size(); ++i)
            for (int e = 0; e < m(i); ++e) t *= x(i);
        acc += t;
    }
    return acc;
}

} // namespace detail

// ---------------------------------------------------------------------------
// HomogeneousPoly
// ---------------------------------------------------------------------------

template <class K>
class HomogeneousPoly {
public:
    // The zero polynomial of the given shape (degree is retained so that e.g.
    // derivatives of vanishing polynomials keep a well-defined degree).
    HomogeneousPoly(int n_vars, long degree) : n_(n_vars), d_(degree) {
        if (n_vars < 1) throw DomainError("polynomial needs at least one variable");
        if (degree < 0) throw DomainError("negative degree");
    }

    int n_vars() const { return n_; }
    long degree() const { return d_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const TermMap<K>& terms() const { return terms_; }

    void add_term(const Monomial& m, const K& c) {
        if (m.size() != n_) throw DomainError("monomial variable count mismatch");
        for (Eigen::Index i = 0; i < m.size(); ++i)
            if (m(i) < 0) throw DomainError("negative exponent");
        if (total_degree(m) != d_)
            throw DomainError("term degree " + std::to_string(total_degree(m)) +
                              " does not match polynomial degree " + std::to_string(d_));
        detail::add_term_into(terms_, m, c);
    }

    std::vector<Monomial> support() const {
        std::vector<Monomial> s;
        s.reserve(terms_.size());
        for (const auto& [m, c] : terms_) s.push_back(m);
        return s;
    }

    K coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? K(0) : it->second;
    }

    // Field characteristic as witnessed by stored coefficients (0 for the
    // rationals and for the zero polynomial over F_p).
    long field_characteristic() const {
        if (terms_.empty()) return 0;
        return characteristic(terms_.begin()->second);
    }

    friend HomogeneousPoly operator+(const HomogeneousPoly& a, const HomogeneousPoly& b) {
        a.require_same_shape(b);
        HomogeneousPoly r = a;
        for (const auto& [m, c] : b.terms_) detail::add_term_into(r.terms_, m, c);
        return r;
    }
    friend HomogeneousPoly operator-(const HomogeneousPoly& a, const HomogeneousPoly& b) {
        a.require_same_shape(b);
        HomogeneousPoly r = a;
        for (const auto& [m, c] : b.terms_) detail::add_term_into(r.terms_, m, K(-c));
        return r;
    }
    friend HomogeneousPoly operator-(const HomogeneousPoly& a) {
        HomogeneousPoly r(a.n_, a.d_);
        for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
        return r;
    }
    friend HomogeneousPoly operator*(const K& s, const HomogeneousPoly& a) {
        HomogeneousPoly r(a.n_, a.d_);
        for (const auto& [m, c] : a.terms_) detail::add_term_into(r.terms_, m, K(s * c));
        return r;
    }
    friend HomogeneousPoly operator*(const HomogeneousPoly& a, const HomogeneousPoly& b) {
        if (a.n_ != b.n_) throw DomainError("variable count mismatch");
        HomogeneousPoly r(a.n_, a.d_ + b.d_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_)
                detail::add_term_into(r.terms_, Monomial(ma + mb), K(ca * cb));
        return r;
    }

    friend bool operator==(const HomogeneousPoly& a, const HomogeneousPoly& b) {
        if (a.n_ != b.n_) return false;
        if (!a.terms_.empty() && !b.terms_.empty() && a.d_ != b.d_) return false;
        if (a.terms_.size() != b.terms_.size()) return false;
        auto ia = a.terms_.begin();
        for (auto ib = b.terms_.begin(); ib != b.terms_.end(); ++ia, ++ib) {
            if (GradedLexLess{}(ia->first, ib->first) || GradedLexLess{}(ib->first, ia->first))
                return false;
            if (!(ia->second == ib->second)) return false;
        }
        return true;
    }
    friend bool operator!=(const HomogeneousPoly& a, const HomogeneousPoly& b) { return !(a == b); }

private:
    void require_same_shape(const HomogeneousPoly& o) const {
        if (n_ != o.n_) throw DomainError("variable count mismatch");
        if (!is_zero() && !o.is_zero() && d_ != o.d_)
            throw DomainError("degree mismatch " + std::to_string(d_) + " vs " + std::to_string(o.d_));
    }

    int n_;
    long d_;
    TermMap<K> terms_;
};

// ---------------------------------------------------------------------------
// AffinePoly
// ---------------------------------------------------------------------------

template <class K>
class AffinePoly {
public:
    explicit AffinePoly(int n_vars) : n_(n_vars) {
        if (n_vars < 1) throw DomainError("polynomial needs at least one variable");
    }

    int n_vars() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const TermMap<K>& terms() const { return terms_; }

    void add_term(const Monomial& m, const K& c) {
        if (m.size() != n_) throw DomainError("monomial variable count mismatch");
        for (Eigen::Index i = 0; i < m.size(); ++i)
            if (m(i) < 0) throw DomainError("negative exponent");
        detail::add_term_into(terms_, m, c);
    }

    K coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? K(0) : it->second;
    }

    K constant_term() const { return coefficient(Monomial::Zero(n_)); }

    // Smallest total degree over the support; -1 for the zero polynomial.
    long min_total_degree() const {
        if (terms_.empty()) return -1;
        return total_degree(terms_.begin()->first); // map order is graded
    }
    long max_total_degree() const {
        if (terms_.empty()) return -1;
        return total_degree(terms_.rbegin()->first);
    }

    std::vector<Monomial> support() const {
        std::vector<Monomial> s;
        s.reserve(terms_.size());
        for (const auto& [m, c] : terms_) s.push_back(m);
        return s;
    }

    long field_characteristic() const {
        if (terms_.empty()) return 0;
        return characteristic(terms_.begin()->second);
    }

    friend AffinePoly operator+(const AffinePoly& a, const AffinePoly& b) {
        if (a.n_ != b.n_) throw DomainError("variable count mismatch");
        AffinePoly r = a;
        for (const auto& [m, c] : b.terms_) detail::add_term_into(r.terms_, m, c);
        return r;
    }
    friend AffinePoly operator*(const AffinePoly& a, const AffinePoly& b) {
        if (a.n_ != b.n_) throw DomainError("variable count mismatch");
        AffinePoly r(a.n_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_)
                detail::add_term_into(r.terms_, Monomial(ma + mb), K(ca * cb));
        return r;
    }

    friend bool operator==(const AffinePoly& a, const AffinePoly& b) {
        if (a.n_ != b.n_ || a.terms_.size() != b.terms_.size()) return false;
        auto ia = a.terms_.begin();
        for (auto ib = b.terms_.begin(); ib != b.terms_.end(); ++ia, ++ib) {
            if (GradedLexLess{}(ia->first, ib->first) || GradedLexLess{}(ib->first, ia->first))
                return false;
            if (!(ia->second == ib->second)) return false;
        }
        return true;
    }
    friend bool operator!=(const AffinePoly& a, const AffinePoly& b) { return !(a == b); }

private:
    int n_;
    TermMap<K> terms_;
};

// ---------------------------------------------------------------------------
// Free operations
// ---------------------------------------------------------------------------

template <class K>
K evaluate(const HomogeneousPoly<K>& f, const VectorX<K>& x) {
    if (x.size() != f.n_vars()) throw DomainError("evaluation point dimension mismatch");
    return detail::eval_terms(f.terms(), x);
}

template <class K>
K evaluate(const AffinePoly<K>& f, const VectorX<K>& x) {
    if (x.size() != f.n_vars()) throw DomainError("evaluation point dimension mismatch");
    return detail::eval_terms(f.terms(), x);
}

template <class K>
HomogeneousPoly<K> partial_derivative(const HomogeneousPoly<K>& f, int i) {
    if (i < 0 || i >= f.n_vars()) throw DomainError("derivative variable out of range");
    if (f.degree() == 0) return HomogeneousPoly<K>(f.n_vars(), 0);
    HomogeneousPoly<K> r(f.n_vars(), f.degree() - 1);
    for (const auto& [m, c] : f.terms()) {
        if (m(i) == 0) continue;
        Monomial dm = m;
        dm(i) -= 1;
        r.add_term(dm, K(c * K(m(i))));
    }
    return r;
}

// Substitute X_i = 1 and drop that variable (remaining variables keep their
// relative order). The result lives in one variable fewer.
template <class K>
AffinePoly<K> dehomogenize(const HomogeneousPoly<K>& f, int i) {
    if (i < 0 || i >= f.n_vars()) throw DomainError("dehomogenize variable out of range");
    if (f.n_vars() < 2) throw DomainError("dehomogenize needs at least two variables");
    AffinePoly<K> r(f.n_vars() - 1);
    for (const auto& [m, c] : f.terms()) {
        Monomial a(f.n_vars() - 1);
        Eigen::Index k = 0;
        for (Eigen::Index j = 0; j < m.size(); ++j)
            if (j != i) a(k++) = m(j);
        r.add_term(a, c);
    }
    return r;
}

template <class K>
AffinePoly<K> homogeneous_component(const AffinePoly<K>& f, long e) {
    if (e < 0) throw DomainError("negative component degree");
    AffinePoly<K> r(f.n_vars());
    for (const auto& [m, c] : f.terms())
        if (total_degree(m) == e) r.add_term(m, c);
    return r;
}

// Reinterpret an affine polynomial whose terms all have total degree `e` as a
// homogeneous polynomial of that degree.
template <class K>
HomogeneousPoly<K> to_homogeneous(const AffinePoly<K>& f, long e) {
    HomogeneousPoly<K> r(f.n_vars(), e);
    for (const auto& [m, c] : f.terms()) r.add_term(m, c);
    return r;
}

// F o g, i.e. F((g.X)_0, ..., (g.X)_N) with (g.X)_i = sum_j g(i,j) X_j.
template <class K>
HomogeneousPoly<K> apply_linear_change(const HomogeneousPoly<K>& f, const LinearChange<K>& g) {
    if (g.size() != f.n_vars()) throw DomainError("linear change dimension mismatch");
    const int n = f.n_vars();
    // Linear forms and lazily extended power tables L_i^e.
    std::vector<std::vector<HomogeneousPoly<K>>> powers(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        HomogeneousPoly<K> one(n, 0);
        one.add_term(Monomial::Zero(n), K(1));
        HomogeneousPoly<K> li(n, 1);
        for (int j = 0; j < n; ++j) {
            Monomial m = Monomial::Zero(n);
            m(j) = 1;
            li.add_term(m, g.matrix()(i, j));
        }
        powers[static_cast<size_t>(i)] = {one, li};
    }
    auto power = [&](int i, int e) -> const HomogeneousPoly<K>& {
        auto& tab = powers[static_cast<size_t>(i)];
        while (static_cast<int>(tab.size()) <= e) tab.push_back(tab.back() * tab[1]);
        return tab[static_cast<size_t>(e)];
    };
    HomogeneousPoly<K> r(n, f.degree());
    for (const auto& [m, c] : f.terms()) {
        HomogeneousPoly<K> t(n, 0);
        t.add_term(Monomial::Zero(n), c);
        for (int i = 0; i < n; ++i)
            if (m(i) > 0) t = t * power(i, m(i));
        r = r + t;
    }
    return r;
}

// Splits F = sum_i X_i * P_i where each monomial is assigned to its smallest
// variable of positive exponent; P_i is homogeneous of degree d-1 and involves
// only variables X_i..XN. The zero polynomial yields an all-zero list.
template <class K>
std::vector<HomogeneousPoly<K>> tail_decomposition(const HomogeneousPoly<K>& f) {
    if (f.degree() < 1 && !f.is_zero())
        throw DomainError("tail decomposition needs degree >= 1");
    const long dd = f.degree() >= 1 ? f.degree() - 1 : 0;
    std::vector<HomogeneousPoly<K>> parts;
    parts.reserve(static_cast<size_t>(f.n_vars()));
    for (int i = 0; i < f.n_vars(); ++i) parts.emplace_back(f.n_vars(), dd);
    for (const auto& [m, c] : f.terms()) {
        int lead = -1;
        for (Eigen::Index j = 0; j < m.size(); ++j)
            if (m(j) > 0) { lead = static_cast<int>(j); break; }
        Monomial q = m;
        q(lead) -= 1;
        parts[static_cast<size_t>(lead)].add_term(q, c);
    }
    return parts;
}

} // namespace hmstab
