#pragma once

#include <concepts>
#include <cstdint>
#include <string>
#include <vector>

#include "gdist/errors.hpp"

namespace gdist {

// A finite group given by a multiplication oracle. encode() must be
// canonical: equal strings iff equal elements.
template <class G>
concept FiniteGroup = requires(const G& grp, const typename G::Element& a) {
    { grp.identity() } -> std::convertible_to<typename G::Element>;
    { grp.multiply(a, a) } -> std::convertible_to<typename G::Element>;
    { grp.invert(a) } -> std::convertible_to<typename G::Element>;
    { grp.encode(a) } -> std::convertible_to<std::string>;
};

// Z/n_1 x ... x Z/n_r.
class AbelianGroup {
public:
    using Element = std::vector<int>;

    explicit AbelianGroup(std::vector<int> moduli) : moduli_(std::move(moduli)) {
        if (moduli_.empty()) throw ValidationError("abelian group needs at least one factor");
        for (int m : moduli_) {
            if (m < 1) throw ValidationError("cyclic factor order must be positive");
        }
    }

    const std::vector<int>& moduli() const { return moduli_; }

    Element identity() const { return Element(moduli_.size(), 0); }
    Element multiply(const Element& a, const Element& b) const {
        Element c(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) c[i] = (a[i] + b[i]) % moduli_[i];
        return c;
    }
    Element invert(const Element& a) const {
        Element c(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) c[i] = (moduli_[i] - a[i]) % moduli_[i];
        return c;
    }
    std::string encode(const Element& a) const {
        std::string s = "(";
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(a[i]);
        }
        return s + ")";
    }

    // +-e_j for every factor; for Z/2 the pair collapses to one element.
    std::vector<Element> standardGenerators() const {
        std::vector<Element> gens;
        for (std::size_t j = 0; j < moduli_.size(); ++j) {
            Element e = identity();
            e[j] = 1 % moduli_[j];
            gens.push_back(e);
            gens.push_back(invert(e));
        }
        return gens;
    }

    Element unit(std::size_t j, int amount) const {
        Element e = identity();
        e[j] = ((amount % moduli_[j]) + moduli_[j]) % moduli_[j];
        return e;
    }

private:
    std::vector<int> moduli_;
};

// Lamplighter group C_2 wr (C_n)^d. Lamp configurations are bitsets over a
// row-major enumeration of (C_n)^d; the lamp at index z is bit z.
class LamplighterGroup {
public:
    struct Element {
        std::uint64_t lamps = 0;
        int position = 0;
        friend bool operator==(const Element&, const Element&) = default;
    };

    LamplighterGroup(int n, int d) : n_(n), d_(d) {
        if (n < 2) throw ValidationError("lamplighter base cycle length must be >= 2");
        if (d < 1) throw ValidationError("lamplighter dimension must be >= 1");
        long long m = 1;
        for (int i = 0; i < d; ++i) {
            m *= n;
            if (m > 62) throw BudgetExceeded("lamplighter base (C_n)^d has more than 62 sites");
        }
        sites_ = static_cast<int>(m);
        add_.assign(static_cast<std::size_t>(sites_ * sites_), 0);
        neg_.assign(static_cast<std::size_t>(sites_), 0);
        for (int a = 0; a < sites_; ++a) {
            auto ca = coords(a);
            std::vector<int> cn(ca.size());
            for (int j = 0; j < d_; ++j) cn[j] = (n_ - ca[j]) % n_;
            neg_[a] = index(cn);
            for (int b = 0; b < sites_; ++b) {
                auto cb = coords(b);
                std::vector<int> cs(ca.size());
                for (int j = 0; j < d_; ++j) cs[j] = (ca[j] + cb[j]) % n_;
                add_[static_cast<std::size_t>(a * sites_ + b)] = index(cs);
            }
        }
    }

    int n() const { return n_; }
    int d() const { return d_; }
    int sites() const { return sites_; }

    // |C_2 wr (C_n)^d| = 2^(n^d) * n^d
    long long order() const { return (1LL << sites_) * sites_; }

    Element identity() const { return {}; }

    // (f, a)(g, b) = (f + a.g, a + b), where (a.g)(z) = g(z - a).
    Element multiply(const Element& x, const Element& y) const {
        return {x.lamps ^ shift(y.lamps, x.position), addSites(x.position, y.position)};
    }
    Element invert(const Element& x) const {
        const int back = neg_[x.position];
        return {shift(x.lamps, back), back};
    }
    std::string encode(const Element& x) const {
        std::string s;
        s.reserve(static_cast<std::size_t>(sites_) + 8);
        for (int z = 0; z < sites_; ++z) s += ((x.lamps >> z) & 1U) ? '1' : '0';
        s += '@';
        auto c = coords(x.position);
        for (int j = 0; j < d_; ++j) {
            if (j) s += ',';
            s += std::to_string(c[j]);
        }
        return s;
    }

    // {(delta_0, 0)} together with {(empty, +-e_j)}.
    std::vector<Element> standardGenerators() const {
        std::vector<Element> gens;
        gens.push_back({1U, 0});
        for (int j = 0; j < d_; ++j) {
            std::vector<int> c(static_cast<std::size_t>(d_), 0);
            c[j] = 1 % n_;
            gens.push_back({0U, index(c)});
            c[j] = (n_ - 1) % n_;
            gens.push_back({0U, index(c)});
        }
        return gens;
    }

    // Position coordinate j of an element (used by characters).
    int coordinate(const Element& x, int j) const { return coords(x.position)[j]; }

    std::vector<int> coords(int site) const {
        std::vector<int> c(static_cast<std::size_t>(d_));
        for (int j = d_ - 1; j >= 0; --j) {
            c[j] = site % n_;
            site /= n_;
        }
        return c;
    }
    int index(const std::vector<int>& c) const {
        int s = 0;
        for (int j = 0; j < d_; ++j) s = s * n_ + c[j];
        return s;
    }

private:
    int addSites(int a, int b) const { return add_[static_cast<std::size_t>(a * sites_ + b)]; }

    std::uint64_t shift(std::uint64_t lamps, int by) const {
        std::uint64_t out = 0;
        while (lamps) {
            const int z = __builtin_ctzll(lamps);
            lamps &= lamps - 1;
            out |= std::uint64_t{1} << addSites(z, by);
        }
        return out;
    }

    int n_;
    int d_;
    int sites_ = 1;
    std::vector<int> add_;
    std::vector<int> neg_;
};

inline bool isPrime(int q) {
    if (q < 2) return false;
    for (int f = 2; f * f <= q; ++f) {
        if (q % f == 0) return false;
    }
    return true;
}

// SL_n(F_q), q prime. Elements are row-major residue vectors.
class SpecialLinearGroup {
public:
    using Element = std::vector<int>;

    SpecialLinearGroup(int n, int q) : n_(n), q_(q) {
        if (n < 2) throw ValidationError("SL_n needs n >= 2");
        if (!isPrime(q)) throw ValidationError("q = " + std::to_string(q) + " is not prime");
    }

    int n() const { return n_; }
    int q() const { return q_; }

    // prod_{i<n} (q^n - q^i) / (q - 1)
    long double order() const {
        long double qn = 1, prod = 1;
        for (int i = 0; i < n_; ++i) qn *= q_;
        long double qi = 1;
        for (int i = 0; i < n_; ++i) {
            prod *= (qn - qi);
            qi *= q_;
        }
        return prod / (q_ - 1);
    }

    Element identity() const {
        Element e(static_cast<std::size_t>(n_ * n_), 0);
        for (int i = 0; i < n_; ++i) e[at(i, i)] = 1;
        return e;
    }
    Element multiply(const Element& a, const Element& b) const {
        Element c(a.size(), 0);
        for (int i = 0; i < n_; ++i) {
            for (int k = 0; k < n_; ++k) {
                const int aik = a[at(i, k)];
                if (!aik) continue;
                for (int j = 0; j < n_; ++j) c[at(i, j)] += aik * b[at(k, j)];
            }
        }
        for (auto& x : c) x %= q_;
        return c;
    }
    // Gauss-Jordan over F_q.
    Element invert(const Element& a) const {
        Element m = a, inv = identity();
        for (int col = 0; col < n_; ++col) {
            int piv = col;
            while (piv < n_ && m[at(piv, col)] == 0) ++piv;
            if (piv == n_) throw ValidationError("singular matrix has no inverse");
            if (piv != col) {
                for (int j = 0; j < n_; ++j) {
                    std::swap(m[at(piv, j)], m[at(col, j)]);
                    std::swap(inv[at(piv, j)], inv[at(col, j)]);
                }
            }
            const int scale = modInverse(m[at(col, col)]);
            for (int j = 0; j < n_; ++j) {
                m[at(col, j)] = m[at(col, j)] * scale % q_;
                inv[at(col, j)] = inv[at(col, j)] * scale % q_;
            }
            for (int r = 0; r < n_; ++r) {
                if (r == col || m[at(r, col)] == 0) continue;
                const int factor = m[at(r, col)];
                for (int j = 0; j < n_; ++j) {
                    m[at(r, j)] = ((m[at(r, j)] - factor * m[at(col, j)]) % q_ + q_) % q_;
                    inv[at(r, j)] = ((inv[at(r, j)] - factor * inv[at(col, j)]) % q_ + q_) % q_;
                }
            }
        }
        return inv;
    }
    std::string encode(const Element& a) const {
        std::string s = "[";
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i) s += (i % static_cast<std::size_t>(n_) == 0) ? ';' : ',';
            s += std::to_string(a[i]);
        }
        return s + "]";
    }

    // Elementary transvection: identity plus a 1 in position (0, 1).
    Element transvection() const {
        Element a = identity();
        a[at(0, 1)] = 1;
        return a;
    }
    // Ones on the superdiagonal and (-1)^(n-1) in the bottom-left corner.
    Element signedShift() const {
        Element b(static_cast<std::size_t>(n_ * n_), 0);
        for (int i = 0; i + 1 < n_; ++i) b[at(i, i + 1)] = 1;
        b[at(n_ - 1, 0)] = (n_ % 2 == 1) ? 1 : q_ - 1;
        return b;
    }
    std::vector<Element> standardGenerators() const {
        auto a = transvection();
        auto b = signedShift();
        return {a, invert(a), b, invert(b)};
    }

    int determinant(const Element& a) const {
        Element m = a;
        long long det = 1;
        for (int col = 0; col < n_; ++col) {
            int piv = col;
            while (piv < n_ && m[at(piv, col)] == 0) ++piv;
            if (piv == n_) return 0;
            if (piv != col) {
                for (int j = 0; j < n_; ++j) std::swap(m[at(piv, j)], m[at(col, j)]);
                det = (q_ - det) % q_;
            }
            det = det * m[at(col, col)] % q_;
            const int scale = modInverse(m[at(col, col)]);
            for (int r = col + 1; r < n_; ++r) {
                const int factor = m[at(r, col)] * scale % q_;
                for (int j = 0; j < n_; ++j) {
                    m[at(r, j)] = ((m[at(r, j)] - factor * m[at(col, j)]) % q_ + q_) % q_;
                }
            }
        }
        return static_cast<int>(det);
    }

private:
    std::size_t at(int i, int j) const { return static_cast<std::size_t>(i * n_ + j); }

    int modInverse(int a) const {
        int result = 1, base = a % q_, e = q_ - 2;
        while (e > 0) {
            if (e & 1) result = result * base % q_;
            base = base * base % q_;
            e >>= 1;
        }
        return result;
    }

    int n_;
    int q_;
};

static_assert(FiniteGroup<AbelianGroup>);
static_assert(FiniteGroup<LamplighterGroup>);
static_assert(FiniteGroup<SpecialLinearGroup>);

}  // namespace gdist
