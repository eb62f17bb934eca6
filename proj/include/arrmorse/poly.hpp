#pragma once

#include <arrmorse/arrangement.hpp>
#include <arrmorse/rational.hpp>

#include <complex>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace arrmorse {

using Cplx = std::complex<double>;
using Monomial = std::vector<int>;

inline int total_degree(const Monomial& m) {
    return std::accumulate(m.begin(), m.end(), 0);
}

// Graded lexicographic order; map iteration in this order keeps every
// downstream artifact (printing, serialization, tests) deterministic.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return a < b;
    }
};

template <typename Coeff>
class MultiPoly {
  public:
    using TermMap = std::map<Monomial, Coeff, GrlexLess>;

    MultiPoly() = default;
    explicit MultiPoly(int nvars) : nvars_(nvars) {}

    static MultiPoly constant(int nvars, const Coeff& c) {
        MultiPoly p(nvars);
        p.add_term(Monomial(nvars, 0), c);
        return p;
    }

    static MultiPoly variable(int nvars, int index) {
        MultiPoly p(nvars);
        Monomial m(nvars, 0);
        m[index] = 1;
        p.add_term(m, Coeff(1));
        return p;
    }

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    int degree() const {
        return terms_.empty() ? -1 : total_degree(terms_.rbegin()->first);
    }

    bool is_homogeneous(int d) const {
        for (const auto& [m, c] : terms_)
            if (total_degree(m) != d) return false;
        return true;
    }

    void add_term(const Monomial& m, const Coeff& c) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!(c == Coeff(0))) terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == Coeff(0)) terms_.erase(it);
        }
    }

    MultiPoly operator+(const MultiPoly& o) const {
        MultiPoly out = *this;
        for (const auto& [m, c] : o.terms_) out.add_term(m, c);
        return out;
    }

    MultiPoly operator-(const MultiPoly& o) const {
        MultiPoly out = *this;
        for (const auto& [m, c] : o.terms_) out.add_term(m, Coeff(0) - c);
        return out;
    }

    MultiPoly operator*(const MultiPoly& o) const {
        MultiPoly out(nvars_);
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_) {
                Monomial m(nvars_);
                for (int i = 0; i < nvars_; ++i) m[i] = ma[i] + mb[i];
                out.add_term(m, ca * cb);
            }
        return out;
    }

    MultiPoly scaled(const Coeff& s) const {
        MultiPoly out(nvars_);
        if (s == Coeff(0)) return out;
        for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * s);
        return out;
    }

    bool operator==(const MultiPoly&) const = default;

    MultiPoly differentiate(int var) const {
        MultiPoly out(nvars_);
        for (const auto& [m, c] : terms_) {
            if (m[var] == 0) continue;
            Monomial d = m;
            d[var] -= 1;
            out.add_term(d, c * Coeff(m[var]));
        }
        return out;
    }

    // Adds one trailing variable raised so every term reaches `target`
    // degree. Partials of a homogeneous Q pass through unchanged.
    MultiPoly homogenize(int target) const {
        MultiPoly out(nvars_ + 1);
        for (const auto& [m, c] : terms_) {
            int deficit = target - total_degree(m);
            if (deficit < 0) throw internal_error("homogenize: term degree exceeds target");
            Monomial e = m;
            e.push_back(deficit);
            out.add_term(e, c);
        }
        return out;
    }

    MultiPoly dehomogenize() const {
        // drop the trailing variable by setting it to 1
        MultiPoly out(nvars_ - 1);
        for (const auto& [m, c] : terms_) {
            Monomial e(m.begin(), m.end() - 1);
            out.add_term(e, c);
        }
        return out;
    }

  private:
    int nvars_ = 0;
    TermMap terms_;
};

using RatPoly = MultiPoly<Rat>;
using CplxPoly = MultiPoly<Cplx>;

inline CplxPoly to_complex(const RatPoly& p) {
    CplxPoly out(p.nvars());
    for (const auto& [m, c] : p.terms())
        out.add_term(m, Cplx(to_double(c), 0.0));
    return out;
}

// Direct term evaluation with per-variable power tables.
inline Cplx evaluate(const CplxPoly& p, std::span<const Cplx> point) {
    if (static_cast<int>(point.size()) != p.nvars())
        throw internal_error("evaluate: point dimension mismatch");
    const int deg = std::max(p.degree(), 0);
    thread_local std::vector<Cplx> powers;
    powers.assign(static_cast<std::size_t>(p.nvars()) * (deg + 1), Cplx(1.0, 0.0));
    for (int v = 0; v < p.nvars(); ++v)
        for (int e = 1; e <= deg; ++e)
            powers[v * (deg + 1) + e] = powers[v * (deg + 1) + e - 1] * point[v];
    Cplx acc(0.0, 0.0);
    for (const auto& [m, c] : p.terms()) {
        Cplx t = c;
        for (int v = 0; v < p.nvars(); ++v)
            if (m[v] > 0) t *= powers[v * (deg + 1) + m[v]];
        acc += t;
    }
    return acc;
}

inline Cplx evaluate(const RatPoly& p, std::span<const Cplx> point) {
    return evaluate(to_complex(p), point);
}

// Sum of |coefficient| over all terms; the residual acceptance bound is
// relative to this.
inline double coefficient_norm(const CplxPoly& p) {
    double s = 0;
    for (const auto& [m, c] : p.terms()) s += std::abs(c);
    return s;
}

struct NormalizedForm {
    std::vector<Int> coeffs; // primitive integer vector, first nonzero positive
    Rat scale;               // normalized = scale * original
};

inline NormalizedForm normalize_form(const RatVec& row) {
    Int lcm_den = 1;
    for (const auto& r : row) {
        Int d = denominator(r);
        lcm_den = boost::multiprecision::lcm(lcm_den, d);
    }
    std::vector<Int> v;
    v.reserve(row.size());
    Int g = 0;
    for (const auto& r : row) {
        Rat scaled = r * Rat(lcm_den);
        Int value = numerator(scaled);
        v.push_back(value);
        g = boost::multiprecision::gcd(g, boost::multiprecision::abs(value));
    }
    if (g == 0) throw input_error("normalize_form: zero form");
    bool negate = false;
    for (const auto& x : v) {
        if (x != 0) {
            negate = x < 0;
            break;
        }
    }
    for (auto& x : v) {
        x /= g;
        if (negate) x = -x;
    }
    Rat scale = Rat(lcm_den, g);
    if (negate) scale = -scale;
    return {std::move(v), scale};
}

// Q = scale * prod(original forms); `poly` is the expanded product of the
// normalized forms, so its coefficients are integers of moderate size.
struct ExpandedProduct {
    RatPoly poly;
    Rat scale;
    int n = 0;
};

inline ExpandedProduct expand_product(const std::vector<RatVec>& rows) {
    if (rows.empty()) throw input_error("expand_product: no forms");
    const int nvars = static_cast<int>(rows[0].size());
    ExpandedProduct out;
    out.poly = RatPoly::constant(nvars, Rat(1));
    out.scale = 1;
    out.n = static_cast<int>(rows.size());
    for (const auto& row : rows) {
        NormalizedForm nf = normalize_form(row);
        RatPoly linear(nvars);
        for (int i = 0; i < nvars; ++i)
            if (nf.coeffs[i] != 0) {
                Monomial m(nvars, 0);
                m[i] = 1;
                linear.add_term(m, Rat(nf.coeffs[i]));
            }
        out.poly = out.poly * linear;
        out.scale *= nf.scale;
    }
    return out;
}

inline ExpandedProduct expand_product(const Arrangement& arr) {
    if (!arr.is_param_free())
        throw input_error("expand_product: parametric arrangement (evaluate first)");
    return expand_product(arr.rows());
}

inline ExpandedProduct expand_product(const Arrangement& arr, const Rat& t) {
    return expand_product(arr.evaluate_at(t).rows());
}

inline std::string format_poly(const RatPoly& p, const std::vector<std::string>& vars) {
    if (p.is_zero()) return "0";
    std::string out;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        bool negative = c < 0;
        Rat a = negative ? Rat(-c) : c;
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        std::string mono;
        for (std::size_t v = 0; v < m.size(); ++v) {
            if (m[v] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars[v];
            if (m[v] > 1) mono += "^" + std::to_string(m[v]);
        }
        if (mono.empty()) {
            out += format_rat(a);
        } else {
            if (a != 1) out += format_rat(a) + "*";
            out += mono;
        }
    }
    return out;
}

} // namespace arrmorse
