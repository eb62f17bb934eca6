#pragma once

#include <arrmorse/rational.hpp>

#include <string>
#include <vector>

namespace arrmorse {

// Dense univariate integer polynomial, ascending coefficients. Holds the
// characteristic and Poincare polynomials; nothing fancier is needed.
class IntPoly {
  public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static IntPoly zero() { return IntPoly{}; }

    void add_term(const Int& c, int power) {
        if (static_cast<int>(coeffs_.size()) <= power) coeffs_.resize(power + 1, Int(0));
        coeffs_[power] += c;
        trim();
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }

    Int coefficient(int power) const {
        if (power < 0 || power >= static_cast<int>(coeffs_.size())) return 0;
        return coeffs_[power];
    }

    const std::vector<Int>& coefficients() const { return coeffs_; }

    // coefficients padded/truncated to exactly `n` entries
    std::vector<Int> padded(int n) const {
        std::vector<Int> out(coeffs_);
        out.resize(n, Int(0));
        return out;
    }

    Int evaluate(const Int& x) const {
        Int acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    IntPoly operator-(const IntPoly& other) const {
        std::vector<Int> out(std::max(coeffs_.size(), other.coeffs_.size()), Int(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
        for (std::size_t i = 0; i < other.coeffs_.size(); ++i) out[i] -= other.coeffs_[i];
        return IntPoly(std::move(out));
    }

    bool operator==(const IntPoly&) const = default;

    // Exact quotient by (1 + t); throws when the division leaves a remainder.
    IntPoly divide_by_one_plus_t() const {
        if (is_zero()) return IntPoly{};
        std::vector<Int> q(coeffs_.size() - 1, Int(0));
        Int carry = 0; // remainder being propagated from the top
        for (int i = degree(); i >= 1; --i) {
            Int qi = coeffs_[i] - carry;
            q[i - 1] = qi;
            carry = qi;
        }
        if (coeffs_[0] - carry != 0)
            throw internal_error("(1+t) does not divide polynomial " + format("t"));
        return IntPoly(std::move(q));
    }

    std::string format(const std::string& var) const {
        if (is_zero()) return "0";
        std::string out;
        for (int p = degree(); p >= 0; --p) {
            Int c = coeffs_[p];
            if (c == 0) continue;
            bool negative = c < 0;
            Int a = negative ? Int(-c) : c;
            if (out.empty()) {
                if (negative) out += "-";
            } else {
                out += negative ? " - " : " + ";
            }
            if (p == 0) {
                out += a.str();
            } else {
                if (a != 1) out += a.str() + "*";
                out += var;
                if (p > 1) out += "^" + std::to_string(p);
            }
        }
        return out;
    }

  private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    std::vector<Int> coeffs_;
};

} // namespace arrmorse
