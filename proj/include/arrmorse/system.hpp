#pragma once

#include <arrmorse/poly.hpp>

#include <vector>

namespace arrmorse {

// Square system whose solutions are the Morse critical points of |z_last|
// on the fiber {Q = level}: equations (Q - level, dQ/dz_1, ..., dQ/dz_{l-1}).
// `level` compensates for the normalization of the factors so the fiber is
// exactly the one cut out by the original forms at value 1.
struct CriticalSystem {
    std::vector<RatPoly> equations;
    std::vector<int> degrees; // (n, n-1, ..., n-1)
    Rat level = 1;
    int nvars = 0;
    int n_forms = 0;
};

inline CriticalSystem build_critical_system(const ExpandedProduct& q) {
    const int nvars = q.poly.nvars();
    if (nvars < 2) throw input_error("critical system needs at least 2 variables");
    CriticalSystem sys;
    sys.nvars = nvars;
    sys.n_forms = q.n;
    sys.level = q.scale;
    RatPoly first = q.poly;
    first.add_term(Monomial(nvars, 0), -q.scale);
    sys.equations.push_back(std::move(first));
    sys.degrees.push_back(q.n);
    for (int v = 0; v + 1 < nvars; ++v) {
        sys.equations.push_back(q.poly.differentiate(v));
        sys.degrees.push_back(q.n - 1);
    }
    return sys;
}

// Product of the equation degrees: n(n-1)^(l-1) start paths, and an upper
// bound (with multiplicity, infinity included) on projective solutions.
inline Int bezout_number(const CriticalSystem& sys) {
    Int b = 1;
    for (int d : sys.degrees) b *= d;
    return b;
}

// Homogenization Q = level * w^n with one extra coordinate w; the partials
// are homogeneous already. Solutions with w = 0 are the at-infinity count
// that the accounting subtracts from the Bezout number.
struct ProjectiveSystem {
    std::vector<RatPoly> equations; // in nvars+1 variables, w last
    std::vector<int> degrees;
    int nvars = 0; // affine variable count (excludes w)
};

inline ProjectiveSystem homogenize(const CriticalSystem& sys) {
    ProjectiveSystem proj;
    proj.nvars = sys.nvars;
    proj.degrees = sys.degrees;
    for (std::size_t i = 0; i < sys.equations.size(); ++i) {
        RatPoly h = sys.equations[i].homogenize(sys.degrees[i]);
        if (!h.is_homogeneous(sys.degrees[i]))
            throw internal_error("homogenize: equation not homogeneous of stated degree");
        proj.equations.push_back(std::move(h));
    }
    return proj;
}

inline CriticalSystem dehomogenize(const ProjectiveSystem& proj, const Rat& level, int n_forms) {
    CriticalSystem sys;
    sys.nvars = proj.nvars;
    sys.n_forms = n_forms;
    sys.level = level;
    sys.degrees = proj.degrees;
    for (const auto& eq : proj.equations) sys.equations.push_back(eq.dehomogenize());
    return sys;
}

} // namespace arrmorse
