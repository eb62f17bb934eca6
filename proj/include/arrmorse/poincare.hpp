#pragma once

#include <arrmorse/intpoly.hpp>
#include <arrmorse/lattice.hpp>

#include <vector>

namespace arrmorse {

struct PoincareData {
    IntPoly chi;     // characteristic polynomial chi(A, t)
    IntPoly p_m;     // Poincare polynomial of the complement M
    IntPoly p_mstar; // Poincare polynomial of the projectivized complement
    std::vector<Int> betti_m;     // dim+1 entries
    std::vector<Int> betti_mstar; // dim entries
    int dim = 0;

    bool operator==(const PoincareData&) const = default;
};

// P(M, t) = sum_X mu(X) (-t)^(rank X); its coefficients are the Betti
// numbers of M, and (1+t) divides it exactly for central input.
inline PoincareData poincare(const IntersectionLattice& lat) {
    PoincareData pd;
    pd.dim = lat.dim;
    pd.chi = lat.characteristic_polynomial();
    for (const auto& f : lat.flats) {
        Int c = f.mobius;
        if (f.rank % 2 == 1) c = -c;
        pd.p_m.add_term(c, f.rank);
    }
    pd.p_mstar = pd.p_m.divide_by_one_plus_t(); // throws internal_error if not exact
    pd.betti_m = pd.p_m.padded(lat.dim + 1);
    pd.betti_mstar = pd.p_mstar.padded(lat.dim);
    for (const auto& b : pd.betti_m)
        if (b < 0) throw internal_error("negative Betti number; lattice is corrupt");
    return pd;
}

struct CellCounts {
    std::vector<Int> c_f;     // cells of the Milnor fiber, dims 0..dim-1
    std::vector<Int> c_mstar; // cells of M*, dims 0..dim-1
    std::vector<Int> c_m;     // cells of M, dims 0..dim
    Int euler_f = 0;
    Int euler_mstar = 0;

    bool operator==(const CellCounts&) const = default;
};

// Predicted minimal cell counts: the fiber takes n copies of each M* cell,
// and M = M* x S^1 contributes the product structure with one 0-cell and
// one 1-cell on the circle.
inline CellCounts predict_cells(const PoincareData& pd, int n) {
    CellCounts cc;
    cc.c_mstar = pd.betti_mstar;
    for (const auto& b : pd.betti_mstar) cc.c_f.push_back(Int(n) * b);
    cc.c_m.resize(pd.dim + 1, Int(0));
    for (int p = 0; p <= pd.dim; ++p) {
        Int prev = (p >= 1) ? cc.c_mstar[p - 1] : Int(0);
        Int cur = (p < pd.dim) ? cc.c_mstar[p] : Int(0);
        cc.c_m[p] = cur + prev;
    }
    for (std::size_t p = 0; p < cc.c_f.size(); ++p)
        cc.euler_f += (p % 2 == 0) ? cc.c_f[p] : -cc.c_f[p];
    cc.euler_mstar = pd.p_mstar.evaluate(Int(-1));
    return cc;
}

} // namespace arrmorse
