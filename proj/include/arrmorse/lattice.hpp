#pragma once

#include <arrmorse/arrangement.hpp>
#include <arrmorse/intpoly.hpp>
#include <arrmorse/linalg.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

namespace arrmorse {

// Hyperplane index sets are bitmasks; desk scale (n <= 12) fits easily.
using MemberMask = std::uint64_t;

struct Flat {
    MemberMask members = 0; // every hyperplane containing the subspace
    int rank = 0;           // codimension = rank of the member forms
    Int mobius = 0;

    std::vector<int> member_indices() const {
        std::vector<int> out;
        for (int i = 0; i < 64; ++i)
            if (members & (MemberMask{1} << i)) out.push_back(i);
        return out;
    }

    bool operator==(const Flat&) const = default;
};

// The intersection poset, ordered by inclusion of member sets (equivalently
// reverse inclusion of subspaces). Flats are stored sorted by rank, then by
// member mask, so iteration order is deterministic.
class IntersectionLattice {
  public:
    int dim = 0;
    int n_forms = 0;
    std::vector<Flat> flats;

    // X <= Y in the lattice order (ambient is the bottom element).
    static bool below(const Flat& x, const Flat& y) {
        return (x.members & y.members) == x.members;
    }

    int max_rank() const {
        int r = 0;
        for (const auto& f : flats) r = std::max(r, f.rank);
        return r;
    }

    bool essential() const { return max_rank() == dim; }

    std::vector<int> rank_profile() const {
        std::vector<int> counts(max_rank() + 1, 0);
        for (const auto& f : flats) ++counts[f.rank];
        return counts;
    }

    // chi(t) = sum_X mu(X) t^(dim - rank X)
    IntPoly characteristic_polynomial() const {
        IntPoly chi;
        for (const auto& f : flats) chi.add_term(f.mobius, dim - f.rank);
        return chi;
    }
};

namespace detail {

inline std::vector<int> mask_indices(MemberMask mask) {
    std::vector<int> out;
    for (int i = 0; i < 64; ++i)
        if (mask & (MemberMask{1} << i)) out.push_back(i);
    return out;
}

inline RatMat mask_rows(const RatMat& rows, MemberMask mask) {
    RatMat sub;
    for (int i : mask_indices(mask)) sub.push_back(rows[i]);
    return sub;
}

// Smallest closed member set containing `mask`: every hyperplane whose form
// lies in the span of the selected forms contains the intersection.
inline MemberMask close_members(const RatMat& rows, MemberMask mask) {
    RatMat sub = mask_rows(rows, mask);
    int base = rank(sub);
    MemberMask closed = 0;
    for (std::size_t j = 0; j < rows.size(); ++j) {
        if (mask & (MemberMask{1} << j)) {
            closed |= MemberMask{1} << j;
            continue;
        }
        RatMat ext = sub;
        ext.push_back(rows[j]);
        if (rank(ext) == base) closed |= MemberMask{1} << j;
    }
    return closed;
}

} // namespace detail

// Enumerates every intersection of hyperplanes by iterated closure: seed with
// the hyperplanes themselves, then keep intersecting known flats with single
// hyperplanes until no new member set appears. Complete because any flat
// is reachable one hyperplane at a time.
inline IntersectionLattice build_lattice(const Arrangement& arr) {
    if (!arr.is_param_free())
        throw input_error("lattice requires a parameter-free arrangement (evaluate first)");
    if (arr.size() > 64) throw input_error("more than 64 hyperplanes not supported");

    const RatMat rows = arr.rows();
    std::map<MemberMask, int> rank_of; // closed mask -> rank
    rank_of[0] = 0;

    std::vector<MemberMask> frontier;
    for (int i = 0; i < arr.size(); ++i) {
        MemberMask closed = detail::close_members(rows, MemberMask{1} << i);
        if (!rank_of.count(closed)) {
            rank_of[closed] = 1;
            frontier.push_back(closed);
        }
    }
    while (!frontier.empty()) {
        std::vector<MemberMask> next;
        for (MemberMask mask : frontier) {
            for (int i = 0; i < arr.size(); ++i) {
                if (mask & (MemberMask{1} << i)) continue;
                MemberMask grown = mask | (MemberMask{1} << i);
                MemberMask closed = detail::close_members(rows, grown);
                if (rank_of.count(closed)) continue;
                rank_of[closed] = rank(detail::mask_rows(rows, closed));
                next.push_back(closed);
            }
        }
        frontier = std::move(next);
    }

    IntersectionLattice lat;
    lat.dim = arr.dim;
    lat.n_forms = arr.size();
    for (const auto& [mask, r] : rank_of) {
        Flat f;
        f.members = mask;
        f.rank = r;
        lat.flats.push_back(f);
    }
    std::sort(lat.flats.begin(), lat.flats.end(), [](const Flat& a, const Flat& b) {
        return a.rank != b.rank ? a.rank < b.rank : a.members < b.members;
    });

    // Top-down Mobius recursion: mu(ambient)=1 and column sums below every
    // non-ambient flat vanish.
    for (std::size_t i = 0; i < lat.flats.size(); ++i) {
        if (lat.flats[i].rank == 0) {
            lat.flats[i].mobius = 1;
            continue;
        }
        Int acc = 0;
        for (std::size_t j = 0; j < i; ++j)
            if (IntersectionLattice::below(lat.flats[j], lat.flats[i]) &&
                lat.flats[j].members != lat.flats[i].members)
                acc += lat.flats[j].mobius;
        lat.flats[i].mobius = -acc;
    }
    return lat;
}

} // namespace arrmorse
