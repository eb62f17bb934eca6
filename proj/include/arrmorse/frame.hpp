#pragma once

#include <arrmorse/arrangement.hpp>
#include <arrmorse/lattice.hpp>

#include <random>
#include <string>
#include <vector>

namespace arrmorse {

struct frame_error : error {
    int stage = 0;
    std::vector<int> flat_members;
    frame_error(const std::string& msg, int stage_, std::vector<int> members)
        : error(msg), stage(stage_), flat_members(std::move(members)) {}
};

// A linear form is generic for the arrangement when its kernel contains no
// flat of positive dimension: X lies in {L=0} exactly when L is a rational
// combination of the member forms of X.
inline bool is_generic(const RatVec& L, const Arrangement& arr,
                       std::vector<int>* violating_flat = nullptr) {
    if (is_zero_vec(L)) throw input_error("is_generic: zero linear form");
    IntersectionLattice lat = build_lattice(arr);
    const RatMat rows = arr.rows();
    for (const auto& flat : lat.flats) {
        if (flat.rank == 0 || flat.rank >= arr.dim) continue;
        if (in_span(detail::mask_rows(rows, flat.members), L)) {
            if (violating_flat) *violating_flat = flat.member_indices();
            return false;
        }
    }
    return true;
}

inline bool is_generic(const LinearForm& L, const Arrangement& arr) {
    if (!L.is_param_free()) throw input_error("is_generic: parametric form");
    return is_generic(L.constant_vector(), arr);
}

// Composes the forms with the frame U (rows act on the right) and drops all
// but the first k coordinates. Stage k of the Morse induction works with
// the result as an arrangement in C^k.
inline Arrangement restrict_stage(const Arrangement& arr, const IntMat& U, int k) {
    if (k < 2 || k > arr.dim) throw input_error("restrict_stage: stage out of range");
    if (!arr.is_param_free()) throw input_error("restrict_stage: parametric arrangement");
    Arrangement out;
    out.dim = k;
    out.var_names.assign(arr.var_names.begin(), arr.var_names.begin() + k);
    const RatMat rows = arr.rows();
    for (const auto& row : rows) {
        LinearForm f;
        for (int j = 0; j < k; ++j) {
            Rat entry(0);
            for (int i = 0; i < arr.dim; ++i) entry += row[i] * Rat(U[i][j]);
            f.coeffs.emplace_back(entry);
        }
        if (f.is_zero())
            throw frame_error("restricted form vanishes at stage " + std::to_string(k), k, {});
        out.forms.push_back(std::move(f));
    }
    for (int i = 0; i < out.size(); ++i)
        for (int j = i + 1; j < out.size(); ++j)
            if (proportional(out.forms[i].constant_vector(), out.forms[j].constant_vector()))
                throw frame_error("restricted forms " + std::to_string(i) + " and " +
                                      std::to_string(j) + " proportional at stage " +
                                      std::to_string(k),
                                  k, {i, j});
    return out;
}

namespace detail {

// Product of random elementary row operations with coefficients in [-3,3];
// determinant stays +-1 by construction. Candidates with large entries are
// rejected: they inflate the expanded coefficients downstream and buy no
// extra genericity.
inline IntMat random_unimodular(int n, std::mt19937_64& rng) {
    if (n == 1) return identity_matrix(1);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> row(0, n - 1);
    std::uniform_int_distribution<int> kind(0, 3);
    while (true) {
        IntMat u = identity_matrix(n);
        const int ops = 2 * n + 1;
        for (int t = 0; t < ops; ++t) {
            int op = kind(rng);
            if (op == 0) {
                int i = row(rng);
                for (auto& x : u[i]) x = -x;
            } else if (op == 1) {
                int i = row(rng), j = row(rng);
                if (i != j) std::swap(u[i], u[j]);
            } else {
                int i = row(rng), j = row(rng);
                int c = coeff(rng);
                if (i != j && c != 0)
                    for (int col = 0; col < n; ++col) u[j][col] += Int(c) * u[i][col];
            }
        }
        Int max_entry = 0;
        for (const auto& r : u)
            for (const auto& x : r) {
                Int a = x < 0 ? Int(-x) : x;
                if (a > max_entry) max_entry = a;
            }
        if (max_entry <= 4) return u;
    }
}

} // namespace detail

// Searches for a frame that is generic at every stage: the identity is tried
// first, then seeded random unimodular frames. The accepted frame satisfies,
// for k = dim..2, that the stage-k restriction is reduced and that the k-th
// coordinate is a generic form for it.
inline IntMat choose_frame(const Arrangement& arr, long seed, int retry_budget = 64,
                           bool try_identity_first = true) {
    if (!arr.is_param_free()) throw input_error("choose_frame: parametric arrangement");
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed) * 0x9E3779B97F4A7C15ULL + 1);
    int last_stage = 0;
    std::vector<int> last_flat;
    for (int attempt = 0; attempt < retry_budget; ++attempt) {
        IntMat u = attempt == 0 && try_identity_first ? identity_matrix(arr.dim)
                                                      : detail::random_unimodular(arr.dim, rng);
        bool ok = true;
        for (int k = arr.dim; k >= 2 && ok; --k) {
            Arrangement stage;
            try {
                stage = restrict_stage(arr, u, k);
            } catch (const frame_error& fe) {
                last_stage = fe.stage;
                last_flat = fe.flat_members;
                ok = false;
                break;
            }
            RatVec zk(k, Rat(0));
            zk[k - 1] = 1;
            std::vector<int> flat;
            if (!is_generic(zk, stage, &flat)) {
                last_stage = k;
                last_flat = flat;
                ok = false;
            }
        }
        if (ok) return u;
    }
    std::string members;
    for (int i : last_flat) members += (members.empty() ? "" : ",") + std::to_string(i);
    throw frame_error("no generic frame found in " + std::to_string(retry_budget) +
                          " attempts (last failure: stage " + std::to_string(last_stage) +
                          ", flat {" + members + "})",
                      last_stage, last_flat);
}

} // namespace arrmorse
