#pragma once

// Shared fixtures for the test suites: direct arrangement construction,
// seeded random arrangements, and the deletion/restriction constructions
// used as a combinatorial cross-check for the lattice code.

#include <arrmorse/arrangement.hpp>
#include <arrmorse/lattice.hpp>
#include <arrmorse/linalg.hpp>

#include <random>
#include <string>
#include <vector>

namespace testutil {

using namespace arrmorse;

inline Arrangement make_arrangement(const std::vector<std::vector<int>>& rows) {
    Arrangement arr;
    arr.dim = static_cast<int>(rows.at(0).size());
    const char* names[] = {"x", "y", "z", "w", "v", "u"};
    for (int i = 0; i < arr.dim; ++i) arr.var_names.push_back(names[i]);
    for (const auto& row : rows) {
        LinearForm f;
        for (int c : row) f.coeffs.emplace_back(Rat(c));
        arr.forms.push_back(std::move(f));
    }
    return arr;
}

inline Arrangement random_arrangement(std::mt19937_64& rng, int dim, int n, int bound) {
    std::uniform_int_distribution<int> coeff(-bound, bound);
    std::vector<std::vector<int>> rows;
    while (static_cast<int>(rows.size()) < n) {
        std::vector<int> row(dim);
        bool zero = true;
        for (auto& x : row) {
            x = coeff(rng);
            if (x != 0) zero = false;
        }
        if (zero) continue;
        RatVec cand;
        for (int x : row) cand.emplace_back(x);
        bool dup = false;
        for (const auto& prev : rows) {
            RatVec pv;
            for (int x : prev) pv.emplace_back(x);
            if (proportional(pv, cand)) {
                dup = true;
                break;
            }
        }
        if (!dup) rows.push_back(std::move(row));
    }
    return make_arrangement(rows);
}

inline Arrangement delete_form(const Arrangement& arr, int index) {
    Arrangement out = arr;
    out.forms.erase(out.forms.begin() + index);
    return out;
}

// The arrangement {H cap H_j} inside the hyperplane H = ker(form index),
// written in coordinates given by a rational basis of H. Proportional
// images are deduplicated, as the restriction is a set of hyperplanes.
inline Arrangement restrict_to_hyperplane(const Arrangement& arr, int index) {
    const RatMat rows = arr.rows();
    std::vector<RatVec> basis = kernel_basis({rows[index]});
    Arrangement out;
    out.dim = static_cast<int>(basis.size());
    for (int i = 0; i < out.dim; ++i) out.var_names.push_back("h" + std::to_string(i + 1));
    for (int j = 0; j < arr.size(); ++j) {
        if (j == index) continue;
        RatVec restricted;
        for (const auto& b : basis) {
            Rat dot(0);
            for (std::size_t c = 0; c < b.size(); ++c) dot += rows[j][c] * b[c];
            restricted.push_back(dot);
        }
        if (is_zero_vec(restricted)) continue; // H inside H_j: impossible for reduced input
        bool dup = false;
        for (const auto& f : out.forms)
            if (proportional(f.constant_vector(), restricted)) {
                dup = true;
                break;
            }
        if (dup) continue;
        LinearForm f;
        for (const auto& c : restricted) f.coeffs.emplace_back(c);
        out.forms.push_back(std::move(f));
    }
    return out;
}

} // namespace testutil
