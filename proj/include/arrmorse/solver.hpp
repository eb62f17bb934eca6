#pragma once

#include <arrmorse/system.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace arrmorse {

struct TrackerOptions {
    long seed = 0;
    double step_init = 0.1;
    double step_min = 1e-9;
    double newton_tol = 1e-10;     // residual tolerance, relative to coefficient norm
    double divergence_norm = 1e8;  // hard cutoff for declaring a path at infinity
    double dedup_tol = 1e-6;       // relative clustering tolerance for endpoints
    int max_retries = 2;
};

enum class PathStatus { finite, at_infinity, failed };

inline const char* to_string(PathStatus s) {
    switch (s) {
        case PathStatus::finite: return "finite";
        case PathStatus::at_infinity: return "at_infinity";
        case PathStatus::failed: return "failed";
    }
    return "?";
}

struct PathResult {
    int start_index = 0;
    PathStatus status = PathStatus::failed;
    std::vector<Cplx> endpoint; // meaningful for finite paths
    double residual = 0.0;
    int steps = 0;
    double s_end = 0.0;         // continuation parameter reached
    double final_norm = 0.0;    // |z| at the last accepted step
    bool stall_growing = false; // norm was still climbing when the step collapsed
};

struct Solution {
    std::vector<Cplx> point;
    int cluster_size = 0;
    double residual = 0.0;
    double jacobian_min_singular_value = 0.0;
};

struct SolutionSet {
    std::vector<Solution> solutions; // deduplicated, canonically sorted
    Int bezout = 0;
    int n_finite = 0;   // path endpoints, so sum of cluster sizes
    int n_diverged = 0;
    int n_failed = 0;
    std::vector<PathResult> paths; // per-start diagnostics

    double max_solution_norm() const {
        double m = 0.0;
        for (const auto& sol : solutions)
            for (const auto& c : sol.point) m = std::max(m, std::abs(c));
        return m;
    }
};

// Target system with precomputed complex coefficients and symbolic
// Jacobian. Every equation is rescaled to coefficient 1-norm about one, so
// the homotopy with the unit-size start system stays balanced no matter how
// large the expanded integer coefficients get, and all residuals are
// relative: residual() <= tol means max_i |F_i(z)| <= tol * (1 + ||c_i||_1)
// in terms of the original equations.
class CompiledSystem {
  public:
    explicit CompiledSystem(const CriticalSystem& sys) : nvars_(sys.nvars), degrees_(sys.degrees) {
        for (const auto& eq : sys.equations) {
            CplxPoly c = to_complex(eq);
            double norm = coefficient_norm(c);
            coeff_norm_ = std::max(coeff_norm_, norm);
            equations_.push_back(c.scaled(Cplx(1.0 / (1.0 + norm), 0.0)));
        }
        for (const auto& eq : equations_) {
            std::vector<CplxPoly> row;
            for (int v = 0; v < nvars_; ++v) row.push_back(eq.differentiate(v));
            jacobian_.push_back(std::move(row));
        }
    }

    int nvars() const { return nvars_; }
    const std::vector<int>& degrees() const { return degrees_; }
    double coeff_norm() const { return coeff_norm_; } // before scaling
    const std::vector<CplxPoly>& equations() const { return equations_; }

    Eigen::VectorXcd eval(const Eigen::VectorXcd& z) const {
        Eigen::VectorXcd out(equations_.size());
        std::span<const Cplx> pt(z.data(), static_cast<std::size_t>(z.size()));
        for (std::size_t i = 0; i < equations_.size(); ++i) out(i) = evaluate(equations_[i], pt);
        return out;
    }

    Eigen::MatrixXcd jac(const Eigen::VectorXcd& z) const {
        Eigen::MatrixXcd out(equations_.size(), nvars_);
        std::span<const Cplx> pt(z.data(), static_cast<std::size_t>(z.size()));
        for (std::size_t i = 0; i < equations_.size(); ++i)
            for (int v = 0; v < nvars_; ++v) out(i, v) = evaluate(jacobian_[i][v], pt);
        return out;
    }

    // relative residual
    double residual(const Eigen::VectorXcd& z) const {
        return eval(z).cwiseAbs().maxCoeff();
    }

  private:
    int nvars_;
    std::vector<int> degrees_;
    std::vector<CplxPoly> equations_; // scaled
    std::vector<std::vector<CplxPoly>> jacobian_;
    double coeff_norm_ = 0.0;
};

struct NewtonResult {
    std::vector<Cplx> point;
    double residual = 0.0;
    double jacobian_min_singular_value = 0.0;
    bool converged = false;
    bool singular = false;
    int iterations = 0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// 53-bit uniform in [0,1); avoids distribution objects so that a seed pins
// the exact stream.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline Cplx unit_phase(std::mt19937_64& rng) {
    double angle = 2.0 * M_PI * uniform01(rng);
    return Cplx(std::cos(angle), std::sin(angle));
}

// Solve J x = rhs, refusing visibly rank-deficient factors.
inline std::optional<Eigen::VectorXcd> lu_solve(const Eigen::MatrixXcd& J,
                                                const Eigen::VectorXcd& rhs) {
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(J);
    Eigen::VectorXcd diag = lu.matrixLU().diagonal();
    double dmax = diag.cwiseAbs().maxCoeff();
    double dmin = diag.cwiseAbs().minCoeff();
    if (!(dmax > 0.0) || dmin < 1e-14 * dmax) return std::nullopt;
    Eigen::VectorXcd x = lu.solve(rhs);
    if (!x.allFinite()) return std::nullopt;
    return x;
}

inline double inf_norm(const Eigen::VectorXcd& z) {
    return z.size() == 0 ? 0.0 : z.cwiseAbs().maxCoeff();
}

} // namespace detail

inline NewtonResult newton_refine(const CompiledSystem& sys, std::vector<Cplx> point, double tol,
                                  int max_iters = 20) {
    NewtonResult res;
    Eigen::VectorXcd z = Eigen::Map<const Eigen::VectorXcd>(point.data(), point.size());
    const double target = tol; // relative residual; equations are pre-scaled
    for (int it = 0; it < max_iters; ++it) {
        Eigen::VectorXcd f = sys.eval(z);
        res.residual = f.cwiseAbs().maxCoeff();
        res.iterations = it;
        if (res.residual <= target) {
            res.converged = true;
            break;
        }
        auto dz = detail::lu_solve(sys.jac(z), -f);
        if (!dz) {
            res.singular = true;
            break;
        }
        z += *dz;
        if (!z.allFinite() || detail::inf_norm(z) > 1e12) break;
    }
    if (res.converged) res.residual = sys.residual(z);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sys.jac(z));
    double smin = svd.singularValues().minCoeff();
    double smax = svd.singularValues().maxCoeff();
    res.jacobian_min_singular_value = smin;
    if (res.converged && smax > 0.0 && smin < 1e-8 * smax) {
        res.converged = false;
        res.singular = true;
    }
    res.point.assign(z.data(), z.data() + z.size());
    return res;
}

// Spec-facing convenience overload.
inline NewtonResult newton_refine(const std::vector<Cplx>& point, const CriticalSystem& sys,
                                  double tol) {
    return newton_refine(CompiledSystem(sys), point, tol);
}

namespace detail {

struct StartSystem {
    std::vector<int> degrees;
    std::vector<Cplx> b; // G_i = z_i^d_i - b_i

    Eigen::VectorXcd eval(const Eigen::VectorXcd& z) const {
        Eigen::VectorXcd out(degrees.size());
        for (std::size_t i = 0; i < degrees.size(); ++i)
            out(i) = std::pow(z(i), degrees[i]) - b[i];
        return out;
    }

    Eigen::MatrixXcd jac(const Eigen::VectorXcd& z) const {
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(degrees.size(), degrees.size());
        for (std::size_t i = 0; i < degrees.size(); ++i)
            out(i, i) = static_cast<double>(degrees[i]) * std::pow(z(i), degrees[i] - 1);
        return out;
    }
};

struct Homotopy {
    const CompiledSystem& target;
    const StartSystem& start;
    Cplx gamma;

    Eigen::VectorXcd eval(const Eigen::VectorXcd& z, double s) const {
        return (1.0 - s) * gamma * start.eval(z) + s * target.eval(z);
    }
    Eigen::MatrixXcd jac(const Eigen::VectorXcd& z, double s) const {
        return (1.0 - s) * gamma * start.jac(z) + s * target.jac(z);
    }
    // dH/ds, the Davidenko right-hand side numerator
    Eigen::VectorXcd ds(const Eigen::VectorXcd& z) const {
        return target.eval(z) - gamma * start.eval(z);
    }
};

// One predictor-corrector traversal of s in [0,1]. Explicit RK4 on the
// Davidenko system, then at most three Newton corrections per step; the
// step halves on failure and doubles after four clean steps.
inline PathResult track_path(const CompiledSystem& sys, const Homotopy& hom,
                             const Eigen::VectorXcd& start_point, const TrackerOptions& opts,
                             double step_min, int start_index) {
    PathResult res;
    res.start_index = start_index;

    Eigen::VectorXcd z = start_point;
    double s = 0.0;
    double h = opts.step_init;
    int clean_steps = 0;
    const int max_steps = 50000;
    // norms checkpointed at geometric milestones of (1-s); consecutive
    // accepted steps are useless for growth detection once h collapses
    std::vector<std::pair<double, double>> checkpoints; // (1-s, norm)

    auto velocity = [&](const Eigen::VectorXcd& zz, double ss) -> std::optional<Eigen::VectorXcd> {
        if (!zz.allFinite() || inf_norm(zz) > 10.0 * opts.divergence_norm) return std::nullopt;
        return lu_solve(hom.jac(zz, ss), -hom.ds(zz));
    };

    // Paths into solutions at infinity rarely cross the hard norm cutoff:
    // slow blow-up exponents stall the step size first, just short of s=1,
    // with the norm still climbing, while a stall near a finite point
    // plateaus. The growth evidence is recorded here; the caller only turns
    // it into an at-infinity verdict once retries are exhausted.
    auto classify_stall = [&]() {
        double norm = inf_norm(z);
        res.s_end = s;
        res.final_norm = norm;
        res.endpoint.assign(z.data(), z.data() + z.size());
        double infinity_scale = std::max(1e3, 1e-5 * opts.divergence_norm);
        // reference norm from the nearest checkpoint at least 4x further
        // from s=1 than the stall point
        double ref_norm = -1.0;
        double oms_now = 1.0 - s;
        for (auto it = checkpoints.rbegin(); it != checkpoints.rend(); ++it)
            if (it->first >= 4.0 * oms_now) {
                ref_norm = it->second;
                break;
            }
        if (ref_norm < 0.0 && !checkpoints.empty()) ref_norm = checkpoints.front().second;
        res.stall_growing = norm >= 1.0 && ref_norm >= 0.0 && norm >= 1.02 * ref_norm;
        res.status = norm > infinity_scale ? PathStatus::at_infinity : PathStatus::failed;
    };

    while (s < 1.0) {
        if (++res.steps > max_steps) {
            classify_stall();
            return res;
        }
        double hs = std::min(h, 1.0 - s);

        // RK4 predictor
        std::optional<Eigen::VectorXcd> k1, k2, k3, k4;
        Eigen::VectorXcd zp;
        bool predicted = false;
        k1 = velocity(z, s);
        if (k1) k2 = velocity(z + 0.5 * hs * *k1, s + 0.5 * hs);
        if (k2) k3 = velocity(z + 0.5 * hs * *k2, s + 0.5 * hs);
        if (k3) k4 = velocity(z + hs * *k3, s + hs);
        if (k4) {
            zp = z + (hs / 6.0) * (*k1 + 2.0 * *k2 + 2.0 * *k3 + *k4);
            predicted = zp.allFinite();
        }

        // corrector
        bool corrected = false;
        if (predicted) {
            double s_next = s + hs;
            Eigen::VectorXcd zc = zp;
            for (int it = 0; it < 3 && !corrected; ++it) {
                auto dz = lu_solve(hom.jac(zc, s_next), -hom.eval(zc, s_next));
                if (!dz || !zc.allFinite()) break;
                zc += *dz;
                if (dz->cwiseAbs().maxCoeff() <= 1e-8 * (1.0 + inf_norm(zc))) corrected = true;
            }
            // Small Newton steps alone are not proof at the end of the path:
            // close to the at-infinity locus the Jacobian is enormous and the
            // corrector can report tiny steps at a point that solves nothing.
            // The step onto s=1 must actually reach a target residual.
            if (corrected && s_next >= 1.0 && sys.residual(zc) > 10.0 * opts.newton_tol)
                corrected = false;
            if (corrected) {
                z = zc;
                s = s_next;
                double oms = 1.0 - s;
                if (checkpoints.empty() || oms <= 0.5 * checkpoints.back().first)
                    checkpoints.emplace_back(oms, inf_norm(z));
                if (inf_norm(z) > opts.divergence_norm) {
                    res.status = PathStatus::at_infinity;
                    return res;
                }
                if (++clean_steps >= 4) {
                    h = std::min(2.0 * h, opts.step_init);
                    clean_steps = 0;
                }
            }
        }
        if (!corrected) {
            h *= 0.5;
            clean_steps = 0;
            if (h < step_min) {
                classify_stall();
                return res;
            }
        }
    }

    // endpoint refinement on the target system
    std::vector<Cplx> endpoint(z.data(), z.data() + z.size());
    NewtonResult nr = newton_refine(sys, endpoint, opts.newton_tol);
    if (nr.converged) {
        res.status = PathStatus::finite;
        res.endpoint = nr.point;
        res.residual = nr.residual;
        return res;
    }
    Eigen::VectorXcd zr = Eigen::Map<const Eigen::VectorXcd>(nr.point.data(), nr.point.size());
    if (inf_norm(zr) > opts.divergence_norm || inf_norm(z) > opts.divergence_norm) {
        res.status = PathStatus::at_infinity;
        return res;
    }
    classify_stall();
    return res;
}

inline bool lex_less(const std::vector<Cplx>& a, const std::vector<Cplx>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
        if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
    }
    return false;
}

} // namespace detail

// Tracks every start root of the total-degree start system to the target.
// Failed paths are retried, first with a finer minimum step, then once more
// with a path-local fresh gamma. Deterministic for a fixed seed.
inline SolutionSet solve(const CriticalSystem& sys, const TrackerOptions& opts = {}) {
    CompiledSystem compiled(sys);
    const int nv = sys.nvars;
    if (static_cast<int>(sys.equations.size()) != nv)
        throw input_error("solve: system is not square");

    SolutionSet out;
    out.bezout = bezout_number(sys);
    Int paths_big = out.bezout;
    if (paths_big > 100000) throw input_error("solve: Bezout number too large for desk scale");
    const int n_paths = static_cast<int>(paths_big.convert_to<long>());

    std::mt19937_64 rng(detail::splitmix64(static_cast<std::uint64_t>(opts.seed)));
    detail::StartSystem start;
    start.degrees = sys.degrees;
    Cplx gamma = detail::unit_phase(rng);
    for (int i = 0; i < nv; ++i) start.b.push_back(detail::unit_phase(rng));

    // d_i-th roots of b_i, enumerated in odometer order over the multi-index
    std::vector<std::vector<Cplx>> roots(nv);
    for (int i = 0; i < nv; ++i) {
        double base_angle = std::arg(start.b[i]);
        for (int k = 0; k < sys.degrees[i]; ++k) {
            double angle = (base_angle + 2.0 * M_PI * k) / sys.degrees[i];
            roots[i].emplace_back(std::cos(angle), std::sin(angle));
        }
    }

    out.paths.resize(n_paths);
    for (int p = 0; p < n_paths; ++p) {
        Eigen::VectorXcd z0(nv);
        int rem = p;
        for (int i = 0; i < nv; ++i) {
            z0(i) = roots[i][rem % sys.degrees[i]];
            rem /= sys.degrees[i];
        }
        detail::Homotopy hom{compiled, start, gamma};
        PathResult r = detail::track_path(compiled, hom, z0, opts, opts.step_min, p);
        if (r.status == PathStatus::failed && opts.max_retries >= 1)
            r = detail::track_path(compiled, hom, z0, opts, opts.step_min / 10.0, p);
        if (r.status == PathStatus::failed && opts.max_retries >= 2) {
            std::mt19937_64 prng(detail::splitmix64(static_cast<std::uint64_t>(opts.seed) ^
                                                    (0xA511E9B3u + 2654435761ULL * (p + 1))));
            detail::Homotopy fresh{compiled, start, detail::unit_phase(prng)};
            r = detail::track_path(compiled, fresh, z0, opts, opts.step_min / 10.0, p);
        }
        // a path that stalls on every attempt right at the end, with the
        // norm still climbing, is a solution at infinity
        if (r.status == PathStatus::failed && r.stall_growing && r.s_end >= 0.99)
            r.status = PathStatus::at_infinity;
        r.start_index = p;
        out.paths[p] = std::move(r);
    }

    std::vector<const PathResult*> finite;
    for (const auto& r : out.paths) {
        switch (r.status) {
            case PathStatus::finite: ++out.n_finite; finite.push_back(&r); break;
            case PathStatus::at_infinity: ++out.n_diverged; break;
            case PathStatus::failed: ++out.n_failed; break;
        }
    }
    if (out.n_finite + out.n_diverged + out.n_failed != n_paths)
        throw internal_error("solve: path accounting out of balance");
    if (n_paths > 0 && out.n_failed == n_paths)
        throw input_error("solve: every path failed; system may be degenerate");

    // cluster finite endpoints
    for (const PathResult* r : finite) {
        bool merged = false;
        for (auto& sol : out.solutions) {
            double dist = 0.0, scale = 1.0;
            for (std::size_t i = 0; i < sol.point.size(); ++i) {
                dist = std::max(dist, std::abs(sol.point[i] - r->endpoint[i]));
                scale = std::max(scale, std::abs(sol.point[i]));
            }
            if (dist <= opts.dedup_tol * scale) {
                ++sol.cluster_size;
                if (r->residual < sol.residual) {
                    sol.point = r->endpoint;
                    sol.residual = r->residual;
                }
                merged = true;
                break;
            }
        }
        if (!merged) {
            Solution sol;
            sol.point = r->endpoint;
            sol.cluster_size = 1;
            sol.residual = r->residual;
            out.solutions.push_back(std::move(sol));
        }
    }
    for (auto& sol : out.solutions) {
        NewtonResult nr = newton_refine(compiled, sol.point, opts.newton_tol);
        sol.jacobian_min_singular_value = nr.jacobian_min_singular_value;
        if (nr.converged) {
            sol.point = nr.point;
            sol.residual = nr.residual;
        }
    }
    std::sort(out.solutions.begin(), out.solutions.end(),
              [](const Solution& a, const Solution& b) { return detail::lex_less(a.point, b.point); });
    return out;
}

// Bezout-difference accounting for solutions at infinity; for 3-space
// stages the generic expectation n*C(n,2) is recorded alongside.
struct InfinityAccount {
    Int bezout = 0;
    int finite = 0; // distinct finite solutions
    Int at_infinity_with_multiplicity = 0;
    bool reliable = false; // false when failed paths make the difference ambiguous
    std::optional<Int> generic_expected;
};

inline InfinityAccount classify(const SolutionSet& ss, int n, int ell) {
    InfinityAccount acc;
    acc.bezout = ss.bezout;
    acc.finite = static_cast<int>(ss.solutions.size());
    acc.at_infinity_with_multiplicity = ss.bezout - ss.n_finite;
    acc.reliable = ss.n_failed == 0;
    if (ell == 3) acc.generic_expected = Int(n) * Int(n) * Int(n - 1) / 2;
    return acc;
}

// Greedy nearest-endpoint matching used by the seed-robustness checks.
inline bool solution_sets_match(const SolutionSet& a, const SolutionSet& b, double tol) {
    if (a.solutions.size() != b.solutions.size()) return false;
    std::vector<bool> used(b.solutions.size(), false);
    for (const auto& sa : a.solutions) {
        bool matched = false;
        for (std::size_t j = 0; j < b.solutions.size() && !matched; ++j) {
            if (used[j]) continue;
            double dist = 0.0, scale = 1.0;
            for (std::size_t i = 0; i < sa.point.size(); ++i) {
                dist = std::max(dist, std::abs(sa.point[i] - b.solutions[j].point[i]));
                scale = std::max(scale, std::abs(sa.point[i]));
            }
            if (dist <= tol * scale) {
                used[j] = true;
                matched = true;
            }
        }
        if (!matched) return false;
    }
    return true;
}

} // namespace arrmorse
