#pragma once

#include <arrmorse/frame.hpp>
#include <arrmorse/poincare.hpp>
#include <arrmorse/solver.hpp>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace arrmorse {

struct StageReport {
    int stage_dim = 0;      // ambient dimension k at this stage
    Int predicted = 0;      // n * b_{k-1}(M*)
    int found = 0;          // distinct critical points of |z_k| (k=1: the n roots)
    Int bezout = 0;
    int diverged = 0;
    int failed = 0;
    double max_solution_norm = 0.0;
    bool match = false; // predicted == found and failed == 0

    bool operator==(const StageReport&) const = default;
};

struct EquivarianceReport {
    Cplx zeta{1.0, 0.0};
    // orbit members index into the concatenation of the per-stage solution
    // lists, top stage first
    std::vector<std::vector<int>> orbits;
    bool pass = true;

    bool operator==(const EquivarianceReport&) const = default;
};

struct MinimalityReport {
    CellCounts cell_counts;
    std::vector<StageReport> stages; // k = dim down to 1
    bool euler_ok = false;
    EquivarianceReport equivariance;
    bool indices_ok = false;
    long frame_seed = 0;

    bool overall_pass() const {
        for (const auto& st : stages)
            if (!st.match) return false;
        return euler_ok && equivariance.pass && indices_ok;
    }

    const StageReport* stage(int k) const {
        for (const auto& st : stages)
            if (st.stage_dim == k) return &st;
        return nullptr;
    }

    bool operator==(const MinimalityReport&) const = default;
};

struct MorseIndexResult {
    std::optional<int> index; // nullopt: an eigenvalue sits inside the +-1e-6 band
    int tangent_dim = 0;
    std::vector<double> eigenvalues;
};

// Morse index of |z_last| restricted to the fiber at a refined critical
// point. The fiber constraint is equations[0] = 0 split into real and
// imaginary parts; the Lagrangian Hessian is projected onto an orthonormal
// basis of the real tangent space and differentiated centrally.
inline MorseIndexResult morse_index(const std::vector<Cplx>& point, const CriticalSystem& sys) {
    const int k = sys.nvars;
    const int dim_real = 2 * k;
    const CplxPoly g = to_complex(sys.equations[0]); // Q - level
    std::vector<CplxPoly> grad;
    for (int v = 0; v < k; ++v) grad.push_back(g.differentiate(v));

    // real coordinates stacked as (Re z_1..Re z_k, Im z_1..Im z_k)
    auto to_complex_point = [&](const Eigen::VectorXd& x) {
        std::vector<Cplx> z(k);
        for (int i = 0; i < k; ++i) z[i] = Cplx(x(i), x(k + i));
        return z;
    };

    // rows (Re g, Im g); Cauchy-Riemann gives the entries from dg/dz_j
    auto real_jacobian = [&](const std::vector<Cplx>& z) {
        Eigen::MatrixXd jg(2, dim_real);
        for (int j = 0; j < k; ++j) {
            Cplx d = evaluate(grad[j], z);
            jg(0, j) = d.real();
            jg(0, k + j) = -d.imag();
            jg(1, j) = d.imag();
            jg(1, k + j) = d.real();
        }
        return jg;
    };

    auto objective_gradient = [&](const std::vector<Cplx>& z) {
        Eigen::VectorXd gf = Eigen::VectorXd::Zero(dim_real);
        double r = std::abs(z[k - 1]);
        if (r == 0.0) throw internal_error("morse_index: critical point on the zero level");
        gf(k - 1) = z[k - 1].real() / r;
        gf(2 * k - 1) = z[k - 1].imag() / r;
        return gf;
    };

    Eigen::VectorXd p(dim_real);
    for (int i = 0; i < k; ++i) {
        p(i) = point[i].real();
        p(k + i) = point[i].imag();
    }

    std::vector<Cplx> zp = to_complex_point(p);
    Eigen::MatrixXd jg = real_jacobian(zp);
    Eigen::VectorXd gf = objective_gradient(zp);

    // Lagrange multipliers from the first-order condition
    Eigen::Vector2d lambda = jg.transpose().colPivHouseholderQr().solve(gf);

    // orthonormal tangent basis: kernel of the 2 x 2k constraint Jacobian
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jg, Eigen::ComputeFullV);
    MorseIndexResult res;
    res.tangent_dim = dim_real - 2;
    Eigen::MatrixXd tangent = svd.matrixV().rightCols(res.tangent_dim);

    auto grad_lagrangian = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        std::vector<Cplx> z = to_complex_point(x);
        return objective_gradient(z) - real_jacobian(z).transpose() * lambda;
    };

    const double h = 1e-5;
    Eigen::MatrixXd hess(res.tangent_dim, res.tangent_dim);
    for (int j = 0; j < res.tangent_dim; ++j) {
        Eigen::VectorXd dir = tangent.col(j);
        Eigen::VectorXd diff = (grad_lagrangian(p + h * dir) - grad_lagrangian(p - h * dir)) / (2.0 * h);
        hess.col(j) = tangent.transpose() * diff;
    }
    hess = 0.5 * (hess + hess.transpose()).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hess);
    int negatives = 0;
    bool borderline = false;
    for (int i = 0; i < res.tangent_dim; ++i) {
        double ev = eig.eigenvalues()(i);
        res.eigenvalues.push_back(ev);
        if (ev < -1e-6)
            ++negatives;
        else if (ev <= 1e-6)
            borderline = true;
    }
    if (!borderline) res.index = negatives;
    return res;
}

// Partition of a solution set into orbits of z -> zeta z, zeta = e^(2 pi i/n).
// Passing requires the set to be closed under the action to 1e-8 and every
// orbit to have full size n.
inline EquivarianceReport equivariance_check(const std::vector<std::vector<Cplx>>& solutions,
                                             int n) {
    EquivarianceReport rep;
    rep.zeta = Cplx(std::cos(2.0 * M_PI / n), std::sin(2.0 * M_PI / n));
    rep.pass = true;
    const int m = static_cast<int>(solutions.size());
    if (m == 0) return rep; // vacuously closed
    const double tol = 1e-8;
    std::vector<int> image(m, -1);
    for (int i = 0; i < m; ++i) {
        double scale = 1.0;
        for (const auto& c : solutions[i]) scale = std::max(scale, std::abs(c));
        for (int j = 0; j < m; ++j) {
            double dist = 0.0;
            for (std::size_t v = 0; v < solutions[i].size(); ++v)
                dist = std::max(dist, std::abs(rep.zeta * solutions[i][v] - solutions[j][v]));
            if (dist <= tol * scale) {
                image[i] = j;
                break;
            }
        }
        if (image[i] < 0) rep.pass = false;
    }
    if (!rep.pass) return rep;
    std::vector<bool> seen(m, false);
    for (int i = 0; i < m; ++i) {
        if (seen[i]) continue;
        std::vector<int> orbit;
        int cur = i;
        while (!seen[cur]) {
            seen[cur] = true;
            orbit.push_back(cur);
            cur = image[cur];
        }
        if (static_cast<int>(orbit.size()) != n) rep.pass = false;
        rep.orbits.push_back(std::move(orbit));
    }
    return rep;
}

// One solved stage bundled with everything the report needs.
struct StageSolve {
    StageReport report;
    CriticalSystem system;                  // k >= 2 only
    SolutionSet solutions;                  // k >= 2 only
    EquivarianceReport equivariance;        // orbit indices are stage-local
    std::vector<MorseIndexResult> indices;  // one per distinct solution
};

namespace detail {

inline std::vector<std::vector<Cplx>> solution_points(const SolutionSet& ss) {
    std::vector<std::vector<Cplx>> pts;
    pts.reserve(ss.solutions.size());
    for (const auto& s : ss.solutions) pts.push_back(s.point);
    return pts;
}

} // namespace detail

// Builds and solves the stage-k critical system of the framed arrangement.
inline StageSolve solve_stage(const Arrangement& arr, const IntMat& frame, int k,
                              const Int& predicted, const TrackerOptions& opts) {
    if (k < 2) throw input_error("solve_stage: stage 1 is analytic, not solved");
    StageSolve st;
    Arrangement stage_arr = restrict_stage(arr, frame, k);
    st.system = build_critical_system(expand_product(stage_arr));
    st.solutions = solve(st.system, opts);
    st.report.stage_dim = k;
    st.report.predicted = predicted;
    st.report.found = static_cast<int>(st.solutions.solutions.size());
    st.report.bezout = st.solutions.bezout;
    st.report.diverged = st.solutions.n_diverged;
    st.report.failed = st.solutions.n_failed;
    st.report.max_solution_norm = st.solutions.max_solution_norm();
    st.report.match = Int(st.report.found) == predicted && st.report.failed == 0;
    st.equivariance = equivariance_check(detail::solution_points(st.solutions), arr.size());
    for (const auto& sol : st.solutions.solutions)
        st.indices.push_back(morse_index(sol.point, st.system));
    return st;
}

// The base case never solves anything: the forms restricted to one variable
// multiply to c*z^n, so the slice consists of the n roots of c z^n = 1.
inline StageSolve stage_one(const Arrangement& arr, const IntMat& frame, const Int& predicted) {
    StageSolve st;
    Arrangement stage2 = restrict_stage(arr, frame, 2);
    std::vector<RatVec> rows1;
    for (const auto& f : stage2.forms) {
        Rat a = f.constant_vector()[0];
        if (a == 0) throw frame_error("frame not generic: a form restricts to zero at stage 1", 1, {});
        rows1.push_back({a});
    }
    ExpandedProduct ep = expand_product(rows1); // z^n up to the recorded scale
    const int n = arr.size();
    st.report.stage_dim = 1;
    st.report.predicted = predicted;
    st.report.found = n;
    st.report.bezout = n;
    st.report.max_solution_norm = std::pow(std::abs(to_double(ep.scale)), 1.0 / n);
    st.report.match = predicted == n;
    return st;
}

// Full Morse-theoretic verification: choose a stage-wise generic frame,
// solve the critical system of every slice, and compare the found counts
// with the lattice predictions. A mismatch re-randomizes the frame once
// (the polar-curve hypothesis has no symbolic test; a fresh frame is the
// practical proxy) and is reported, never thrown.
inline MinimalityReport analyze(const Arrangement& arr, const TrackerOptions& opts = {}) {
    if (!arr.is_param_free())
        throw input_error("analyze requires a parameter-free arrangement (use family_scan)");
    IntersectionLattice lat = build_lattice(arr);
    PoincareData pd = poincare(lat);
    const int n = arr.size();
    CellCounts cc = predict_cells(pd, n);

    MinimalityReport report;
    for (int attempt = 0; attempt < 2; ++attempt) {
        long frame_seed = opts.seed + attempt;
        IntMat frame = choose_frame(arr, frame_seed, 64, /*try_identity_first=*/attempt == 0);

        MinimalityReport rep;
        rep.cell_counts = cc;
        rep.frame_seed = frame_seed;
        rep.equivariance.zeta = Cplx(std::cos(2.0 * M_PI / n), std::sin(2.0 * M_PI / n));
        rep.indices_ok = true;
        int offset = 0;
        for (int k = arr.dim; k >= 1; --k) {
            Int predicted = Int(n) * (k - 1 < pd.dim ? pd.betti_mstar[k - 1] : Int(0));
            StageSolve st = k >= 2 ? solve_stage(arr, frame, k, predicted, opts)
                                   : stage_one(arr, frame, predicted);
            rep.stages.push_back(st.report);
            if (k >= 2) {
                if (!st.equivariance.pass) rep.equivariance.pass = false;
                for (const auto& orbit : st.equivariance.orbits) {
                    std::vector<int> shifted;
                    for (int idx : orbit) shifted.push_back(idx + offset);
                    rep.equivariance.orbits.push_back(std::move(shifted));
                }
                offset += st.report.found;
                for (const auto& mi : st.indices)
                    if (!mi.index || *mi.index != k - 1) rep.indices_ok = false;
            }
        }
        // Euler identity: sum of (-1)^(k-1) found_k against n * P(M*)(-1)
        Int euler_found = 0;
        for (const auto& st : rep.stages) {
            Int c = Int(st.found);
            euler_found += (st.stage_dim - 1) % 2 == 0 ? c : -c;
        }
        rep.euler_ok = euler_found == Int(n) * pd.p_mstar.evaluate(Int(-1));

        report = std::move(rep);
        if (report.overall_pass()) break;
    }
    return report;
}

// Spec-facing helper; analyze() performs the same check internally.
inline bool euler_check(const MinimalityReport& report, const PoincareData& pd, int n) {
    Int euler_found = 0;
    for (const auto& st : report.stages) {
        Int c = Int(st.found);
        euler_found += (st.stage_dim - 1) % 2 == 0 ? c : -c;
    }
    return euler_found == Int(n) * pd.p_mstar.evaluate(Int(-1));
}

struct FamilyRow {
    Rat t;
    std::optional<MinimalityReport> report;
    std::string error; // set when evaluation at t degenerates

    bool operator==(const FamilyRow&) const = default;
};

struct FamilyReport {
    std::vector<FamilyRow> rows;

    bool operator==(const FamilyReport&) const = default;
};

// Evaluates the family at each parameter value and runs the full pipeline
// independently per value; nothing is path-tracked in t.
inline FamilyReport family_scan(const Arrangement& arr, const std::vector<Rat>& t_values,
                                const TrackerOptions& opts = {}) {
    if (!arr.is_parametric()) throw input_error("family_scan requires a parametric arrangement");
    if (t_values.empty()) throw input_error("family_scan: no parameter values given");
    FamilyReport fam;
    for (const auto& t : t_values) {
        FamilyRow row;
        row.t = t;
        try {
            Arrangement at = arr.evaluate_at(t);
            row.report = analyze(at, opts);
        } catch (const error& e) {
            row.error = e.what();
        }
        fam.rows.push_back(std::move(row));
    }
    return fam;
}

} // namespace arrmorse
