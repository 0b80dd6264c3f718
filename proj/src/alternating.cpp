#include "alternating.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace qgamble::detail {

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

Eigen::VectorXd to_real_coords(const CMatrix& h) {
    const Index n = h.rows();
    Eigen::VectorXd v(n * n);
    Index k = 0;
    for (Index i = 0; i < n; ++i) v(k++) = h(i, i).real();
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            v(k++) = kSqrt2 * h(i, j).real();
            v(k++) = kSqrt2 * h(i, j).imag();
        }
    }
    return v;
}

CMatrix from_real_coords(const Eigen::VectorXd& v, Index n) {
    CMatrix h = CMatrix::Zero(n, n);
    Index k = 0;
    for (Index i = 0; i < n; ++i) h(i, i) = v(k++);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double re = v(k++) / kSqrt2;
            const double im = v(k++) / kSqrt2;
            h(i, j) = Complex(re, im);
            h(j, i) = Complex(re, -im);
        }
    }
    return h;
}

Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v) {
    // Sort descending, find the largest k with u_k - (Σ_{i<=k} u_i - 1)/k > 0.
    std::vector<double> u(v.data(), v.data() + v.size());
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumsum = 0.0;
    double theta = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        cumsum += u[k];
        const double t = (cumsum - 1.0) / static_cast<double>(k + 1);
        if (u[k] - t > 0.0) theta = t;
    }
    return (v.array() - theta).max(0.0).matrix();
}

CMatrix project_to_density(const CMatrix& x) {
    const CMatrix h = 0.5 * (x + x.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    const Eigen::VectorXd w = project_to_simplex(es.eigenvalues());
    const CMatrix& v = es.eigenvectors();
    CMatrix out = v * w.asDiagonal() * v.adjoint();
    return 0.5 * (out + out.adjoint());
}

CMatrix clip_above(const CMatrix& x, const CMatrix& upper) {
    const CMatrix d = 0.5 * ((x - upper) + (x - upper).adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(d);
    const Eigen::VectorXd w = es.eigenvalues().array().min(0.0).matrix();
    const CMatrix& v = es.eigenvectors();
    CMatrix out = upper + v * w.asDiagonal() * v.adjoint();
    return 0.5 * (out + out.adjoint());
}

double max_eigenvalue(const CMatrix& h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(es.eigenvalues().size() - 1);
}

Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
    const Index m = a.cols();
    Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
    if (m == 0) return x;

    const double tolerance = 10.0 * std::numeric_limits<double>::epsilon() *
                             a.cwiseAbs().maxCoeff() * static_cast<double>(std::max(a.rows(), m));
    std::vector<bool> passive(static_cast<std::size_t>(m), false);

    auto solve_passive = [&](Eigen::VectorXd& s) {
        std::vector<Index> idx;
        for (Index j = 0; j < m; ++j)
            if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
        Eigen::MatrixXd ap(a.rows(), static_cast<Index>(idx.size()));
        for (std::size_t k = 0; k < idx.size(); ++k) ap.col(static_cast<Index>(k)) = a.col(idx[k]);
        const Eigen::VectorXd sp = ap.completeOrthogonalDecomposition().solve(b);
        s.setZero();
        for (std::size_t k = 0; k < idx.size(); ++k) s(idx[k]) = sp(static_cast<Index>(k));
    };

    Eigen::VectorXd w = a.transpose() * (b - a * x);
    const long outer_cap = 3 * static_cast<long>(m) + 10;
    for (long outer = 0; outer < outer_cap; ++outer) {
        Index t = -1;
        double best = tolerance;
        for (Index j = 0; j < m; ++j) {
            if (!passive[static_cast<std::size_t>(j)] && w(j) > best) {
                best = w(j);
                t = j;
            }
        }
        if (t < 0) break;
        passive[static_cast<std::size_t>(t)] = true;

        Eigen::VectorXd s(m);
        for (long inner = 0; inner < outer_cap; ++inner) {
            solve_passive(s);
            double alpha = std::numeric_limits<double>::infinity();
            for (Index j = 0; j < m; ++j) {
                if (passive[static_cast<std::size_t>(j)] && s(j) <= tolerance) {
                    const double denom = x(j) - s(j);
                    if (denom > 0.0) alpha = std::min(alpha, x(j) / denom);
                    else alpha = 0.0;
                }
            }
            if (!std::isfinite(alpha)) break;
            x += alpha * (s - x);
            for (Index j = 0; j < m; ++j) {
                if (passive[static_cast<std::size_t>(j)] && x(j) <= tolerance) {
                    passive[static_cast<std::size_t>(j)] = false;
                    x(j) = 0.0;
                }
            }
        }
        x = s;
        w = a.transpose() * (b - a * x);
    }
    return x.cwiseMax(0.0);
}

PocsState pocs_density(const std::vector<HermitianMatrix>& gens, double margin, double tol,
                       long max_iter, CMatrix start, long stall_window) {
    const Index n = start.rows();
    const auto m = gens.size();

    // Work in real coordinates; the half-space step moves along the traceless part of G_j so
    // the iterate stays on Tr X = 1.
    std::vector<Eigen::VectorXd> g(m), gp(m);
    std::vector<double> gp_norm2(m);
    const Eigen::VectorXd id = to_real_coords(CMatrix::Identity(n, n));
    for (std::size_t j = 0; j < m; ++j) {
        g[j] = to_real_coords(gens[j].matrix());
        gp[j] = g[j] - (gens[j].trace() / static_cast<double>(n)) * id;
        gp_norm2[j] = gp[j].squaredNorm();
    }

    PocsState st;
    st.x = project_to_density(start);
    Eigen::VectorXd x = to_real_coords(st.x);

    auto violation = [&](const Eigen::VectorXd& v) {
        double worst = 0.0;
        for (std::size_t j = 0; j < m; ++j) worst = std::max(worst, margin - g[j].dot(v));
        return worst;
    };

    st.max_violation = violation(x);
    if (st.max_violation <= tol) {
        st.converged = true;
        return st;
    }

    double window_start = st.max_violation;
    for (long it = 1; it <= max_iter; ++it) {
        for (std::size_t j = 0; j < m; ++j) {
            const double a = g[j].dot(x);
            if (a < margin && gp_norm2[j] > 0.0) x += ((margin - a) / gp_norm2[j]) * gp[j];
        }
        st.x = project_to_density(from_real_coords(x, n));
        x = to_real_coords(st.x);
        st.max_violation = violation(x);
        st.iterations = it;
        if (st.max_violation <= tol) {
            st.converged = true;
            return st;
        }
        if (it % stall_window == 0) {
            if (st.max_violation > 0.999 * window_start) {
                st.stalled = true;
                return st;
            }
            window_start = st.max_violation;
        }
    }
    return st;
}

ConeSearch cone_point_below(
    const std::vector<HermitianMatrix>& gens, const CMatrix& upper, long max_iter,
    const std::function<bool(const Eigen::VectorXd&, const CMatrix&)>& accept) {
    const Index n = upper.rows();
    const auto m = static_cast<Index>(gens.size());
    ConeSearch out;
    out.weights = Eigen::VectorXd::Zero(m);
    out.combined = CMatrix::Zero(n, n);
    if (m == 0) return out;

    Eigen::MatrixXd a(n * n, m);
    for (Index j = 0; j < m; ++j) a.col(j) = to_real_coords(gens[static_cast<std::size_t>(j)].matrix());

    CMatrix y = upper;
    CMatrix prev_x = CMatrix::Constant(n, n, std::numeric_limits<double>::quiet_NaN());
    for (long it = 1; it <= max_iter; ++it) {
        out.weights = nnls(a, to_real_coords(y));
        out.combined = from_real_coords(a * out.weights, n);
        out.iterations = it;
        if (accept(out.weights, out.combined)) {
            out.found = true;
            return out;
        }
        if (it > 1 && (out.combined - prev_x).cwiseAbs().maxCoeff() <= 1e-15 * (1.0 + out.combined.cwiseAbs().maxCoeff()))
            return out;  // fixed point outside the target set
        prev_x = out.combined;
        y = clip_above(out.combined, upper);
    }
    return out;
}

} // namespace qgamble::detail
