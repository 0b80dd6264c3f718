#include "qgamble/hermitian.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace qgamble {

// --------------------------- HermitianMatrix -------------------------------

HermitianMatrix::HermitianMatrix(CMatrix m) : m_(std::move(m)) {
    CMatrix adj = m_.adjoint();
    m_ = (m_ + adj) * 0.5;
}

HermitianMatrix trusted_hermitian(CMatrix m) { return HermitianMatrix(std::move(m)); }

HermitianMatrix HermitianMatrix::from_matrix(const CMatrix& m) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        std::ostringstream os;
        os << "expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
        throw Error(ErrorCode::BadShape, os.str());
    }
    const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (asym > tol::kConstruction) {
        std::ostringstream os;
        os << "max |A - A^dagger| = " << asym << " exceeds " << tol::kConstruction;
        throw Error(ErrorCode::NotHermitian, os.str());
    }
    return HermitianMatrix(m);
}

HermitianMatrix HermitianMatrix::identity(Index n) {
    if (n < 1) throw Error(ErrorCode::BadShape, "dimension must be >= 1");
    return HermitianMatrix(CMatrix::Identity(n, n));
}

HermitianMatrix HermitianMatrix::zero(Index n) {
    if (n < 1) throw Error(ErrorCode::BadShape, "dimension must be >= 1");
    return HermitianMatrix(CMatrix::Zero(n, n));
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& d) {
    if (d.empty()) throw Error(ErrorCode::BadShape, "empty diagonal");
    const auto n = static_cast<Index>(d.size());
    CMatrix m = CMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
    return HermitianMatrix(std::move(m));
}

double HermitianMatrix::max_abs() const { return m_.cwiseAbs().maxCoeff(); }

static void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b) {
    if (a.dim() != b.dim()) {
        std::ostringstream os;
        os << a.dim() << " vs " << b.dim();
        throw Error(ErrorCode::DimensionMismatch, os.str());
    }
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
    require_same_dim(*this, o);
    return HermitianMatrix(m_ + o.m_);
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
    require_same_dim(*this, o);
    return HermitianMatrix(m_ - o.m_);
}

HermitianMatrix HermitianMatrix::operator-() const { return HermitianMatrix(-m_); }
HermitianMatrix HermitianMatrix::operator*(double s) const { return HermitianMatrix(m_ * s); }
HermitianMatrix HermitianMatrix::operator/(double s) const { return HermitianMatrix(m_ / s); }

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& o) {
    require_same_dim(*this, o);
    m_ += o.m_;
    return *this;
}

HermitianMatrix make_hermitian(const std::vector<std::vector<Complex>>& grid) {
    const auto n = grid.size();
    if (n == 0) throw Error(ErrorCode::BadShape, "empty grid");
    CMatrix m(static_cast<Index>(n), static_cast<Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (grid[i].size() != n) {
            std::ostringstream os;
            os << "row " << i << " has " << grid[i].size() << " entries, expected " << n;
            throw Error(ErrorCode::BadShape, os.str());
        }
        for (std::size_t j = 0; j < n; ++j)
            m(static_cast<Index>(i), static_cast<Index>(j)) = grid[i][j];
    }
    return HermitianMatrix::from_matrix(m);
}

double max_entry_distance(const HermitianMatrix& a, const HermitianMatrix& b) {
    require_same_dim(a, b);
    return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

// --------------------------- Spectral decomposition ------------------------

HermitianMatrix SpectralDecomposition::reconstruct() const {
    CMatrix acc = CMatrix::Zero(projectors.front().dim(), projectors.front().dim());
    for (std::size_t i = 0; i < eigenvalues.size(); ++i)
        acc += eigenvalues[i] * projectors[i].matrix();
    return trusted_hermitian(std::move(acc));
}

SpectralDecomposition spectral_decompose(const HermitianMatrix& g, double group_tol) {
    if (!(group_tol > 0.0)) throw Error(ErrorCode::BadParameter, "group_tol must be > 0");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(g.matrix());
    if (es.info() != Eigen::Success)
        throw Error(ErrorCode::NumericalFailure, "Hermitian eigensolver did not converge");

    const auto& vals = es.eigenvalues();  // ascending
    const auto& vecs = es.eigenvectors();
    const Index n = g.dim();

    SpectralDecomposition out;
    Index start = 0;
    while (start < n) {
        Index end = start + 1;
        while (end < n && vals(end) - vals(end - 1) <= group_tol) ++end;
        const Index k = end - start;
        const CMatrix v = vecs.middleCols(start, k);
        out.eigenvalues.push_back(vals.segment(start, k).mean());
        out.projectors.push_back(trusted_hermitian(v * v.adjoint()));
        out.ranks.push_back(k);
        start = end;
    }
    return out;
}

Eigen::VectorXd eigenvalues(const HermitianMatrix& g) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(g.matrix(), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw Error(ErrorCode::NumericalFailure, "Hermitian eigensolver did not converge");
    return es.eigenvalues();
}

// --------------------------- Inner product / positivity --------------------

double inner(const HermitianMatrix& g, const HermitianMatrix& r) {
    require_same_dim(g, r);
    // Tr(G† R) = Σ_ij conj(G_ij) R_ij
    return g.matrix().cwiseProduct(r.matrix().conjugate()).sum().real();
}

PsdClass psd_classify(const HermitianMatrix& g) {
    const Eigen::VectorXd ev = eigenvalues(g);
    const double lo = ev(0);
    const double hi = ev(ev.size() - 1);
    const double t = tol::kDerived;
    if (std::abs(lo) <= t && std::abs(hi) <= t) return PsdClass::Zero;
    if (lo >= -t) return PsdClass::PositiveNonzero;
    if (hi <= t) return PsdClass::NegativeNonzero;
    return PsdClass::Indefinite;
}

const char* to_string(PsdClass c) noexcept {
    switch (c) {
    case PsdClass::PositiveNonzero: return "PositiveNonzero";
    case PsdClass::NegativeNonzero: return "NegativeNonzero";
    case PsdClass::Zero: return "Zero";
    case PsdClass::Indefinite: return "Indefinite";
    }
    return "?";
}

bool is_projector(const HermitianMatrix& p, double tolerance) {
    const CMatrix& m = p.matrix();
    return (m * m - m).cwiseAbs().maxCoeff() <= tolerance;
}

// --------------------------- Bloch / Pauli ---------------------------------

double BlochVector::norm() const { return std::sqrt(dot(*this)); }

double BlochVector::dot(const BlochVector& o) const {
    return c[0] * o.c[0] + c[1] * o.c[1] + c[2] * o.c[2];
}

const CMatrix& pauli(int axis) {
    static const std::array<CMatrix, 3> sigma = [] {
        std::array<CMatrix, 3> s;
        const Complex i(0.0, 1.0);
        s[0] = CMatrix(2, 2);
        s[0] << 0.0, 1.0,
                1.0, 0.0;
        s[1] = CMatrix(2, 2);
        s[1] << 0.0, -i,
                i, 0.0;
        s[2] = CMatrix(2, 2);
        s[2] << 1.0, 0.0,
                0.0, -1.0;
        return s;
    }();
    return sigma.at(static_cast<std::size_t>(axis));
}

HermitianMatrix bloch_matrix(const BlochVector& r) {
    CMatrix m = CMatrix::Identity(2, 2);
    for (int k = 0; k < 3; ++k) m += r.c[static_cast<std::size_t>(k)] * pauli(k);
    return trusted_hermitian(0.5 * m);
}

HermitianMatrix projector_from_bloch(const BlochVector& n) {
    const double nrm = n.norm();
    if (std::abs(nrm - 1.0) > tol::kConstruction) {
        std::ostringstream os;
        os << "Bloch vector norm " << nrm << " is not 1";
        throw Error(ErrorCode::NotUnit, os.str());
    }
    return bloch_matrix(n);
}

BlochVector bloch_from_projector(const HermitianMatrix& p) {
    if (p.dim() != 2) throw Error(ErrorCode::WrongDimension, "Bloch vectors exist only for n = 2");
    if (!is_projector(p) || std::abs(p.trace() - 1.0) > tol::kDerived)
        throw Error(ErrorCode::NotRank1Projector, "expected an idempotent trace-1 matrix");
    // Π = ½ [[1 + z, x − i y], [x + i y, 1 − z]]
    BlochVector n{{2.0 * p(1, 0).real(), 2.0 * p(1, 0).imag(), (p(0, 0) - p(1, 1)).real()}};
    const double nrm = n.norm();
    for (auto& v : n.c) v /= nrm;
    return n;
}

// --------------------------- Frame -----------------------------------------

Frame Frame::from_projectors(std::vector<HermitianMatrix> projectors) {
    if (projectors.empty()) throw Error(ErrorCode::BadFrame, "empty frame");
    const Index n = projectors.front().dim();
    if (static_cast<Index>(projectors.size()) != n) {
        std::ostringstream os;
        os << "a rank-1 frame in dimension " << n << " needs " << n << " projectors, got "
           << projectors.size();
        throw Error(ErrorCode::BadFrame, os.str());
    }
    CMatrix sum = CMatrix::Zero(n, n);
    for (std::size_t i = 0; i < projectors.size(); ++i) {
        const auto& p = projectors[i];
        if (p.dim() != n) throw Error(ErrorCode::BadFrame, "projectors of different dimensions");
        if (!is_projector(p)) throw Error(ErrorCode::BadFrame, "member is not idempotent");
        if (std::abs(p.trace() - 1.0) > tol::kDerived)
            throw Error(ErrorCode::BadFrame, "member is not rank 1");
        for (std::size_t k = 0; k < i; ++k) {
            if ((p.matrix() * projectors[k].matrix()).cwiseAbs().maxCoeff() > tol::kDerived)
                throw Error(ErrorCode::BadFrame, "members are not mutually orthogonal");
        }
        sum += p.matrix();
    }
    if ((sum - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > tol::kDerived)
        throw Error(ErrorCode::BadFrame, "projectors do not sum to the identity");
    return Frame(n, std::move(projectors));
}

Frame Frame::from_unitary(const CMatrix& u) {
    if (u.rows() != u.cols() || u.rows() < 1) throw Error(ErrorCode::BadShape, "unitary must be square");
    std::vector<HermitianMatrix> ps;
    ps.reserve(static_cast<std::size_t>(u.cols()));
    for (Index j = 0; j < u.cols(); ++j) {
        const CVector v = u.col(j);
        ps.push_back(trusted_hermitian(v * v.adjoint()));
    }
    return from_projectors(std::move(ps));
}

Frame Frame::from_bloch(const BlochVector& n) {
    return from_projectors({projector_from_bloch(n), projector_from_bloch(-n)});
}

Frame Frame::computational(Index n) {
    return from_unitary(CMatrix::Identity(n, n));
}

} // namespace qgamble
