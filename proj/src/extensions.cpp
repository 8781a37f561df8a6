#include "adjpair/extensions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "adjpair/error.hpp"

namespace adjpair {

namespace {

// Numerical rank cut relative to the largest singular value.
constexpr double kRankTol = 1e-10;

// Λ^{1/2} V^T for a Hermitian positive semidefinite G = V Λ V^H, keeping the
// eigenvalues above `floor`.
CMatrix isometric_coordinates(const CMatrix& g, double floor) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(g);
    const auto& lambda = es.eigenvalues();
    const double top = lambda.size() ? lambda.maxCoeff() : 0.0;
    const double cut = std::max(floor, kRankTol * top);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < lambda.size(); ++i)
        if (lambda[i] > cut) keep.push_back(i);
    CMatrix out(static_cast<Eigen::Index>(keep.size()), g.cols());
    for (std::size_t r = 0; r < keep.size(); ++r)
        out.row(static_cast<Eigen::Index>(r)) =
            std::sqrt(lambda[keep[r]]) * es.eigenvectors().col(keep[r]).transpose();
    return out;
}

// Orthonormal basis of the column span.
CMatrix orth(const CMatrix& m) {
    if (m.cols() == 0 || m.rows() == 0) return CMatrix(m.rows(), 0);
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    Eigen::Index r = 0;
    while (r < s.size() && s[r] > kRankTol * s[0]) ++r;
    return svd.matrixU().leftCols(r);
}

// sin of the largest principal angle from span(a) to span(b).
double one_sided(const CMatrix& qa, const CMatrix& qb) {
    if (qa.cols() == 0) return 0.0;
    if (qb.cols() == 0) return 1.0;
    const CMatrix rest = qa - qb * (qb.adjoint() * qa);
    return Eigen::JacobiSVD<CMatrix>(rest).singularValues()[0];
}

double span_distance(const CMatrix& a, const CMatrix& b) {
    const CMatrix qa = orth(a), qb = orth(b);
    if (qa.cols() != qb.cols()) return 1.0;
    return std::max(one_sided(qa, qb), one_sided(qb, qa));
}

CMatrix least_squares(const CMatrix& a, const CMatrix& b) {
    return a.completeOrthogonalDecomposition().solve(b);
}

double relative_frobenius(const CMatrix& diff, const CMatrix& ref) {
    const double r = ref.norm();
    return r > 0.0 ? diff.norm() / r : diff.norm();
}

CMatrix stack4(const KernelFrame& f, const CMatrix& u, const CMatrix& v, const CMatrix& ru, const CMatrix& rv) {
    const Eigen::Index n = std::max({u.cols(), v.cols(), ru.cols(), rv.cols()});
    CMatrix p = CMatrix::Zero(2 * f.dim_k(), n);
    const Eigen::Index a = f.dim_a(), b = f.dim_b();
    if (u.size()) p.block(0, 0, a, n) = u;
    if (v.size()) p.block(a, 0, b, n) = v;
    if (ru.size()) p.block(a + b, 0, a, n) = ru;
    if (rv.size()) p.block(2 * a + b, 0, b, n) = rv;
    return p;
}

// Embedded vectors (R*)⁻¹v + u for the columns of a 𝒦 basis.
CMatrix phi(const KernelFrame& f, const ExtensionSubspace& c) {
    return f.embed(stack4(f, c.u_part(), CMatrix(), CMatrix(), c.v_part()));
}

// Embedded vectors R⁻¹u + v.
CMatrix psi(const KernelFrame& f, const ExtensionSubspace& c) {
    return f.embed(stack4(f, CMatrix(), c.v_part(), c.u_part(), CMatrix()));
}

void check_frame(const DiscreteModel& model, const KernelFrame& frame) {
    if (frame.model() != model.digest())
        throw Error(ErrorKind::ModelMismatch, "extensions", "kernel frame was built for a different model");
}

}  // namespace

KernelFrame::KernelFrame(const DiscreteModel& model)
    : model_(model.digest()),
      dim_a_(static_cast<Eigen::Index>(model.kernel_a_star().size())),
      dim_b_(static_cast<Eigen::Index>(model.kernel_b_star().size())),
      subspace_tol_(model.tolerance().subspace) {
    std::vector<ModelVector> f;
    for (const auto& u : model.kernel_a_star()) f.push_back(u);
    for (const auto& v : model.kernel_b_star()) f.push_back(v);
    for (const auto& u : model.kernel_a_star()) f.push_back(apply_symbol(model, DiscreteModel::Z(), u));
    for (const auto& v : model.kernel_b_star()) f.push_back(apply_symbol(model, DiscreteModel::Z_star(), v));
    const auto n = static_cast<Eigen::Index>(f.size());
    CMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j) {
            const auto ip = inner_product(model, f[static_cast<std::size_t>(i)], f[static_cast<std::size_t>(j)]);
            g(i, j) = ip.value;
            g(j, i) = std::conj(ip.value);
            bound_ = std::max(bound_, ip.bound);
        }
    gram_a_ = g.topLeftCorner(dim_a_, dim_a_);
    gram_b_ = g.block(dim_a_, dim_a_, dim_b_, dim_b_);
    const double floor = 10.0 * static_cast<double>(n) * bound_;
    embedding_ = isometric_coordinates(g, floor);
    k_embedding_ = isometric_coordinates(gram_k(), floor);
}

CMatrix KernelFrame::gram_k() const {
    CMatrix g = CMatrix::Zero(dim_k(), dim_k());
    g.topLeftCorner(dim_a_, dim_a_) = gram_a_;
    g.bottomRightCorner(dim_b_, dim_b_) = gram_b_;
    return g;
}

CMatrix KernelFrame::embed(const CMatrix& p) const { return embedding_ * p; }
CMatrix KernelFrame::k_embed(const CMatrix& k) const { return k_embedding_ * k; }

ExtensionSubspace::ExtensionSubspace(const KernelFrame& frame, CMatrix basis) : basis_(std::move(basis)), dim_a_(frame.dim_a()) {
    if (basis_.rows() != frame.dim_k())
        throw Error(ErrorKind::InvalidArgument, "extensions", "subspace basis must have dim K rows");
    if (basis_.cols() > frame.dim_k())
        throw Error(ErrorKind::DegenerateSubspace, "extensions", "more basis vectors than dim K");
    if (!basis_.allFinite()) throw Error(ErrorKind::InvalidArgument, "extensions", "subspace basis must be finite");
    if (basis_.cols() == 0) return;
    const CMatrix h = basis_.transpose() * frame.gram_k() * basis_.conjugate();
    Eigen::VectorXd d = h.diagonal().real();
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        if (!(d[i] > 0.0)) throw Error(ErrorKind::DegenerateSubspace, "extensions", "zero basis vector");
        d[i] = 1.0 / std::sqrt(d[i]);
    }
    const CMatrix hn = d.asDiagonal() * h * d.asDiagonal();
    const double smallest = Eigen::SelfAdjointEigenSolver<CMatrix>(hn, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
    if (smallest < frame.subspace_tol()) {
        std::ostringstream os;
        os << "basis is linearly dependent (normalized Gram eigenvalue " << smallest << ")";
        throw Error(ErrorKind::DegenerateSubspace, "extensions", os.str());
    }
}

ExtensionSubspace ExtensionSubspace::zero(const KernelFrame& frame) {
    return ExtensionSubspace(CMatrix(frame.dim_k(), 0), frame.dim_a());
}

ExtensionSubspace ExtensionSubspace::whole(const KernelFrame& frame) {
    return ExtensionSubspace(CMatrix::Identity(frame.dim_k(), frame.dim_k()), frame.dim_a());
}

double ExtensionSubspace::relative_distance(const KernelFrame& frame, const CVector& k) const {
    const CMatrix ek = frame.k_embed(k);
    const double scale = ek.norm();
    if (scale == 0.0) return 0.0;
    if (dim() == 0) return 1.0;
    const CMatrix q = orth(frame.k_embed(basis_));
    return (ek - q * (q.adjoint() * ek)).norm() / scale;
}

double subspace_distance(const KernelFrame& frame, const ExtensionSubspace& a, const ExtensionSubspace& b) {
    if (a.dim() != b.dim()) return 1.0;
    if (a.dim() == 0) return 0.0;
    return span_distance(frame.k_embed(a.basis()), frame.k_embed(b.basis()));
}

ExtensionSubspace cprime(const KernelFrame& frame, const ExtensionSubspace& c) {
    if (c.dim() == 0) return ExtensionSubspace::whole(frame);
    // Row i: conj(u_i)^T conj(G_A) | -conj(v_i)^T conj(G_B).
    CMatrix j = frame.gram_k().conjugate();
    j.bottomRows(frame.dim_b()) *= -1.0;
    const CMatrix rows = c.basis().adjoint() * j;
    Eigen::JacobiSVD<CMatrix> svd(rows, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    Eigen::Index rank = 0;
    while (rank < s.size() && s[rank] > kRankTol * s[0]) ++rank;
    return ExtensionSubspace(frame, svd.matrixV().rightCols(frame.dim_k() - rank));
}

ModelVector t_c_apply(const DiscreteModel& model, const KernelFrame& frame, const ExtensionSubspace& c,
                      const AStarElement& e) {
    check_frame(model, frame);
    CVector k(frame.dim_k());
    k << e.u1, e.v1;
    const double d = c.relative_distance(frame, k);
    if (d > frame.subspace_tol()) {
        std::ostringstream os;
        os << "(u1, v1) is not in C (relative distance " << d << ")";
        throw Error(ErrorKind::NotInExtensionDomain, "extensions", os.str());
    }
    return astar_apply(model, e);
}

ModelVector s_cprime_apply(const DiscreteModel& model, const KernelFrame& frame, const ExtensionSubspace& c,
                           const BStarElement& e) {
    check_frame(model, frame);
    const ExtensionSubspace cp = cprime(frame, c);
    CVector k(frame.dim_k());
    k << e.u2, e.v2;
    const double d = cp.relative_distance(frame, k);
    if (d > frame.subspace_tol()) {
        std::ostringstream os;
        os << "(u2, v2) is not in C' (relative distance " << d << ")";
        throw Error(ErrorKind::NotInExtensionDomain, "extensions", os.str());
    }
    return bstar_apply(model, e);
}

std::string to_string(NotNormalReason r) {
    switch (r) {
        case NotNormalReason::DomainMismatch: return "DomainMismatch";
        case NotNormalReason::NormMismatch: return "NormMismatch";
        case NotNormalReason::DegenerateDim: return "DegenerateDim";
    }
    return "?";
}

NormalityVerdict check_normal(const KernelFrame& frame, const ExtensionSubspace& c, std::optional<double> tol) {
    NormalityVerdict v;
    v.threshold = tol.value_or(frame.subspace_tol());
    const ExtensionSubspace cp = cprime(frame, c);
    if (c.dim() != cp.dim() || c.dim() == 0) {
        v.reason = NotNormalReason::DegenerateDim;
        v.domain_residual = 1.0;
        return v;
    }
    const CMatrix ph = phi(frame, c), ps = psi(frame, cp);
    v.domain_residual = span_distance(ph, ps);
    if (!(v.domain_residual <= v.threshold)) {
        v.reason = NotNormalReason::DomainMismatch;
        return v;
    }
    // Column j of C′ corresponds to the element of C with coefficients m_j.
    const CMatrix m = least_squares(ph, ps);
    const CMatrix v1 = c.v_part() * m;
    const CMatrix u2 = cp.u_part();
    const CMatrix hv = v1.transpose() * frame.gram_b() * v1.conjugate();
    const CMatrix hu = u2.transpose() * frame.gram_a() * u2.conjugate();
    v.norm_residual = relative_frobenius(hv - hu, hu);
    if (!(v.norm_residual <= v.threshold)) {
        v.reason = NotNormalReason::NormMismatch;
        return v;
    }
    v.normal = true;
    v.witness = v1 * u2.completeOrthogonalDecomposition().pseudoInverse();
    return v;
}

ExtensionSubspace graph(const KernelFrame& frame, const GraphOperator& g) {
    if (g.matrix.rows() != frame.dim_a() || g.matrix.cols() != frame.dim_b())
        throw Error(ErrorKind::InvalidArgument, "extensions", "graph operator must be dim_a x dim_b");
    CMatrix basis(frame.dim_k(), frame.dim_b());
    basis << g.matrix, CMatrix::Identity(frame.dim_b(), frame.dim_b());
    return ExtensionSubspace(frame, basis);
}

CMatrix graph_adjoint(const KernelFrame& frame, const GraphOperator& g) {
    return frame.gram_b().conjugate().fullPivLu().solve(g.matrix.adjoint() * frame.gram_a().conjugate());
}

std::optional<CMatrix> boundary_isometry(const KernelFrame& frame, const GraphOperator& g, std::optional<double> tol) {
    const double t = tol.value_or(frame.subspace_tol());
    if (g.matrix.rows() != frame.dim_a() || g.matrix.cols() != frame.dim_b()) return std::nullopt;
    if (frame.dim_a() != frame.dim_b()) return std::nullopt;
    const CMatrix cs = graph_adjoint(frame, g);
    const Eigen::Index b = frame.dim_b(), a = frame.dim_a();
    // (R*)⁻¹Uu + CUu for the columns of U, and R⁻¹u + C*u for the basis of 𝒩(A*).
    const CMatrix lhs = frame.embed(stack4(frame, g.matrix, CMatrix(), CMatrix(), CMatrix::Identity(b, b)));
    const CMatrix rhs = frame.embed(stack4(frame, CMatrix(), cs, CMatrix::Identity(a, a), CMatrix()));
    const CMatrix u = least_squares(lhs, rhs);
    if (relative_frobenius(lhs * u - rhs, rhs) > t) return std::nullopt;
    const CMatrix iso = u.transpose() * frame.gram_b() * u.conjugate();
    if (relative_frobenius(iso - frame.gram_a(), frame.gram_a()) > t) return std::nullopt;
    return u;
}

BStarElement adjoint_presentation(const DiscreteModel& model, const KernelFrame& frame, const ExtensionSubspace& c,
                                  const AStarElement& e) {
    check_frame(model, frame);
    const ExtensionSubspace cp = cprime(frame, c);
    const CMatrix target = frame.embed(stack4(frame, e.u1, CMatrix(), CMatrix(), e.v1));
    const CMatrix ps = psi(frame, cp);
    const CMatrix coeff = least_squares(ps, target);
    if (relative_frobenius(ps * coeff - target, target) > frame.subspace_tol())
        throw Error(ErrorKind::NotInExtensionDomain, "extensions",
                    "element has no presentation over C'; T_C is not normal on it");
    const CMatrix k = cp.basis() * coeff;
    return make_bstar(model, e.x0, k.topRows(frame.dim_a()).col(0), k.bottomRows(frame.dim_b()).col(0));
}

}  // namespace adjpair
