#include "qae/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace qae {

namespace {

void require_square(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw ValidationError("matrix must be square and non-empty");
  }
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

BipartiteDims::BipartiteDims(std::size_t a, std::size_t b) : d_a(a), d_b(b) {
  if (a == 0 || b == 0) throw ValidationError("subsystem dimensions must be positive");
}

HermitianMatrix::HermitianMatrix(ComplexMatrix entries, double tol)
    : m_(std::move(entries)) {
  require_square(m_);
  const double dev = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (dev > tol) {
    throw ValidationError("matrix is not Hermitian (max deviation " +
                          std::to_string(dev) + ")");
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix entries) : m_(std::move(entries)) {
  require_square(m_);
  const double dev = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (dev > tolerance::kHermitian) {
    throw ValidationError("density matrix is not Hermitian");
  }
  if (std::abs(m_.trace() - Complex(1.0, 0.0)) > tolerance::kTrace) {
    throw ValidationError("density matrix trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tolerance::kEigenFloor) {
    throw ValidationError("density matrix is not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::diagonal(const std::vector<double>& diag) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(diag.size()),
                                        static_cast<Eigen::Index>(diag.size()));
  for (std::size_t i = 0; i < diag.size(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = diag[i];
  }
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) throw ValidationError("zero state vector");
  const ComplexVector v = psi / norm;
  ComplexMatrix m = v * v.adjoint();
  // Exact Hermitian symmetry; the outer product can be off by one ulp.
  m = 0.5 * (m + m.adjoint()).eval();
  return DensityMatrix(std::move(m));
}

ComplexMatrix Spectrum::reconstruct() const {
  const auto n = static_cast<Eigen::Index>(probs.size());
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    out += probs[static_cast<std::size_t>(a)] * vectors.col(a) * vectors.col(a).adjoint();
  }
  return out;
}

std::vector<double> Spectrum::distribution() const {
  std::vector<double> p = probs;
  for (double& x : p) {
    if (x < 0.0) {
      if (x < -tolerance::kEigenFloor) throw ValidationError("negative probability in spectrum");
      x = 0.0;
    }
  }
  return p;
}

Spectrum eigendecompose(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.matrix());
  if (es.info() != Eigen::Success) throw ValidationError("eigensolver failed");

  const auto n = static_cast<std::size_t>(h.dim());
  const auto& vals = es.eigenvalues();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return vals(static_cast<Eigen::Index>(x)) > vals(static_cast<Eigen::Index>(y));
  });

  Spectrum s;
  s.probs.resize(n);
  s.vectors.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t a = 0; a < n; ++a) {
    const auto src = static_cast<Eigen::Index>(order[a]);
    s.probs[a] = vals(src);
    ComplexVector v = es.eigenvectors().col(src);
    // Gauge: the largest-magnitude component is real and positive.
    Eigen::Index k = 0;
    v.cwiseAbs().maxCoeff(&k);
    const Complex phase = v(k) / std::abs(v(k));
    s.vectors.col(static_cast<Eigen::Index>(a)) = v * std::conj(phase);
  }
  return s;
}

Spectrum eigendecompose(const DensityMatrix& rho) {
  return eigendecompose(HermitianMatrix(rho.matrix()));
}

double shannon_entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p) h -= xlogx(x);
  return h;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
  double h = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    h -= xlogx(std::max(0.0, es.eigenvalues()(i)));
  }
  return h;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const BipartiteDims& dims,
                            Subsystem keep) {
  if (rho.dim() != dims.total()) {
    throw ValidationError("state dimension does not match d_A*d_B");
  }
  const auto da = static_cast<Eigen::Index>(dims.d_a);
  const auto db = static_cast<Eigen::Index>(dims.d_b);
  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix out;
  if (keep == Subsystem::A) {
    out = ComplexMatrix::Zero(da, da);
    for (Eigen::Index i = 0; i < da; ++i)
      for (Eigen::Index j = 0; j < da; ++j)
        for (Eigen::Index k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
  } else {
    out = ComplexMatrix::Zero(db, db);
    for (Eigen::Index i = 0; i < db; ++i)
      for (Eigen::Index j = 0; j < db; ++j)
        for (Eigen::Index k = 0; k < da; ++k) out(i, j) += m(k * db + i, k * db + j);
  }
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix(std::move(out));
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw ValidationError("relative entropy: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sigma.matrix());
  const ComplexMatrix& v = es.eigenvectors();
  double cross = 0.0;  // Tr(rho log sigma)
  for (Eigen::Index k = 0; k < v.cols(); ++k) {
    const double weight = (v.col(k).adjoint() * rho.matrix() * v.col(k))(0, 0).real();
    const double mu = es.eigenvalues()(k);
    if (mu < tolerance::kSupport) {
      if (weight > tolerance::kSupportWeight) return std::numeric_limits<double>::infinity();
      continue;
    }
    cross += weight * std::log(mu);
  }
  return -von_neumann_entropy(rho) - cross;
}

double mutual_information(const DensityMatrix& rho, const BipartiteDims& dims) {
  const DensityMatrix a = partial_trace(rho, dims, Subsystem::A);
  const DensityMatrix b = partial_trace(rho, dims, Subsystem::B);
  return von_neumann_entropy(a) + von_neumann_entropy(b) - von_neumann_entropy(rho);
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const ComplexMatrix id = ComplexMatrix::Identity(u.rows(), u.cols());
  return (u * u.adjoint() - id).cwiseAbs().maxCoeff() <= tol;
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const ComplexMatrix& u) {
  if (u.rows() != static_cast<Eigen::Index>(rho.dim())) {
    throw ValidationError("unitary dimension does not match state");
  }
  if (!is_unitary(u)) throw ValidationError("matrix is not unitary");
  ComplexMatrix out = u * rho.matrix() * u.adjoint();
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix(std::move(out));
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  const auto da = a.matrix().rows();
  const auto db = b.matrix().rows();
  ComplexMatrix out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j)
      out.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
  return DensityMatrix(std::move(out));
}

}  // namespace qae
