#include "qae/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include <Eigen/QR>

namespace qae {

ComplexMatrix disentangling_unitary(const Spectrum& spectrum) {
  const auto n = spectrum.vectors.rows();
  if (spectrum.vectors.cols() != n || static_cast<std::size_t>(n) != spectrum.size()) {
    throw ValidationError("spectrum vectors must form a square basis");
  }
  const ComplexMatrix gram = spectrum.vectors.adjoint() * spectrum.vectors;
  if ((gram - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-9) {
    throw ValidationError("spectrum vectors are not orthonormal");
  }
  return spectrum.vectors.adjoint();
}

ComplexMatrix permutation_unitary(const YoungTableau& tableau) {
  const auto n = static_cast<Eigen::Index>(tableau.size());
  ComplexMatrix p = ComplexMatrix::Zero(n, n);
  for (std::size_t cell = 0; cell < tableau.size(); ++cell) {
    const auto basis = static_cast<Eigen::Index>(tableau.cells()[cell] - 1);
    p(static_cast<Eigen::Index>(cell), basis) = 1.0;
  }
  return p;
}

EncoderPlan build_encoder(const Spectrum& spectrum, const YoungTableau& tableau,
                          const BipartiteDims& dims) {
  if (spectrum.size() != dims.total() || !(tableau.dims() == dims)) {
    throw ValidationError("spectrum, tableau and dims disagree in size");
  }
  ComplexMatrix u = permutation_unitary(tableau) * disentangling_unitary(spectrum);
  return EncoderPlan{spectrum, tableau, dims, std::move(u)};
}

CompressionOutput compress_reconstruct(const DensityMatrix& sigma, const ComplexMatrix& unitary,
                                       const BipartiteDims& dims) {
  if (sigma.dim() != dims.total()) throw ValidationError("state does not match encoder dims");
  const DensityMatrix middle = apply_unitary(sigma, unitary);
  const DensityMatrix rho_a = partial_trace(middle, dims, Subsystem::A);
  DensityMatrix sigma_b = partial_trace(middle, dims, Subsystem::B);
  DensityMatrix out = apply_unitary(tensor_product(rho_a, sigma_b), unitary.adjoint());
  return CompressionOutput{std::move(sigma_b), std::move(out)};
}

CompressionOutput compress_reconstruct(const DensityMatrix& sigma, const EncoderPlan& plan) {
  return compress_reconstruct(sigma, plan.unitary, plan.dims);
}

CompressionReport verify_theorem1(const DensityMatrix& sigma, const ComplexMatrix& unitary,
                                  const BipartiteDims& dims) {
  const auto t0 = std::chrono::steady_clock::now();
  const CompressionOutput co = compress_reconstruct(sigma, unitary, dims);
  CompressionReport r;
  r.mi_middle = mutual_information(apply_unitary(sigma, unitary), dims);
  r.rel_entropy_out = relative_entropy(sigma, co.reconstructed);
  r.support_violation = std::isinf(r.rel_entropy_out);
  r.residual = r.support_violation ? std::numeric_limits<double>::infinity()
                                   : std::abs(r.rel_entropy_out - r.mi_middle);
  r.frobenius_distance = (sigma.matrix() - co.reconstructed.matrix()).norm();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

CompressionReport verify_theorem1(const DensityMatrix& sigma, const EncoderPlan& plan) {
  return verify_theorem1(sigma, plan.unitary, plan.dims);
}

double suboptimal_auxiliary_gap(const DensityMatrix& sigma, const EncoderPlan& plan,
                                const DensityMatrix& rho_a) {
  if (rho_a.dim() != plan.dims.d_a) throw ValidationError("auxiliary state must live on subsystem A");
  const DensityMatrix middle = apply_unitary(sigma, plan.unitary);
  const DensityMatrix sigma_b = partial_trace(middle, plan.dims, Subsystem::B);
  const DensityMatrix out = apply_unitary(tensor_product(rho_a, sigma_b), plan.unitary.adjoint());
  return relative_entropy(sigma, out) - mutual_information(middle, plan.dims);
}

std::string to_string(InstanceKind k) {
  switch (k) {
    case InstanceKind::DiagonalMixed: return "diagonal-mixed";
    case InstanceKind::ProductSpectrum: return "product-spectrum";
    case InstanceKind::RandomDense: return "random-dense";
    case InstanceKind::Pure: return "pure";
  }
  return "unknown";
}

InstanceKind instance_kind_from_string(const std::string& s) {
  if (s == "diagonal-mixed") return InstanceKind::DiagonalMixed;
  if (s == "product-spectrum") return InstanceKind::ProductSpectrum;
  if (s == "random-dense") return InstanceKind::RandomDense;
  if (s == "pure") return InstanceKind::Pure;
  throw ValidationError("unknown instance kind: " + s);
}

std::vector<double> sample_simplex(std::size_t n, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> x(n);
  double sum = 0.0;
  for (double& v : x) {
    v = expo(rng);
    sum += v;
  }
  for (double& v : x) v /= sum;
  return x;
}

ComplexMatrix haar_unitary(std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto dim = static_cast<Eigen::Index>(n);
  ComplexMatrix z(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) z(i, j) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

namespace {

std::vector<double> descending(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

DensityMatrix normalized_diagonal(std::vector<double> d) {
  double sum = 0.0;
  for (double x : d) sum += x;
  for (double& x : d) x /= sum;
  return DensityMatrix::diagonal(d);
}

}  // namespace

DensityMatrix generate_instance(InstanceKind kind, const BipartiteDims& dims, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = dims.total();
  switch (kind) {
    case InstanceKind::DiagonalMixed:
      return normalized_diagonal(descending(sample_simplex(n, rng)));
    case InstanceKind::ProductSpectrum: {
      const std::vector<double> a = sample_simplex(dims.d_a, rng);
      const std::vector<double> b = sample_simplex(dims.d_b, rng);
      std::vector<double> joint;
      joint.reserve(n);
      for (double x : a)
        for (double y : b) joint.push_back(x * y);
      return normalized_diagonal(descending(std::move(joint)));
    }
    case InstanceKind::RandomDense: {
      const std::vector<double> p = sample_simplex(n, rng);
      const ComplexMatrix u = haar_unitary(n, rng);
      ComplexMatrix diag = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      for (std::size_t k = 0; k < n; ++k) diag(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = p[k];
      ComplexMatrix m = u * diag * u.adjoint();
      m = 0.5 * (m + m.adjoint()).eval();
      m /= m.trace().real();
      return DensityMatrix(std::move(m));
    }
    case InstanceKind::Pure: {
      std::normal_distribution<double> normal(0.0, 1.0);
      ComplexVector psi(static_cast<Eigen::Index>(n));
      for (Eigen::Index k = 0; k < psi.size(); ++k) psi(k) = Complex(normal(rng), normal(rng));
      return DensityMatrix::pure(psi);
    }
  }
  throw ValidationError("unknown instance kind");
}

}  // namespace qae
