// Dense bipartite quantum states: Hermitian matrices, density matrices,
// spectra, partial traces and the entropy family built on top of them.
#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qae {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Raised whenever an input violates a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace tolerance {
inline constexpr double kHermitian = 1e-12;
inline constexpr double kTrace = 1e-10;
inline constexpr double kEigenFloor = 1e-10;
inline constexpr double kUnitary = 1e-10;
inline constexpr double kSupport = 1e-12;
inline constexpr double kSupportWeight = 1e-10;
}  // namespace tolerance

struct BipartiteDims {
  std::size_t d_a = 1;
  std::size_t d_b = 1;

  BipartiteDims() = default;
  BipartiteDims(std::size_t a, std::size_t b);

  std::size_t total() const { return d_a * d_b; }
  bool operator==(const BipartiteDims&) const = default;
};

enum class Subsystem { A, B };

/// Square complex matrix equal to its conjugate transpose.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(ComplexMatrix entries,
                           double tol = tolerance::kHermitian);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

 private:
  ComplexMatrix m_;
};

/// Hermitian, unit trace, positive semidefinite within tolerance.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix entries);

  static DensityMatrix diagonal(const std::vector<double>& diag);
  static DensityMatrix pure(const ComplexVector& psi);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  double trace() const { return m_.trace().real(); }

 private:
  ComplexMatrix m_;
};

/// Eigen decomposition with probabilities in non-increasing order.
/// vectors.col(a) is the eigenvector paired with probs[a].
struct Spectrum {
  std::vector<double> probs;
  ComplexMatrix vectors;

  std::size_t size() const { return probs.size(); }
  ComplexMatrix reconstruct() const;
  /// probs with eigensolver noise in [-1e-10, 0) clamped to zero.
  std::vector<double> distribution() const;
};

Spectrum eigendecompose(const HermitianMatrix& h);
Spectrum eigendecompose(const DensityMatrix& rho);

/// Natural-log entropies; 0 log 0 = 0.
double shannon_entropy(const std::vector<double>& p);
double von_neumann_entropy(const DensityMatrix& rho);

DensityMatrix partial_trace(const DensityMatrix& rho, const BipartiteDims& dims,
                            Subsystem keep);

/// Tr(rho log rho) - Tr(rho log sigma). Returns +infinity when the support of
/// rho is not contained in the support of sigma.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

double mutual_information(const DensityMatrix& rho, const BipartiteDims& dims);

bool is_unitary(const ComplexMatrix& u, double tol = tolerance::kUnitary);
DensityMatrix apply_unitary(const DensityMatrix& rho, const ComplexMatrix& u);

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

/// Converts a value in nats to the requested unit.
inline double to_bits(double nats) { return nats / 0.69314718055994530942; }

}  // namespace qae
