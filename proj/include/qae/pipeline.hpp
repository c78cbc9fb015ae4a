// End-to-end compression: encoder assembly, compression/reconstruction with
// the optimal auxiliary state, and numerical checks of the lost-information
// identity.
#pragma once

#include <cstdint>
#include <string>

#include "qae/qstate.hpp"
#include "qae/rng.hpp"
#include "qae/tableau.hpp"

namespace qae {

/// U = V_tau * V_D. V_D sends eigenvector a to computational basis state a
/// (row-major a -> (i, m)); V_tau sends basis state a to the cell of the
/// tableau holding value a + 1.
struct EncoderPlan {
  Spectrum spectrum;
  YoungTableau tableau;
  BipartiteDims dims;
  ComplexMatrix unitary;
};

EncoderPlan build_encoder(const Spectrum& spectrum, const YoungTableau& tableau,
                          const BipartiteDims& dims);

ComplexMatrix disentangling_unitary(const Spectrum& spectrum);
ComplexMatrix permutation_unitary(const YoungTableau& tableau);

struct CompressionOutput {
  DensityMatrix compressed_b;      // Tr_A(U sigma U^dagger)
  DensityMatrix reconstructed;     // U^dagger (rho_A (x) sigma^U_B) U
};

/// Reconstructs with the auxiliary state rho_A = Tr_B(U sigma U^dagger).
CompressionOutput compress_reconstruct(const DensityMatrix& sigma, const ComplexMatrix& unitary,
                                       const BipartiteDims& dims);
CompressionOutput compress_reconstruct(const DensityMatrix& sigma, const EncoderPlan& plan);

struct CompressionReport {
  double mi_middle = 0.0;        // S^U(A:B)
  double rel_entropy_out = 0.0;  // S(sigma || sigma_out); may be +infinity
  double residual = 0.0;
  double frobenius_distance = 0.0;
  bool support_violation = false;
  double seconds = 0.0;
};

CompressionReport verify_theorem1(const DensityMatrix& sigma, const ComplexMatrix& unitary,
                                  const BipartiteDims& dims);
CompressionReport verify_theorem1(const DensityMatrix& sigma, const EncoderPlan& plan);

/// S(sigma || U^dagger (rho_A (x) sigma^U_B) U) - S^U(A:B). Nonnegative, and
/// zero exactly when rho_A equals Tr_B(U sigma U^dagger).
double suboptimal_auxiliary_gap(const DensityMatrix& sigma, const EncoderPlan& plan,
                                const DensityMatrix& rho_a);

enum class InstanceKind { DiagonalMixed, ProductSpectrum, RandomDense, Pure };

std::string to_string(InstanceKind k);
InstanceKind instance_kind_from_string(const std::string& s);

/// Flat-simplex (Dirichlet(1)) sample of length n.
std::vector<double> sample_simplex(std::size_t n, Rng& rng);
ComplexMatrix haar_unitary(std::size_t n, Rng& rng);

DensityMatrix generate_instance(InstanceKind kind, const BipartiteDims& dims, std::uint64_t seed);

}  // namespace qae
