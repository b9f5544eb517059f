// Three-qubit linear algebra: kets, density matrices, Pauli observables and
// the normalized-overlap fidelity.
//
// Basis ordering: |q1 q2 q3> lives at index 4*q1 + 2*q2 + q3, so qubit 1 is
// the most significant bit.
#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace entclass {

using Complex = std::complex<double>;
using Matrix8c = Eigen::Matrix<Complex, 8, 8>;

inline constexpr int kDim = 8;

/// Raised when a numeric invariant of a quantum object is violated.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unit-norm three-qubit ket.
class PureState {
 public:
  /// Throws InvariantError unless the squared norm is 1 within 1e-12.
  explicit PureState(const std::array<Complex, kDim>& amplitudes);

  const std::array<Complex, kDim>& amplitudes() const { return amplitudes_; }
  Complex operator[](int index) const { return amplitudes_[index]; }

 private:
  std::array<Complex, kDim> amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite 8x8 matrix.
class DensityMatrix {
 public:
  /// Validates Hermiticity (1e-12), trace (1e-12) and PSD (min eigenvalue
  /// >= -1e-10). Throws InvariantError naming the failed check.
  explicit DensityMatrix(const Matrix8c& entries);

  const Matrix8c& entries() const { return entries_; }
  Complex operator()(int row, int col) const { return entries_(row, col); }

  static DensityMatrix maximally_mixed();

 private:
  Matrix8c entries_;
};

enum class Pauli : int { I = 0, X = 1, Y = 2, Z = 3 };

/// One Pauli axis per qubit, qubit 1 first.
struct PauliIndex {
  std::array<Pauli, 3> axes{Pauli::I, Pauli::I, Pauli::I};

  friend bool operator==(const PauliIndex&, const PauliIndex&) = default;
};

/// Why a matrix failed validation; empty when valid.
std::string check_density_invariants(const Matrix8c& m);

/// Smallest eigenvalue of a Hermitian 8x8 matrix.
double min_eigenvalue(const Matrix8c& hermitian);

DensityMatrix density_from_ket(const PureState& psi);

/// tr(rho * sigma_a (x) sigma_b (x) sigma_c). Throws InvariantError if the
/// imaginary residue reaches 1e-8 (non-Hermitian input).
double pauli_expectation(const DensityMatrix& rho, const PauliIndex& p);
double pauli_expectation(const Matrix8c& rho, const PauliIndex& p);

/// |Tr(A B^dagger)| / sqrt(Tr(A^dagger A) Tr(B^dagger B)).
double fidelity(const DensityMatrix& expt, const DensityMatrix& theo);
double fidelity(const Matrix8c& expt, const Matrix8c& theo);

}  // namespace entclass
