#include "entclass/qcore.hpp"

#include <cmath>
#include <sstream>

namespace entclass {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = -1e-10;
constexpr double kImagDiscard = 1e-8;

}  // namespace

PureState::PureState(const std::array<Complex, kDim>& amplitudes)
    : amplitudes_(amplitudes) {
  double norm2 = 0.0;
  for (const auto& a : amplitudes_) norm2 += std::norm(a);
  if (std::abs(norm2 - 1.0) > kNormTol) {
    std::ostringstream msg;
    msg << "PureState: squared norm " << norm2 << " differs from 1";
    throw InvariantError(msg.str());
  }
}

double min_eigenvalue(const Matrix8c& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix8c> solver(hermitian,
                                                 Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

std::string check_density_invariants(const Matrix8c& m) {
  for (int r = 0; r < kDim; ++r) {
    for (int c = r; c < kDim; ++c) {
      if (std::abs(m(r, c) - std::conj(m(c, r))) > kHermitianTol) {
        std::ostringstream msg;
        msg << "not Hermitian at (" << r << "," << c << ")";
        return msg.str();
      }
    }
  }
  const Complex tr = m.trace();
  if (std::abs(tr.real() - 1.0) > kTraceTol || std::abs(tr.imag()) > kTraceTol) {
    std::ostringstream msg;
    msg << "trace " << tr.real() << " differs from 1";
    return msg.str();
  }
  const double lo = min_eigenvalue(m);
  if (lo < kPsdTol) {
    std::ostringstream msg;
    msg << "not positive semidefinite (min eigenvalue " << lo << ")";
    return msg.str();
  }
  return {};
}

DensityMatrix::DensityMatrix(const Matrix8c& entries) : entries_(entries) {
  if (auto why = check_density_invariants(entries_); !why.empty()) {
    throw InvariantError("DensityMatrix: " + why);
  }
}

DensityMatrix DensityMatrix::maximally_mixed() {
  return DensityMatrix(Matrix8c::Identity() / 8.0);
}

DensityMatrix density_from_ket(const PureState& psi) {
  Matrix8c m;
  for (int r = 0; r < kDim; ++r)
    for (int c = 0; c < kDim; ++c) m(r, c) = psi[r] * std::conj(psi[c]);
  // Outer products are Hermitian up to rounding in the product; symmetrize
  // so downstream checks see exact conjugate pairs.
  Matrix8c h = (m + m.adjoint()) * 0.5;
  return DensityMatrix(h);
}

double pauli_expectation(const Matrix8c& rho, const PauliIndex& p) {
  // P|b> = phase(b) |b ^ flip>, so tr(rho P) = sum_b rho(b, b^flip) phase(b).
  int flip = 0;
  for (int q = 0; q < 3; ++q) {
    const Pauli a = p.axes[q];
    if (a == Pauli::X || a == Pauli::Y) flip |= 1 << (2 - q);
  }
  Complex sum = 0.0;
  for (int b = 0; b < kDim; ++b) {
    Complex phase = 1.0;
    for (int q = 0; q < 3; ++q) {
      const int bit = (b >> (2 - q)) & 1;
      switch (p.axes[q]) {
        case Pauli::I:
        case Pauli::X:
          break;
        case Pauli::Y:
          phase *= bit == 0 ? Complex(0.0, 1.0) : Complex(0.0, -1.0);
          break;
        case Pauli::Z:
          if (bit == 1) phase = -phase;
          break;
      }
    }
    sum += rho(b, b ^ flip) * phase;
  }
  if (std::abs(sum.imag()) >= kImagDiscard) {
    std::ostringstream msg;
    msg << "pauli_expectation: imaginary residue " << sum.imag()
        << " indicates a non-Hermitian input";
    throw InvariantError(msg.str());
  }
  return sum.real();
}

double pauli_expectation(const DensityMatrix& rho, const PauliIndex& p) {
  return pauli_expectation(rho.entries(), p);
}

double fidelity(const Matrix8c& expt, const Matrix8c& theo) {
  const double overlap = std::abs((expt * theo.adjoint()).trace());
  const double ee = (expt.adjoint() * expt).trace().real();
  const double tt = (theo.adjoint() * theo).trace().real();
  const double denom = std::sqrt(ee * tt);
  if (!(denom > 0.0)) {
    throw InvariantError("fidelity: zero matrix has no normalized overlap");
  }
  return overlap / denom;
}

double fidelity(const DensityMatrix& expt, const DensityMatrix& theo) {
  return fidelity(expt.entries(), theo.entries());
}

}  // namespace entclass
