// Reference entanglement classification: Pauli correlation tensors, the ranks
// of the three mode unfoldings of the three-body tensor, and the canonical
// form 3-tangle.
#pragma once

#include <array>
#include <optional>

#include "entclass/qcore.hpp"
#include "entclass/stategen.hpp"

namespace entclass {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;
using Tensor3 = std::array<std::array<std::array<double, 3>, 3>, 3>;
using Unfolding = std::array<std::array<double, 9>, 3>;

/// Expectation values of sigma_i (x) sigma_j (x) sigma_k with i, j, k in
/// {x, y, z} (index 0, 1, 2) and identities on the omitted qubits.
struct CorrelationTensors {
  Vec3 t1{}, t2{}, t3{};
  Mat3 t12{}, t13{}, t23{};
  Tensor3 t123{};
};

struct RankTriple {
  int r1 = 0, r2 = 0, r3 = 0;
  friend bool operator==(const RankTriple&, const RankTriple&) = default;
};

enum class RankClass { GME, BS1, BS2, BS3, SEP, UNKNOWN };

const char* rank_class_name(RankClass c);

inline constexpr double kRankTolClean = 1e-10;
inline constexpr double kRankTolNoisy = 0.25;
inline constexpr double kTangleTolClean = 1e-6;
inline constexpr double kTangleTolNoisy = 0.05;

CorrelationTensors correlation_tensors(const DensityMatrix& rho);

/// Mode-m unfolding: the m-th tensor index selects the row and the other two,
/// in ascending qubit order, form column 3*a + b.
Unfolding mode_unfolding(const Tensor3& t, int mode);

/// Singular values of a 3x9 matrix, descending.
///
/// One-sided Jacobi: rotate row pairs until mutually orthogonal; the row
/// norms are then the singular values. Equivalent to diagonalizing M M^T by
/// Jacobi rotations, but keeps small singular values accurate to ~1e-16
/// instead of ~1e-8 (the square root of eigenvalue rounding).
Vec3 singular_values(const Unfolding& m);

/// Number of singular values strictly above the absolute threshold `tol`.
int numerical_rank(const Unfolding& m, double tol);

RankTriple correlation_ranks(const DensityMatrix& rho, double tol);

RankClass classify_by_ranks(const RankTriple& r);

/// 4 <000|rho|000> <111|rho|111>.
double three_tangle(const DensityMatrix& rho);

/// Ranks decide GME / biseparable / separable; the tangle splits GME into
/// GHZ (tangle > tangle_tol) and W. nullopt when the ranks match no class.
std::optional<SloccClass> slocc_oracle(const DensityMatrix& rho, double rank_tol,
                                       double tangle_tol);

}  // namespace entclass
