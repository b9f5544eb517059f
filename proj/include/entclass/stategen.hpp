// Labeled three-qubit states drawn from the six SLOCC classes of the
// canonical form
//
//   |psi> = l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>,
//
// plus the noise channel that turns clean states into a synthetic
// "experimental" evaluation set.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "entclass/qcore.hpp"
#include "entclass/rng.hpp"

namespace entclass {

enum class SloccClass : int { SEP = 0, BS1 = 1, BS2 = 2, BS3 = 3, W = 4, GHZ = 5 };

inline constexpr int kNumClasses = 6;
inline constexpr std::array<SloccClass, kNumClasses> kAllClasses{
    SloccClass::SEP, SloccClass::BS1, SloccClass::BS2,
    SloccClass::BS3, SloccClass::W,   SloccClass::GHZ};

std::string_view class_name(SloccClass c);
std::optional<SloccClass> class_from_name(std::string_view name);
inline int class_code(SloccClass c) { return static_cast<int>(c); }
SloccClass class_from_code(int code);
inline bool is_gme(SloccClass c) {
  return c == SloccClass::W || c == SloccClass::GHZ;
}

/// Five non-negative amplitudes and the relative phase of |100>.
class CanonicalCoefficients {
 public:
  /// Throws InvariantError unless sum l_i^2 = 1 (1e-12), l_i >= 0 and
  /// 0 <= phi <= pi.
  CanonicalCoefficients(const std::array<double, 5>& lambdas, double phi,
                        SloccClass cls);

  const std::array<double, 5>& lambdas() const { return lambdas_; }
  double lambda(int i) const { return lambdas_[i]; }
  double phi() const { return phi_; }
  SloccClass slocc_class() const { return class_; }

 private:
  std::array<double, 5> lambdas_;
  double phi_;
  SloccClass class_;
};

PureState ket_from_canonical(const CanonicalCoefficients& c);

/// Coefficients required nonzero are at least this after normalization.
inline constexpr double kMinNonzeroCoefficient = 1e-3;
/// GHZ draws keep 4 l0^2 l4^2 above this so a 1e-6 tangle threshold
/// separates them from the W class.
inline constexpr double kMinGhzTangle = 1e-5;
/// A-BC draws keep |l1 l4 e^{i phi} - l2 l3| above this (concurrence / 2).
inline constexpr double kMinBipartiteDeterminant = 1e-3;

CanonicalCoefficients sample_class_coefficients(SloccClass cls, Rng& rng);

/// The three label encodings of a class.
struct LabelVector {
  std::array<int, kNumClasses> one_hot{};
  int gme_flag = 0;
  int integer_code = 0;

  friend bool operator==(const LabelVector&, const LabelVector&) = default;
};

LabelVector encode_labels(SloccClass cls);

/// Row-major real and imaginary parts of rho followed by the labels.
struct DatasetRow {
  std::array<double, 64> v_re{};
  std::array<double, 64> v_im{};
  LabelVector label;

  SloccClass slocc_class() const { return class_from_code(label.integer_code); }
  friend bool operator==(const DatasetRow&, const DatasetRow&) = default;
};

DatasetRow make_row(const DensityMatrix& rho, SloccClass cls);
/// Rebuilds the density matrix stored in a row (validated).
DensityMatrix row_density(const DatasetRow& row);

/// Clean sampled state of class `cls`, reproducible from (master_seed,
/// class, index).
DensityMatrix sample_clean_state(std::uint64_t master_seed, SloccClass cls,
                                 std::uint64_t index);

/// per_class states of every class, ordered by (class, index).
std::vector<DatasetRow> build_training_dataset(int per_class,
                                               std::uint64_t master_seed);

// --- Noise channel ----------------------------------------------------------

inline constexpr double kEvalFidelityLo = 0.87;
inline constexpr double kEvalFidelityHi = 0.98;
inline constexpr double kNoiseFidelityTol = 0.005;

/// Raised when bisection cannot hit the requested fidelity.
class CalibrationError : public std::runtime_error {
 public:
  CalibrationError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

/// Random Hermitian matrix with spectral norm 1.
Matrix8c random_unit_hermitian(Rng& rng);

/// (1 - s/2) U rho U^dagger + (s/2) I/8 with U = exp(-i s G).
Matrix8c noise_channel(const Matrix8c& clean, const Matrix8c& generator,
                       double strength);

struct NoisyState {
  DensityMatrix rho;
  double fidelity;
  double strength;
};

/// Calibrates the channel strength so fidelity(noisy, clean) is within
/// kNoiseFidelityTol of f_target.
NoisyState apply_noise(const DensityMatrix& clean, double f_target, Rng& rng);

struct EvalState {
  std::string state_id;
  DensityMatrix clean;
  DensityMatrix noisy;
  SloccClass slocc_class;
  double fidelity;
};

/// per_class noisy states of every class with fidelities drawn uniformly
/// from [0.87, 0.98].
std::vector<EvalState> build_eval_set(int per_class, std::uint64_t master_seed);

}  // namespace entclass
