#include "entclass/stategen.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace entclass {

namespace {

constexpr std::array<std::string_view, kNumClasses> kClassNames{
    "SEP", "BS1", "BS2", "BS3", "W", "GHZ"};

// Domain tags keep the training and evaluation seed streams apart even when
// the same master seed is used for both.
constexpr std::uint64_t kTrainStream = 0x7472616eULL;
constexpr std::uint64_t kEvalStream = 0x6576616cULL;

struct Draw {
  std::array<double, 5> lambdas{};
  std::array<bool, 5> nonzero{};
  double phi = 0.0;
};

void set(Draw& d, int i, double value) {
  d.lambdas[i] = value;
  d.nonzero[i] = true;
}

double draw_phase(Rng& rng) { return rng.uniform(0.0, std::numbers::pi); }

// One unnormalized draw from a Table-style branch of the class.
Draw draw_branch(SloccClass cls, Rng& rng) {
  Draw d;
  switch (cls) {
    case SloccClass::GHZ:
      for (int i = 0; i < 5; ++i) set(d, i, rng.uniform_open_closed());
      d.phi = draw_phase(rng);
      break;
    case SloccClass::W:
      // l0 != 0, l4 = 0, l2 l3 != 0.
      set(d, 0, rng.uniform_open_closed());
      set(d, 1, rng.uniform_open_closed());
      set(d, 2, rng.uniform_open_closed());
      set(d, 3, rng.uniform_open_closed());
      d.phi = draw_phase(rng);
      break;
    case SloccClass::BS3:
      // C-AB: l0 != 0, l4 = 0, l2 = 0, l3 != 0.
      set(d, 0, rng.uniform_open_closed());
      set(d, 1, rng.uniform_open_closed());
      set(d, 3, rng.uniform_open_closed());
      d.phi = draw_phase(rng);
      break;
    case SloccClass::BS2:
      // B-AC: l0 != 0, l4 = 0, l2 != 0, l3 = 0.
      set(d, 0, rng.uniform_open_closed());
      set(d, 1, rng.uniform_open_closed());
      set(d, 2, rng.uniform_open_closed());
      d.phi = draw_phase(rng);
      break;
    case SloccClass::BS1:
      if (rng.below(2) == 0) {
        // l0 = 0, l4 != 0, l2 l3 != l1 l4 e^{i phi}.
        for (int i = 1; i < 5; ++i) set(d, i, rng.uniform_open_closed());
        d.phi = draw_phase(rng);
      } else {
        // l0 = l4 = 0, l2 l3 != 0.
        for (int i = 1; i < 4; ++i) set(d, i, rng.uniform_open_closed());
        d.phi = draw_phase(rng);
      }
      break;
    case SloccClass::SEP:
      switch (rng.below(3)) {
        case 0: {
          // l0 = 0, l4 != 0, l2 l3 = l1 l4 e^{i phi}; positive amplitudes
          // force phi = 0.
          const double l1 = rng.uniform_open_closed();
          const double l2 = rng.uniform_open_closed();
          const double l4 = rng.uniform_open_closed();
          set(d, 1, l1);
          set(d, 2, l2);
          set(d, 3, l1 * l4 / l2);
          set(d, 4, l4);
          break;
        }
        case 1:
          // l0 != 0, l4 = 0, l2 = l3 = 0.
          set(d, 0, rng.uniform_open_closed());
          set(d, 1, rng.uniform_open_closed());
          d.phi = draw_phase(rng);
          break;
        default:
          // l0 = l4 = 0, l2 l3 = 0.
          set(d, 1, rng.uniform_open_closed());
          set(d, rng.below(2) == 0 ? 2 : 3, rng.uniform_open_closed());
          d.phi = draw_phase(rng);
          break;
      }
      break;
  }
  return d;
}

bool acceptable(SloccClass cls, const Draw& d) {
  for (int i = 0; i < 5; ++i) {
    if (d.nonzero[i] && d.lambdas[i] < kMinNonzeroCoefficient) return false;
  }
  const auto& l = d.lambdas;
  if (cls == SloccClass::GHZ) {
    if (4.0 * l[0] * l[0] * l[4] * l[4] < kMinGhzTangle) return false;
  }
  if (cls == SloccClass::BS1) {
    const Complex det = l[1] * l[4] * std::polar(1.0, d.phi) - l[2] * l[3];
    if (std::abs(det) < kMinBipartiteDeterminant) return false;
  }
  return true;
}

}  // namespace

std::string_view class_name(SloccClass c) {
  return kClassNames[static_cast<int>(c)];
}

std::optional<SloccClass> class_from_name(std::string_view name) {
  for (int i = 0; i < kNumClasses; ++i) {
    if (kClassNames[i] == name) return static_cast<SloccClass>(i);
  }
  return std::nullopt;
}

SloccClass class_from_code(int code) {
  if (code < 0 || code >= kNumClasses) {
    throw std::out_of_range("SLOCC class code " + std::to_string(code) +
                            " outside 0..5");
  }
  return static_cast<SloccClass>(code);
}

CanonicalCoefficients::CanonicalCoefficients(const std::array<double, 5>& lambdas,
                                             double phi, SloccClass cls)
    : lambdas_(lambdas), phi_(phi), class_(cls) {
  double norm2 = 0.0;
  for (double l : lambdas_) {
    if (!(l >= 0.0)) throw InvariantError("CanonicalCoefficients: negative lambda");
    norm2 += l * l;
  }
  if (std::abs(norm2 - 1.0) > 1e-12) {
    throw InvariantError("CanonicalCoefficients: lambdas not normalized");
  }
  if (!(phi_ >= 0.0 && phi_ <= std::numbers::pi)) {
    throw InvariantError("CanonicalCoefficients: phi outside [0, pi]");
  }
}

PureState ket_from_canonical(const CanonicalCoefficients& c) {
  std::array<Complex, kDim> amp{};
  amp[0] = c.lambda(0);
  amp[4] = c.lambda(1) * std::polar(1.0, c.phi());
  amp[5] = c.lambda(2);
  amp[6] = c.lambda(3);
  amp[7] = c.lambda(4);
  return PureState(amp);
}

CanonicalCoefficients sample_class_coefficients(SloccClass cls, Rng& rng) {
  for (;;) {
    Draw d = draw_branch(cls, rng);
    double norm2 = 0.0;
    for (double l : d.lambdas) norm2 += l * l;
    const double norm = std::sqrt(norm2);
    for (double& l : d.lambdas) l /= norm;
    if (acceptable(cls, d)) return CanonicalCoefficients(d.lambdas, d.phi, cls);
  }
}

LabelVector encode_labels(SloccClass cls) {
  LabelVector label;
  label.integer_code = class_code(cls);
  label.one_hot[label.integer_code] = 1;
  label.gme_flag = is_gme(cls) ? 1 : 0;
  return label;
}

DatasetRow make_row(const DensityMatrix& rho, SloccClass cls) {
  DatasetRow row;
  for (int r = 0; r < kDim; ++r) {
    for (int c = 0; c < kDim; ++c) {
      row.v_re[8 * r + c] = rho(r, c).real();
      row.v_im[8 * r + c] = rho(r, c).imag();
    }
  }
  row.label = encode_labels(cls);
  return row;
}

DensityMatrix row_density(const DatasetRow& row) {
  Matrix8c m;
  for (int r = 0; r < kDim; ++r)
    for (int c = 0; c < kDim; ++c)
      m(r, c) = Complex(row.v_re[8 * r + c], row.v_im[8 * r + c]);
  return DensityMatrix(m);
}

DensityMatrix sample_clean_state(std::uint64_t master_seed, SloccClass cls,
                                 std::uint64_t index) {
  Rng rng(derive_seed({kTrainStream, master_seed,
                       static_cast<std::uint64_t>(class_code(cls)), index}));
  return density_from_ket(ket_from_canonical(sample_class_coefficients(cls, rng)));
}

std::vector<DatasetRow> build_training_dataset(int per_class,
                                               std::uint64_t master_seed) {
  if (per_class < 1) throw std::invalid_argument("per_class must be >= 1");
  std::vector<DatasetRow> rows;
  rows.reserve(static_cast<std::size_t>(per_class) * kNumClasses);
  for (SloccClass cls : kAllClasses) {
    for (int i = 0; i < per_class; ++i) {
      rows.push_back(make_row(sample_clean_state(master_seed, cls, i), cls));
    }
  }
  return rows;
}

// --- Noise channel ----------------------------------------------------------

Matrix8c random_unit_hermitian(Rng& rng) {
  Matrix8c a;
  for (int r = 0; r < kDim; ++r)
    for (int c = 0; c < kDim; ++c) {
      const double re = rng.normal();
      const double im = rng.normal();
      a(r, c) = Complex(re, im);
    }
  Matrix8c g = (a + a.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Matrix8c> solver(g, Eigen::EigenvaluesOnly);
  const double spectral = solver.eigenvalues().cwiseAbs().maxCoeff();
  return g / spectral;
}

Matrix8c noise_channel(const Matrix8c& clean, const Matrix8c& generator,
                       double strength) {
  Eigen::SelfAdjointEigenSolver<Matrix8c> solver(generator);
  const auto& vecs = solver.eigenvectors();
  Eigen::Matrix<Complex, 8, 1> phases;
  for (int i = 0; i < kDim; ++i)
    phases(i) = std::polar(1.0, -strength * solver.eigenvalues()(i));
  const Matrix8c u = vecs * phases.asDiagonal() * vecs.adjoint();
  const double p = strength / 2.0;
  Matrix8c out = (1.0 - p) * (u * clean * u.adjoint()) +
                 (p / 8.0) * Matrix8c::Identity();
  return (out + out.adjoint()) * 0.5;
}

NoisyState apply_noise(const DensityMatrix& clean, double f_target, Rng& rng) {
  constexpr double kMaxStrength = 2.0;  // keeps p = s/2 <= 1
  constexpr double kGridStep = 0.02;
  constexpr int kBisections = 60;

  const Matrix8c g = random_unit_hermitian(rng);
  auto fid = [&](double s) {
    return fidelity(noise_channel(clean.entries(), g, s), clean.entries());
  };

  // Bracket the first crossing on a coarse grid, then bisect inside it.
  double lo = 0.0;
  double hi = -1.0;
  for (double s = kGridStep; s <= kMaxStrength + 1e-12; s += kGridStep) {
    if (fid(s) < f_target) {
      hi = s;
      break;
    }
    lo = s;
  }
  if (hi < 0.0) {
    const double achieved = fid(kMaxStrength);
    std::ostringstream msg;
    msg << "apply_noise: fidelity " << f_target << " unreachable (lowest "
        << achieved << ")";
    throw CalibrationError(msg.str(), achieved);
  }
  for (int it = 0; it < kBisections; ++it) {
    const double mid = 0.5 * (lo + hi);
    (fid(mid) >= f_target ? lo : hi) = mid;
  }
  // lo always satisfies fid(lo) >= f_target, so the achieved value never
  // undershoots the requested range.
  const double s = lo;
  DensityMatrix noisy(noise_channel(clean.entries(), g, s));
  const double achieved = fidelity(noisy, clean);
  if (std::abs(achieved - f_target) > kNoiseFidelityTol) {
    std::ostringstream msg;
    msg << "apply_noise: bisection ended at fidelity " << achieved
        << " for target " << f_target;
    throw CalibrationError(msg.str(), achieved);
  }
  return {std::move(noisy), achieved, s};
}

std::vector<EvalState> build_eval_set(int per_class, std::uint64_t master_seed) {
  if (per_class < 2) throw std::invalid_argument("eval per_class must be >= 2");
  std::vector<EvalState> states;
  states.reserve(static_cast<std::size_t>(per_class) * kNumClasses);
  for (SloccClass cls : kAllClasses) {
    for (int i = 0; i < per_class; ++i) {
      Rng rng(derive_seed({kEvalStream, master_seed,
                           static_cast<std::uint64_t>(class_code(cls)),
                           static_cast<std::uint64_t>(i)}));
      const auto coeffs = sample_class_coefficients(cls, rng);
      DensityMatrix clean = density_from_ket(ket_from_canonical(coeffs));
      const double target = rng.uniform(kEvalFidelityLo, kEvalFidelityHi);
      NoisyState noisy = apply_noise(clean, target, rng);
      std::string id = std::string(class_name(cls)) + "_" + std::to_string(i + 1);
      states.push_back(EvalState{std::move(id), std::move(clean),
                                 std::move(noisy.rho), cls, noisy.fidelity});
    }
  }
  return states;
}

}  // namespace entclass
