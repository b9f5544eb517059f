#include "entclass/entangle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entclass {

namespace {

constexpr Pauli kAxes[3] = {Pauli::X, Pauli::Y, Pauli::Z};

double expect(const DensityMatrix& rho, Pauli a, Pauli b, Pauli c) {
  return pauli_expectation(rho, PauliIndex{{a, b, c}});
}

}  // namespace

const char* rank_class_name(RankClass c) {
  switch (c) {
    case RankClass::GME: return "GME";
    case RankClass::BS1: return "BS1";
    case RankClass::BS2: return "BS2";
    case RankClass::BS3: return "BS3";
    case RankClass::SEP: return "SEP";
    case RankClass::UNKNOWN: return "UNKNOWN";
  }
  return "UNKNOWN";
}

CorrelationTensors correlation_tensors(const DensityMatrix& rho) {
  CorrelationTensors t;
  const Pauli I = Pauli::I;
  for (int i = 0; i < 3; ++i) {
    t.t1[i] = expect(rho, kAxes[i], I, I);
    t.t2[i] = expect(rho, I, kAxes[i], I);
    t.t3[i] = expect(rho, I, I, kAxes[i]);
    for (int j = 0; j < 3; ++j) {
      t.t12[i][j] = expect(rho, kAxes[i], kAxes[j], I);
      t.t13[i][j] = expect(rho, kAxes[i], I, kAxes[j]);
      t.t23[i][j] = expect(rho, I, kAxes[i], kAxes[j]);
      for (int k = 0; k < 3; ++k)
        t.t123[i][j][k] = expect(rho, kAxes[i], kAxes[j], kAxes[k]);
    }
  }
  return t;
}

Unfolding mode_unfolding(const Tensor3& t, int mode) {
  if (mode < 1 || mode > 3) throw std::invalid_argument("mode must be 1, 2 or 3");
  Unfolding m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const double v = t[i][j][k];
        switch (mode) {
          case 1: m[i][3 * j + k] = v; break;
          case 2: m[j][3 * i + k] = v; break;
          case 3: m[k][3 * i + j] = v; break;
        }
      }
  return m;
}

Vec3 singular_values(const Unfolding& m) {
  Unfolding a = m;
  auto dot = [&](int p, int q) {
    double s = 0.0;
    for (int c = 0; c < 9; ++c) s += a[p][c] * a[q][c];
    return s;
  };
  constexpr int kMaxSweeps = 60;
  constexpr double kOffTol = 1e-15;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        const double alpha = dot(p, p);
        const double beta = dot(q, q);
        const double gamma = dot(p, q);
        if (std::abs(gamma) <= kOffTol * std::sqrt(alpha * beta) || gamma == 0.0)
          continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (int col = 0; col < 9; ++col) {
          const double ap = a[p][col];
          const double aq = a[q][col];
          a[p][col] = c * ap - s * aq;
          a[q][col] = s * ap + c * aq;
        }
      }
    }
    if (!rotated) break;
  }
  Vec3 sv{};
  for (int r = 0; r < 3; ++r) sv[r] = std::sqrt(dot(r, r));
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

int numerical_rank(const Unfolding& m, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("rank tolerance must be > 0");
  const Vec3 sv = singular_values(m);
  return static_cast<int>(std::count_if(sv.begin(), sv.end(),
                                        [tol](double s) { return s > tol; }));
}

RankTriple correlation_ranks(const DensityMatrix& rho, double tol) {
  const auto t = correlation_tensors(rho);
  return RankTriple{numerical_rank(mode_unfolding(t.t123, 1), tol),
                    numerical_rank(mode_unfolding(t.t123, 2), tol),
                    numerical_rank(mode_unfolding(t.t123, 3), tol)};
}

RankClass classify_by_ranks(const RankTriple& r) {
  if (r == RankTriple{3, 3, 3} || r == RankTriple{2, 2, 2}) return RankClass::GME;
  if (r == RankTriple{1, 3, 3}) return RankClass::BS1;
  if (r == RankTriple{3, 1, 3}) return RankClass::BS2;
  if (r == RankTriple{3, 3, 1}) return RankClass::BS3;
  if (r == RankTriple{1, 1, 1}) return RankClass::SEP;
  return RankClass::UNKNOWN;
}

double three_tangle(const DensityMatrix& rho) {
  return 4.0 * rho(0, 0).real() * rho(7, 7).real();
}

std::optional<SloccClass> slocc_oracle(const DensityMatrix& rho, double rank_tol,
                                       double tangle_tol) {
  if (!(tangle_tol > 0.0)) throw std::invalid_argument("tangle tolerance must be > 0");
  switch (classify_by_ranks(correlation_ranks(rho, rank_tol))) {
    case RankClass::SEP: return SloccClass::SEP;
    case RankClass::BS1: return SloccClass::BS1;
    case RankClass::BS2: return SloccClass::BS2;
    case RankClass::BS3: return SloccClass::BS3;
    case RankClass::GME:
      return three_tangle(rho) > tangle_tol ? SloccClass::GHZ : SloccClass::W;
    case RankClass::UNKNOWN: break;
  }
  return std::nullopt;
}

}  // namespace entclass
