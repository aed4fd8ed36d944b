#include "eprqkd/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace eprqkd {

namespace {

constexpr int kMaxQubits = 4;
constexpr double kRoot2Inv = 0.70710678118653752440084436210485;

// Row-major canonical Bell amplitude vectors, BellKind enum order.
constexpr std::array<std::array<double, 4>, 4> kBellVectors = {{
    {0.0, kRoot2Inv, -kRoot2Inv, 0.0},  // PsiMinus
    {0.0, kRoot2Inv, kRoot2Inv, 0.0},   // PsiPlus
    {kRoot2Inv, 0.0, 0.0, -kRoot2Inv},  // PhiMinus
    {kRoot2Inv, 0.0, 0.0, kRoot2Inv},   // PhiPlus
}};

void check_qubit_index(const PureState& state, int qubit, const char* what) {
  if (qubit < 1 || qubit > state.num_qubits()) {
    throw std::out_of_range(std::string(what) + ": qubit index " +
                            std::to_string(qubit) + " out of range 1..=" +
                            std::to_string(state.num_qubits()));
  }
}

// Bit mask selecting the addressed qubit within a basis index.
std::size_t qubit_mask(int num_qubits, int qubit) {
  return std::size_t{1} << (num_qubits - qubit);
}

double norm_squared(const Amplitudes& amps) {
  double s = 0.0;
  for (const Complex& a : amps) s += std::norm(a);
  return s;
}

// Projects the (qubit_a, qubit_b) pair onto the Bell vector of `kind`.
// On return rest_out (if non-null) holds the unnormalized amplitudes over the
// remaining qubits, ascending position order; the return value is the Born
// probability of the outcome.
double bell_project(const PureState& state, int qubit_a, int qubit_b,
                    BellKind kind, Amplitudes* rest_out) {
  const int n = state.num_qubits();
  const std::size_t mask_a = qubit_mask(n, qubit_a);
  const std::size_t mask_b = qubit_mask(n, qubit_b);
  const auto& bell = kBellVectors[static_cast<int>(kind)];

  // Positions of the untouched qubits, ascending.
  std::vector<std::size_t> rest_masks;
  for (int q = 1; q <= n; ++q) {
    if (q != qubit_a && q != qubit_b) rest_masks.push_back(qubit_mask(n, q));
  }
  const std::size_t rest_dim = std::size_t{1} << rest_masks.size();

  Amplitudes rest(rest_dim, Complex{0.0, 0.0});
  for (std::size_t r = 0; r < rest_dim; ++r) {
    std::size_t base = 0;
    for (std::size_t k = 0; k < rest_masks.size(); ++k) {
      if ((r >> (rest_masks.size() - 1 - k)) & 1) base |= rest_masks[k];
    }
    Complex acc{0.0, 0.0};
    for (std::size_t pair_idx = 0; pair_idx < 4; ++pair_idx) {
      const double coeff = bell[pair_idx];
      if (coeff == 0.0) continue;
      std::size_t full = base;
      if (pair_idx & 2) full |= mask_a;
      if (pair_idx & 1) full |= mask_b;
      acc += coeff * state.amplitude(full);
    }
    rest[r] = acc;
  }

  if (rest_out != nullptr) *rest_out = rest;
  return norm_squared(rest);
}

}  // namespace

std::string_view to_string(BellKind kind) {
  switch (kind) {
    case BellKind::PsiMinus: return "psi_minus";
    case BellKind::PsiPlus: return "psi_plus";
    case BellKind::PhiMinus: return "phi_minus";
    case BellKind::PhiPlus: return "phi_plus";
  }
  return "?";
}

std::optional<BellKind> bell_kind_from_name(std::string_view name) {
  for (BellKind k : kAllBellKinds) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::string_view to_string(PauliCode op) {
  switch (op) {
    case PauliCode::Id: return "I";
    case PauliCode::X: return "X";
    case PauliCode::IY: return "iY";
  }
  return "?";
}

PureState::PureState(int num_qubits, Amplitudes amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  if (num_qubits_ < 1 || num_qubits_ > kMaxQubits) {
    throw std::invalid_argument("PureState: num_qubits must be in 1..=4");
  }
  if (amplitudes_.size() != (std::size_t{1} << num_qubits_)) {
    throw std::invalid_argument(
        "PureState: amplitude count must be 2^num_qubits");
  }
  if (std::abs(norm_squared(amplitudes_) - 1.0) > 1e-9) {
    throw std::invalid_argument("PureState: amplitudes are not unit-norm");
  }
}

PureState PureState::computational(int num_qubits, std::size_t basis_index) {
  Amplitudes amps(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
  amps.at(basis_index) = Complex{1.0, 0.0};
  return PureState(num_qubits, std::move(amps));
}

PureState PureState::qubit(Complex c, Complex d) {
  return PureState(1, Amplitudes{c, d});
}

double PureState::norm() const { return std::sqrt(norm_squared(amplitudes_)); }

DensityMatrix::DensityMatrix(int num_qubits, std::vector<Complex> entries)
    : num_qubits_(num_qubits),
      dim_(std::size_t{1} << num_qubits),
      entries_(std::move(entries)) {
  if (num_qubits_ < 1 || num_qubits_ > kMaxQubits) {
    throw std::invalid_argument("DensityMatrix: num_qubits must be in 1..=4");
  }
  if (entries_.size() != dim_ * dim_) {
    throw std::invalid_argument("DensityMatrix: wrong entry count");
  }
}

Complex DensityMatrix::trace() const {
  Complex t{0.0, 0.0};
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double DensityMatrix::hermiticity_defect() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      worst = std::max(worst, std::abs((*this)(r, c) -
                                       std::conj((*this)(c, r))));
    }
  }
  return worst;
}

PureState bell_state(BellKind kind) {
  const auto& v = kBellVectors[static_cast<int>(kind)];
  Amplitudes amps(4);
  for (int i = 0; i < 4; ++i) amps[i] = Complex{v[i], 0.0};
  return PureState(2, std::move(amps));
}

PureState tensor(const PureState& a, const PureState& b) {
  const int n = a.num_qubits() + b.num_qubits();
  if (n > kMaxQubits) {
    throw std::invalid_argument("tensor: combined register exceeds 4 qubits");
  }
  Amplitudes amps(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < b.dim(); ++j) {
      amps[i * b.dim() + j] = a.amplitude(i) * b.amplitude(j);
    }
  }
  return PureState(n, std::move(amps));
}

PureState apply_1q(const PureState& state, int qubit, PauliCode op) {
  check_qubit_index(state, qubit, "apply_1q");
  if (op == PauliCode::Id) return state;

  const std::size_t mask = qubit_mask(state.num_qubits(), qubit);
  Amplitudes amps(state.dim());
  // X: swap the |0> / |1> components; IY: swap and negate the |1> image.
  const double lower_sign = (op == PauliCode::IY) ? -1.0 : 1.0;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    if (i & mask) continue;
    const std::size_t j = i | mask;
    amps[i] = state.amplitude(j);
    amps[j] = lower_sign * state.amplitude(i);
  }
  return PureState(state.num_qubits(), std::move(amps));
}

PureState apply_cnot(const PureState& state, int control, int target) {
  check_qubit_index(state, control, "apply_cnot");
  check_qubit_index(state, target, "apply_cnot");
  if (control == target) {
    throw std::invalid_argument("apply_cnot: control equals target");
  }
  const std::size_t cmask = qubit_mask(state.num_qubits(), control);
  const std::size_t tmask = qubit_mask(state.num_qubits(), target);
  Amplitudes amps(state.dim());
  for (std::size_t i = 0; i < state.dim(); ++i) {
    const std::size_t j = (i & cmask) ? (i ^ tmask) : i;
    amps[j] = state.amplitude(i);
  }
  return PureState(state.num_qubits(), std::move(amps));
}

BellProbabilities bell_probabilities(const PureState& state, int qubit_a,
                                     int qubit_b) {
  check_qubit_index(state, qubit_a, "bell_probabilities");
  check_qubit_index(state, qubit_b, "bell_probabilities");
  if (qubit_a == qubit_b) {
    throw std::invalid_argument("bell_probabilities: identical qubit indices");
  }
  BellProbabilities probs;
  for (BellKind k : kAllBellKinds) {
    probs[k] = bell_project(state, qubit_a, qubit_b, k, nullptr);
  }
  return probs;
}

BellMeasurement bell_measure(const PureState& state, int qubit_a, int qubit_b,
                             Rng& rng) {
  const BellProbabilities probs = bell_probabilities(state, qubit_a, qubit_b);

  const double u = rng.next_real();
  BellKind outcome = BellKind::PsiMinus;
  bool chosen = false;
  double cum = 0.0;
  for (BellKind k : kAllBellKinds) {
    cum += probs[k];
    if (u < cum) {
      outcome = k;
      chosen = true;
      break;
    }
  }
  if (!chosen) {
    // u landed beyond the accumulated total (floating-point shortfall):
    // take the last outcome with nonzero probability.
    for (auto it = kAllBellKinds.rbegin(); it != kAllBellKinds.rend(); ++it) {
      if (probs[*it] > 0.0) {
        outcome = *it;
        break;
      }
    }
  }

  Amplitudes rest;
  const double p = bell_project(state, qubit_a, qubit_b, outcome, &rest);
  const double scale = 1.0 / std::sqrt(p);

  // Re-expand: measured pair collapsed onto the outcome's Bell vector.
  const int n = state.num_qubits();
  const std::size_t mask_a = qubit_mask(n, qubit_a);
  const std::size_t mask_b = qubit_mask(n, qubit_b);
  std::vector<std::size_t> rest_masks;
  for (int q = 1; q <= n; ++q) {
    if (q != qubit_a && q != qubit_b) rest_masks.push_back(qubit_mask(n, q));
  }
  const auto& bell = kBellVectors[static_cast<int>(outcome)];
  Amplitudes amps(state.dim(), Complex{0.0, 0.0});
  for (std::size_t r = 0; r < rest.size(); ++r) {
    std::size_t base = 0;
    for (std::size_t k = 0; k < rest_masks.size(); ++k) {
      if ((r >> (rest_masks.size() - 1 - k)) & 1) base |= rest_masks[k];
    }
    for (std::size_t pair_idx = 0; pair_idx < 4; ++pair_idx) {
      if (bell[pair_idx] == 0.0) continue;
      std::size_t full = base;
      if (pair_idx & 2) full |= mask_a;
      if (pair_idx & 1) full |= mask_b;
      amps[full] = bell[pair_idx] * rest[r] * scale;
    }
  }
  return BellMeasurement{outcome, PureState(n, std::move(amps))};
}

BellProjection project_pair_onto_bell(const PureState& state, int qubit_a,
                                      int qubit_b, BellKind kind) {
  check_qubit_index(state, qubit_a, "project_pair_onto_bell");
  check_qubit_index(state, qubit_b, "project_pair_onto_bell");
  if (qubit_a == qubit_b) {
    throw std::invalid_argument(
        "project_pair_onto_bell: identical qubit indices");
  }
  if (state.num_qubits() < 3) {
    throw std::invalid_argument(
        "project_pair_onto_bell: nothing would remain");
  }
  Amplitudes rest;
  const double p = bell_project(state, qubit_a, qubit_b, kind, &rest);
  if (p <= 0.0) {
    throw std::domain_error(
        "project_pair_onto_bell: outcome has zero probability");
  }
  const double scale = 1.0 / std::sqrt(p);
  for (Complex& a : rest) a *= scale;
  return BellProjection{p,
                        PureState(state.num_qubits() - 2, std::move(rest))};
}

BitMeasurement measure_computational(const PureState& state, int qubit,
                                     Rng& rng) {
  check_qubit_index(state, qubit, "measure_computational");
  const std::size_t mask = qubit_mask(state.num_qubits(), qubit);

  double p0 = 0.0;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    if (!(i & mask)) p0 += std::norm(state.amplitude(i));
  }
  const int bit = rng.next_real() < p0 ? 0 : 1;
  const double p = bit == 0 ? p0 : 1.0 - p0;
  const double scale = 1.0 / std::sqrt(p);

  Amplitudes amps(state.dim(), Complex{0.0, 0.0});
  for (std::size_t i = 0; i < state.dim(); ++i) {
    const bool one = (i & mask) != 0;
    if (one == (bit == 1)) amps[i] = state.amplitude(i) * scale;
  }
  return BitMeasurement{bit, PureState(state.num_qubits(), std::move(amps))};
}

namespace {

std::vector<int> checked_keep_set(int num_qubits, const std::vector<int>& keep,
                                  const char* what) {
  if (keep.empty()) {
    throw std::invalid_argument(std::string(what) + ": empty keep set");
  }
  std::vector<int> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument(std::string(what) + ": duplicate keep index");
  }
  if (sorted.front() < 1 || sorted.back() > num_qubits) {
    throw std::out_of_range(std::string(what) + ": keep index out of range");
  }
  return sorted;
}

// Builds a full basis index from separate kept / traced sub-indices.
std::size_t compose_index(std::size_t kept_bits, std::size_t traced_bits,
                          const std::vector<std::size_t>& kept_masks,
                          const std::vector<std::size_t>& traced_masks) {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < kept_masks.size(); ++k) {
    if ((kept_bits >> (kept_masks.size() - 1 - k)) & 1) idx |= kept_masks[k];
  }
  for (std::size_t k = 0; k < traced_masks.size(); ++k) {
    if ((traced_bits >> (traced_masks.size() - 1 - k)) & 1) {
      idx |= traced_masks[k];
    }
  }
  return idx;
}

}  // namespace

DensityMatrix partial_trace(const PureState& state,
                            const std::vector<int>& keep) {
  const int n = state.num_qubits();
  const std::vector<int> kept = checked_keep_set(n, keep, "partial_trace");

  std::vector<std::size_t> kept_masks, traced_masks;
  for (int q : kept) kept_masks.push_back(qubit_mask(n, q));
  for (int q = 1; q <= n; ++q) {
    if (!std::binary_search(kept.begin(), kept.end(), q)) {
      traced_masks.push_back(qubit_mask(n, q));
    }
  }

  const std::size_t kd = std::size_t{1} << kept_masks.size();
  const std::size_t td = std::size_t{1} << traced_masks.size();
  std::vector<Complex> entries(kd * kd, Complex{0.0, 0.0});
  for (std::size_t r = 0; r < kd; ++r) {
    for (std::size_t c = 0; c < kd; ++c) {
      Complex acc{0.0, 0.0};
      for (std::size_t t = 0; t < td; ++t) {
        const std::size_t ri = compose_index(r, t, kept_masks, traced_masks);
        const std::size_t ci = compose_index(c, t, kept_masks, traced_masks);
        acc += state.amplitude(ri) * std::conj(state.amplitude(ci));
      }
      entries[r * kd + c] = acc;
    }
  }
  return DensityMatrix(static_cast<int>(kept_masks.size()),
                       std::move(entries));
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep) {
  const int n = rho.num_qubits();
  const std::vector<int> kept = checked_keep_set(n, keep, "partial_trace");

  std::vector<std::size_t> kept_masks, traced_masks;
  for (int q : kept) kept_masks.push_back(qubit_mask(n, q));
  for (int q = 1; q <= n; ++q) {
    if (!std::binary_search(kept.begin(), kept.end(), q)) {
      traced_masks.push_back(qubit_mask(n, q));
    }
  }

  const std::size_t kd = std::size_t{1} << kept_masks.size();
  const std::size_t td = std::size_t{1} << traced_masks.size();
  std::vector<Complex> entries(kd * kd, Complex{0.0, 0.0});
  for (std::size_t r = 0; r < kd; ++r) {
    for (std::size_t c = 0; c < kd; ++c) {
      Complex acc{0.0, 0.0};
      for (std::size_t t = 0; t < td; ++t) {
        const std::size_t ri = compose_index(r, t, kept_masks, traced_masks);
        const std::size_t ci = compose_index(c, t, kept_masks, traced_masks);
        acc += rho(ri, ci);
      }
      entries[r * kd + c] = acc;
    }
  }
  return DensityMatrix(static_cast<int>(kept_masks.size()),
                       std::move(entries));
}

bool same_up_to_global_phase(const PureState& a, const PureState& b,
                             double tol) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("same_up_to_global_phase: dimension mismatch");
  }
  Complex overlap{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) {
    overlap += std::conj(a.amplitude(i)) * b.amplitude(i);
  }
  return std::abs(std::norm(overlap) - 1.0) <= tol;
}

}  // namespace eprqkd
