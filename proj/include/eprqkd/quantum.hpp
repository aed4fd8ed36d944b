#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "eprqkd/rng.hpp"

namespace eprqkd {

using Complex = std::complex<double>;
using Amplitudes = std::vector<Complex>;

// Phase-insensitive state comparison tolerance.
inline constexpr double kPhaseTol = 1e-10;

// The four Bell states. Enum order is also the cumulative sampling order
// used by bell_measure.
enum class BellKind { PsiMinus = 0, PsiPlus = 1, PhiMinus = 2, PhiPlus = 3 };

inline constexpr std::array<BellKind, 4> kAllBellKinds = {
    BellKind::PsiMinus, BellKind::PsiPlus, BellKind::PhiMinus,
    BellKind::PhiPlus};

std::string_view to_string(BellKind kind);
std::optional<BellKind> bell_kind_from_name(std::string_view name);

// Local encoding operations: I, sigma_x, i*sigma_y.
// As matrices: I = [[1,0],[0,1]], X = [[0,1],[1,0]], IY = [[0,1],[-1,0]].
enum class PauliCode { Id = 0, X = 1, IY = 2 };

std::string_view to_string(PauliCode op);

// Unit-norm amplitude vector over 1..4 qubits.
//
// Basis convention: amplitude index i encodes |b1 b2 ... bn> where b1 is the
// most significant bit of i. Qubits are addressed by 1-based position, so
// qubit 1 is the leftmost ket symbol / most significant bit.
class PureState {
public:
  PureState(int num_qubits, Amplitudes amplitudes);

  // |b1 b2 ... bn> for the given basis index.
  static PureState computational(int num_qubits, std::size_t basis_index);
  // Normalized single qubit c|0> + d|1>.
  static PureState qubit(Complex c, Complex d);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amplitudes_.size(); }
  const Amplitudes& amplitudes() const { return amplitudes_; }
  Complex amplitude(std::size_t basis_index) const {
    return amplitudes_[basis_index];
  }
  double norm() const;

private:
  int num_qubits_;
  Amplitudes amplitudes_;
};

// 2^n x 2^n density operator, same basis convention as PureState.
class DensityMatrix {
public:
  DensityMatrix(int num_qubits, std::vector<Complex> entries);  // row-major

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return dim_; }
  Complex operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }
  Complex trace() const;
  double hermiticity_defect() const;  // max |rho - rho^dagger| entry

private:
  int num_qubits_;
  std::size_t dim_;
  std::vector<Complex> entries_;
};

// Canonical amplitude vectors:
//   PsiMinus = (0, 1/sqrt2, -1/sqrt2, 0)   PsiPlus = (0, 1/sqrt2, 1/sqrt2, 0)
//   PhiMinus = (1/sqrt2, 0, 0, -1/sqrt2)   PhiPlus = (1/sqrt2, 0, 0, 1/sqrt2)
PureState bell_state(BellKind kind);

// Kronecker product; a's qubits keep the lower (more significant) positions.
// Throws if the combined register would exceed 4 qubits.
PureState tensor(const PureState& a, const PureState& b);

// Apply op to one qubit, identity elsewhere.
PureState apply_1q(const PureState& state, int qubit, PauliCode op);

// Flip the target bit of every basis state whose control bit is 1.
PureState apply_cnot(const PureState& state, int control, int target);

struct BellProbabilities {
  std::array<double, 4> p{};  // indexed by BellKind enum value

  double operator[](BellKind k) const { return p[static_cast<int>(k)]; }
  double& operator[](BellKind k) { return p[static_cast<int>(k)]; }
  double total() const { return p[0] + p[1] + p[2] + p[3]; }
};

// Born probabilities for a Bell-basis measurement of the addressed pair,
// identity on all other qubits. Sums to 1 for any unit-norm input.
BellProbabilities bell_probabilities(const PureState& state, int qubit_a,
                                     int qubit_b);

struct BellMeasurement {
  BellKind outcome;
  PureState residual;  // measured pair collapsed onto the outcome's vector
};

// Projective Bell measurement. One rng draw is consumed, tested against the
// cumulative distribution in enum order, so a zero-probability outcome is
// never produced.
BellMeasurement bell_measure(const PureState& state, int qubit_a, int qubit_b,
                             Rng& rng);

struct BellProjection {
  double probability;
  PureState remainder;  // the non-measured qubits, ascending position order
};

// Projects the addressed pair onto one Bell vector and factors it out,
// leaving the state of the remaining qubits. Requires at least 3 qubits and
// a nonzero outcome probability.
BellProjection project_pair_onto_bell(const PureState& state, int qubit_a,
                                      int qubit_b, BellKind kind);

struct BitMeasurement {
  int bit;
  PureState residual;  // measured qubit collapsed to |bit>
};

// Computational-basis measurement of a single qubit (one rng draw).
BitMeasurement measure_computational(const PureState& state, int qubit,
                                     Rng& rng);

// Reduced density matrix on the kept qubits (ascending position order).
DensityMatrix partial_trace(const PureState& state,
                            const std::vector<int>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep);

// True iff |<a|b>|^2 = 1 within tol. Bell outcomes are phase-insensitive;
// i*sigma_y introduces signs that never affect measurement statistics.
bool same_up_to_global_phase(const PureState& a, const PureState& b,
                             double tol = kPhaseTol);

}  // namespace eprqkd
