#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "charshift/field.hpp"

namespace charshift {

using Amplitude = std::complex<double>;

/// Seeded generator injected into every measurement.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits, identical on every
/// standard library.
double uniform_unit(Rng& rng);

/// Uniform integer in [0, bound).
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

inline constexpr double kNormTolerance = 1e-9;

/// Dense amplitude vector over an arbitrary dimension N (not tied to
/// qubits). Always normalized.
class StateVector {
 public:
  /// Takes ownership of the amplitudes and rescales them to unit norm.
  /// Throws DimensionMismatch when the vector is empty or all zero.
  static StateVector normalized(std::vector<Amplitude> amps);

  /// Accepts amplitudes that are already normalized within kNormTolerance.
  static StateVector from_amplitudes(std::vector<Amplitude> amps);

  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  const Amplitude& operator[](std::size_t i) const { return amps_[i]; }
  double norm_squared() const;

 private:
  explicit StateVector(std::vector<Amplitude> amps) : amps_(std::move(amps)) {}

  std::vector<Amplitude> amps_;
};

/// Row-major tensor layout: the first register is the most significant.
class RegisterLayout {
 public:
  explicit RegisterLayout(std::vector<std::size_t> dims);

  std::size_t registers() const noexcept { return dims_.size(); }
  std::size_t dim(std::size_t reg) const { return dims_.at(reg); }
  std::size_t stride(std::size_t reg) const { return strides_.at(reg); }
  std::size_t total() const noexcept { return total_; }

  std::vector<std::size_t> split(std::size_t index) const;
  std::size_t join(std::span<const std::size_t> digits) const;
  std::size_t digit(std::size_t index, std::size_t reg) const;

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  std::size_t total_ = 1;
};

enum class Direction { Forward, Inverse };

/// Forward maps a[x] to (1/sqrt N) sum_x a[x] exp(+2 pi i x y / N).
StateVector qft(const StateVector& state, Direction dir);

/// The same transform applied to one register of a tensor layout.
StateVector qft_register(const StateVector& state, const RegisterLayout& layout, std::size_t reg, Direction dir);

using PhaseFn = std::function<Amplitude(std::size_t)>;

/// Multiplies amplitude x by phase(x). Throws NonUnitPhase when a
/// non-negligible amplitude meets a phase of modulus != 1.
StateVector apply_phase(const StateVector& state, const PhaseFn& phase);

using IndexMap = std::function<std::size_t(std::size_t)>;

/// amps'[map(x)] = amps[x]. Throws NotBijective.
StateVector permute_basis(const StateVector& state, const IndexMap& map);

std::vector<double> distribution(const StateVector& state);

std::pair<std::size_t, StateVector> measure(const StateVector& state, Rng& rng);

using IndexPredicate = std::function<bool(std::size_t)>;

struct Projection {
  double probability = 0.0;
  /// Renormalized projection; empty when probability is zero.
  std::optional<StateVector> state;
};

/// Noiseless counterpart of measure_predicate: the probability that the
/// predicate holds and the renormalized state on that subspace.
Projection project(const StateVector& state, const IndexPredicate& predicate);

std::pair<bool, StateVector> measure_predicate(const StateVector& state, const IndexPredicate& predicate, Rng& rng);

/// Acts on indices [0, q) of the state as |x> -> q^{-1/2} sum_y w_p^{Tr(xy)} |y>
/// (inverse: conjugate kernel). Realized as the trace-coordinate permutation
/// followed by r independent Z_p transforms. Higher indices are untouched.
StateVector trace_fourier_transform(const StateVector& state, const FieldSpec& field, Direction dir);

/// True iff some unit u gives ||a - u b|| <= tol; u is taken from the
/// amplitude of b with the largest magnitude.
bool equal_up_to_global_phase(const StateVector& a, const StateVector& b, double tol);

/// Lines "index<TAB>re<TAB>im"; amplitudes below 1e-12 are omitted.
void dump_state(std::ostream& os, const StateVector& state);

}  // namespace charshift
