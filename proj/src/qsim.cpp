#include "charshift/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "charshift/error.hpp"
#include "charshift/fft.hpp"

namespace charshift {

namespace {

constexpr double kNegligibleAmplitude = 1e-12;

int sign_of(Direction dir) { return dir == Direction::Forward ? +1 : -1; }

// Unitary Z_d transform along one register of a row-major layout, in place.
void transform_register(std::span<Amplitude> amps, std::size_t dim, std::size_t stride, int sign) {
  if (dim <= 1) return;
  const std::size_t block = dim * stride;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  std::vector<Amplitude> line(dim);
  for (std::size_t hi = 0; hi < amps.size(); hi += block) {
    for (std::size_t lo = 0; lo < stride; ++lo) {
      for (std::size_t d = 0; d < dim; ++d) line[d] = amps[hi + d * stride + lo];
      fft::transform(line, sign);
      for (std::size_t d = 0; d < dim; ++d) amps[hi + d * stride + lo] = line[d] * scale;
    }
  }
}

}  // namespace

double uniform_unit(Rng& rng) { return static_cast<double>(rng() >> 11U) * 0x1.0p-53; }

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::UnsupportedParameters, "empty sampling range");
  // Rejection sampling keeps the draw exactly uniform.
  const std::uint64_t limit = Rng::max() - (Rng::max() % bound);
  std::uint64_t v = 0;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

// StateVector -------------------------------------------------------------

StateVector StateVector::normalized(std::vector<Amplitude> amps) {
  double norm2 = 0.0;
  for (const auto& a : amps) norm2 += std::norm(a);
  if (amps.empty() || norm2 == 0.0) {
    throw Error(ErrorCode::DimensionMismatch, "cannot normalize an empty or zero vector");
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& a : amps) a *= scale;
  return StateVector(std::move(amps));
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amps) {
  double norm2 = 0.0;
  for (const auto& a : amps) norm2 += std::norm(a);
  if (amps.empty() || std::abs(norm2 - 1.0) > kNormTolerance) {
    throw Error(ErrorCode::DimensionMismatch, "amplitudes are not normalized");
  }
  return StateVector(std::move(amps));
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw Error(ErrorCode::DimensionMismatch, "basis index out of range");
  std::vector<Amplitude> amps(dim, Amplitude{0.0, 0.0});
  amps[index] = 1.0;
  return StateVector(std::move(amps));
}

double StateVector::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

// RegisterLayout ----------------------------------------------------------

RegisterLayout::RegisterLayout(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  strides_.assign(dims_.size(), 1);
  for (std::size_t k = dims_.size(); k-- > 0;) {
    if (dims_[k] == 0) throw Error(ErrorCode::DimensionMismatch, "register of dimension 0");
    strides_[k] = total_;
    total_ *= dims_[k];
  }
}

std::vector<std::size_t> RegisterLayout::split(std::size_t index) const {
  std::vector<std::size_t> digits(dims_.size());
  for (std::size_t k = 0; k < dims_.size(); ++k) digits[k] = digit(index, k);
  return digits;
}

std::size_t RegisterLayout::join(std::span<const std::size_t> digits) const {
  if (digits.size() != dims_.size()) throw Error(ErrorCode::DimensionMismatch, "digit count mismatch");
  std::size_t index = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) index += digits[k] * strides_[k];
  return index;
}

std::size_t RegisterLayout::digit(std::size_t index, std::size_t reg) const {
  return (index / strides_.at(reg)) % dims_[reg];
}

// Operations --------------------------------------------------------------

StateVector qft(const StateVector& state, Direction dir) {
  std::vector<Amplitude> amps(state.amplitudes().begin(), state.amplitudes().end());
  transform_register(amps, amps.size(), 1, sign_of(dir));
  return StateVector::normalized(std::move(amps));
}

StateVector qft_register(const StateVector& state, const RegisterLayout& layout, std::size_t reg, Direction dir) {
  if (layout.total() != state.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "layout does not match state dimension");
  }
  std::vector<Amplitude> amps(state.amplitudes().begin(), state.amplitudes().end());
  transform_register(amps, layout.dim(reg), layout.stride(reg), sign_of(dir));
  return StateVector::normalized(std::move(amps));
}

StateVector apply_phase(const StateVector& state, const PhaseFn& phase) {
  std::vector<Amplitude> amps(state.amplitudes().begin(), state.amplitudes().end());
  for (std::size_t x = 0; x < amps.size(); ++x) {
    const Amplitude u = phase(x);
    if (std::abs(amps[x]) > kNegligibleAmplitude && std::abs(std::abs(u) - 1.0) > kNormTolerance) {
      throw Error(ErrorCode::NonUnitPhase, "phase at index " + std::to_string(x) + " has modulus " +
                                               std::to_string(std::abs(u)));
    }
    amps[x] *= u;
  }
  return StateVector::normalized(std::move(amps));
}

StateVector permute_basis(const StateVector& state, const IndexMap& map) {
  const std::size_t n = state.dim();
  std::vector<Amplitude> amps(n, Amplitude{0.0, 0.0});
  std::vector<bool> hit(n, false);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t y = map(x);
    if (y >= n || hit[y]) {
      throw Error(ErrorCode::NotBijective, "index map is not a bijection at " + std::to_string(x));
    }
    hit[y] = true;
    amps[y] = state[x];
  }
  return StateVector::from_amplitudes(std::move(amps));
}

std::vector<double> distribution(const StateVector& state) {
  std::vector<double> probs(state.dim());
  for (std::size_t x = 0; x < state.dim(); ++x) probs[x] = std::norm(state[x]);
  return probs;
}

std::pair<std::size_t, StateVector> measure(const StateVector& state, Rng& rng) {
  const std::vector<double> probs = distribution(state);
  double total = 0.0;
  for (double p : probs) total += p;
  const double target = uniform_unit(rng) * total;
  double acc = 0.0;
  std::size_t chosen = state.dim();
  std::size_t last_nonzero = 0;
  for (std::size_t x = 0; x < probs.size(); ++x) {
    if (probs[x] == 0.0) continue;
    last_nonzero = x;
    acc += probs[x];
    if (target < acc) {
      chosen = x;
      break;
    }
  }
  if (chosen == state.dim()) chosen = last_nonzero;  // rounding at the top end
  return {chosen, StateVector::basis(state.dim(), chosen)};
}

Projection project(const StateVector& state, const IndexPredicate& predicate) {
  std::vector<Amplitude> amps(state.dim(), Amplitude{0.0, 0.0});
  double prob = 0.0;
  for (std::size_t x = 0; x < state.dim(); ++x) {
    if (!predicate(x)) continue;
    amps[x] = state[x];
    prob += std::norm(state[x]);
  }
  Projection out;
  out.probability = prob;
  if (prob > 0.0) out.state = StateVector::normalized(std::move(amps));
  return out;
}

std::pair<bool, StateVector> measure_predicate(const StateVector& state, const IndexPredicate& predicate, Rng& rng) {
  Projection yes = project(state, predicate);
  const double draw = uniform_unit(rng);
  if (yes.state && draw < yes.probability) return {true, std::move(*yes.state)};
  Projection no = project(state, [&](std::size_t x) { return !predicate(x); });
  if (!no.state) return {true, std::move(*yes.state)};
  return {false, std::move(*no.state)};
}

StateVector trace_fourier_transform(const StateVector& state, const FieldSpec& field, Direction dir) {
  const std::size_t q = field.order();
  if (state.dim() < q) {
    throw Error(ErrorCode::DimensionMismatch, "state smaller than the field");
  }
  const std::size_t p = field.characteristic();
  const unsigned r = field.degree();

  // x -> index of T(x) = (Tr(x), Tr(xX), ...), little-endian like field indices.
  std::vector<std::size_t> coordinate_index(q);
  for (std::size_t x = 0; x < q; ++x) {
    const auto coords = field.trace_coordinates(field.from_index(x));
    std::size_t idx = 0;
    for (std::size_t j = r; j-- > 0;) idx = idx * p + coords[j];
    coordinate_index[x] = idx;
  }

  std::vector<Amplitude> amps(state.amplitudes().begin(), state.amplitudes().end());
  std::span<Amplitude> field_part(amps.data(), q);
  std::vector<Amplitude> scratch(q);

  auto transform_all_digits = [&](int sign) {
    std::size_t stride = 1;
    for (unsigned j = 0; j < r; ++j, stride *= p) transform_register(field_part, p, stride, sign);
  };

  if (dir == Direction::Forward) {
    for (std::size_t x = 0; x < q; ++x) scratch[coordinate_index[x]] = field_part[x];
    std::copy(scratch.begin(), scratch.end(), field_part.begin());
    transform_all_digits(+1);
  } else {
    transform_all_digits(-1);
    for (std::size_t x = 0; x < q; ++x) scratch[x] = field_part[coordinate_index[x]];
    std::copy(scratch.begin(), scratch.end(), field_part.begin());
  }
  return StateVector::normalized(std::move(amps));
}

bool equal_up_to_global_phase(const StateVector& a, const StateVector& b, double tol) {
  if (a.dim() != b.dim()) return false;
  std::size_t k = 0;
  for (std::size_t x = 1; x < b.dim(); ++x) {
    if (std::abs(b[x]) > std::abs(b[k])) k = x;
  }
  if (std::abs(a[k]) < kNegligibleAmplitude) return false;
  Amplitude u = a[k] / b[k];
  u /= std::abs(u);
  double dist2 = 0.0;
  for (std::size_t x = 0; x < a.dim(); ++x) dist2 += std::norm(a[x] - u * b[x]);
  return std::sqrt(dist2) <= tol;
}

void dump_state(std::ostream& os, const StateVector& state) {
  const auto old_precision = os.precision(17);
  for (std::size_t x = 0; x < state.dim(); ++x) {
    if (std::abs(state[x]) < kNegligibleAmplitude) continue;
    os << x << '\t' << state[x].real() << '\t' << state[x].imag() << '\n';
  }
  os.precision(old_precision);
}

}  // namespace charshift
