#include "charshift/oracle.hpp"

#include <cmath>

#include "charshift/error.hpp"

namespace charshift {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::Legendre: return "legendre";
    case Variant::Jacobi: return "jacobi";
    case Variant::JacobiUnknown: return "jacobi-unknown";
    case Variant::Field: return "field";
  }
  return "unknown";
}

std::size_t encode_result(int value) { return static_cast<std::size_t>((value % 3 + 3) % 3); }

int decode_result(std::size_t digit) {
  switch (digit % 3) {
    case 1: return 1;
    case 2: return -1;
    default: return 0;
  }
}

namespace {

void require_shift_below(std::uint64_t shift, std::uint64_t bound) {
  if (shift >= bound) {
    throw Error(ErrorCode::ShiftOutOfRange, "shift " + std::to_string(shift) + " outside Z_" + std::to_string(bound));
  }
}

}  // namespace

ShiftOracle ShiftOracle::legendre(std::uint64_t p, std::uint64_t shift) {
  if (p < 3 || p % 2 == 0 || !is_prime(p)) {
    throw Error(ErrorCode::NotOddPrime, std::to_string(p) + " is not an odd prime");
  }
  require_shift_below(shift, p);
  ShiftOracle o;
  o.variant_ = Variant::Legendre;
  o.domain_ = p;
  o.modulus_ = p;
  o.shift_ = shift;
  return o;
}

ShiftOracle ShiftOracle::legendre(std::uint64_t p, Rng& rng) { return legendre(p, uniform_below(rng, p)); }

ShiftOracle ShiftOracle::jacobi(std::uint64_t n, std::uint64_t shift) {
  const auto factored = factor_trial(n);
  require_shift_below(shift, factored.value());
  ShiftOracle o;
  o.variant_ = Variant::Jacobi;
  o.domain_ = n;
  o.modulus_ = n;
  o.shift_ = shift;
  return o;
}

ShiftOracle ShiftOracle::jacobi(std::uint64_t n, Rng& rng) { return jacobi(n, uniform_below(rng, n)); }

ShiftOracle ShiftOracle::jacobi_unknown(std::uint64_t n, std::uint64_t M, std::uint64_t shift) {
  factor_trial(n);
  if (n * n >= M) {
    throw Error(ErrorCode::ModulusTooLargeForM,
                "n^2 = " + std::to_string(n * n) + " is not below M = " + std::to_string(M));
  }
  require_shift_below(shift, n);
  ShiftOracle o;
  o.variant_ = Variant::JacobiUnknown;
  o.domain_ = M;
  o.modulus_ = n;
  o.shift_ = shift;
  return o;
}

ShiftOracle ShiftOracle::jacobi_unknown(std::uint64_t n, std::uint64_t M, Rng& rng) {
  return jacobi_unknown(n, M, uniform_below(rng, n));
}

ShiftOracle ShiftOracle::field(const FieldSpec& field, const FieldElement& shift) {
  if (field.characteristic() == 2) {
    throw Error(ErrorCode::EvenCharacteristic, "shifted character problem needs odd characteristic");
  }
  ShiftOracle o;
  o.variant_ = Variant::Field;
  o.domain_ = field.order();
  o.modulus_ = field.characteristic();
  o.shift_ = field.index_of(shift);
  o.field_ = field;
  return o;
}

ShiftOracle ShiftOracle::field(const FieldSpec& field, Rng& rng) {
  return ShiftOracle::field(field, field.from_index(uniform_below(rng, field.order())));
}

ShiftOracle::ShiftOracle(const ShiftOracle& other)
    : variant_(other.variant_),
      domain_(other.domain_),
      modulus_(other.modulus_),
      shift_(other.shift_),
      field_(other.field_),
      classical_(other.classical_.load()),
      coherent_(other.coherent_.load()) {}

ShiftOracle& ShiftOracle::operator=(const ShiftOracle& other) {
  if (this == &other) return *this;
  variant_ = other.variant_;
  domain_ = other.domain_;
  modulus_ = other.modulus_;
  shift_ = other.shift_;
  field_ = other.field_;
  classical_.store(other.classical_.load());
  coherent_.store(other.coherent_.load());
  return *this;
}

const FieldSpec& ShiftOracle::field_spec() const {
  if (!field_) throw Error(ErrorCode::UnsupportedParameters, "oracle is not over a general field");
  return *field_;
}

int ShiftOracle::evaluate(std::uint64_t x) const {
  switch (variant_) {
    case Variant::Legendre:
      return charshift::legendre(static_cast<std::int64_t>((x + shift_) % modulus_), modulus_);
    case Variant::Jacobi:
    case Variant::JacobiUnknown:
      return charshift::jacobi(static_cast<std::int64_t>((x % modulus_ + shift_) % modulus_), modulus_);
    case Variant::Field: {
      const FieldElement sum = field_->add(field_->from_index(x), field_->from_index(shift_));
      return field_->quadratic_character(sum);
    }
  }
  return 0;
}

int ShiftOracle::query(std::uint64_t x) const {
  if (x >= domain_) {
    throw Error(ErrorCode::DomainViolation, "query " + std::to_string(x) + " outside a domain of size " +
                                                std::to_string(domain_));
  }
  classical_.fetch_add(1);
  return evaluate(x);
}

int ShiftOracle::query(const FieldElement& x) const {
  if (variant_ != Variant::Field) {
    throw Error(ErrorCode::DomainViolation, "field element passed to an integer oracle");
  }
  return query(field_->index_of(x));
}

StateVector ShiftOracle::phase_query(const StateVector& state, ZeroPolicy policy) const {
  if (state.dim() < domain_) {
    throw Error(ErrorCode::DimensionMismatch, "state smaller than the oracle domain");
  }
  std::vector<Amplitude> phases(state.dim(), Amplitude{1.0, 0.0});
  for (std::uint64_t x = 0; x < domain_; ++x) {
    const int f = evaluate(x);
    if (f != 0) {
      phases[x] = static_cast<double>(f);
    } else if (policy == ZeroPolicy::Reject && std::abs(state[x]) > 1e-12) {
      throw Error(ErrorCode::DomainViolation, "amplitude on the zero of f at index " + std::to_string(x));
    }
  }
  coherent_.fetch_add(1);
  return apply_phase(state, [&](std::size_t x) { return phases[x]; });
}

StateVector ShiftOracle::value_query(const StateVector& joint) const {
  if (joint.dim() % kResultDim != 0) {
    throw Error(ErrorCode::DimensionMismatch, "joint state needs a 3-valued result register");
  }
  const std::size_t rows = joint.dim() / kResultDim;
  std::vector<std::size_t> value(rows);
  for (std::size_t x = 0; x < rows; ++x) value[x] = encode_result(x < domain_ ? evaluate(x) : 1);
  coherent_.fetch_add(1);
  return permute_basis(joint, [&](std::size_t idx) {
    const std::size_t x = idx / kResultDim;
    const std::size_t r = idx % kResultDim;
    return x * kResultDim + (value[x] + kResultDim - r) % kResultDim;
  });
}

StateVector ShiftOracle::value_query_superposed(const StateVector& state) const {
  return value_query(attach_result_register(state));
}

FieldElement OracleSecrets::field_shift(const ShiftOracle& oracle) {
  return oracle.field_spec().from_index(oracle.shift_);
}

StateVector attach_result_register(const StateVector& state) {
  std::vector<Amplitude> amps(state.dim() * kResultDim, Amplitude{0.0, 0.0});
  for (std::size_t x = 0; x < state.dim(); ++x) amps[x * kResultDim] = state[x];
  return StateVector::from_amplitudes(std::move(amps));
}

StateVector detach_result_register(const StateVector& joint) {
  if (joint.dim() % kResultDim != 0) {
    throw Error(ErrorCode::DimensionMismatch, "joint state needs a 3-valued result register");
  }
  const std::size_t rows = joint.dim() / kResultDim;
  std::vector<Amplitude> amps(rows);
  for (std::size_t x = 0; x < rows; ++x) {
    for (std::size_t r = 1; r < kResultDim; ++r) {
      if (std::abs(joint[x * kResultDim + r]) > 1e-9) {
        throw Error(ErrorCode::DomainViolation, "result register is still entangled");
      }
    }
    amps[x] = joint[x * kResultDim];
  }
  return StateVector::normalized(std::move(amps));
}

StateVector apply_result_phase(const StateVector& joint) {
  return apply_phase(joint, [](std::size_t idx) {
    const int v = decode_result(idx % kResultDim);
    return Amplitude{v == 0 ? 1.0 : static_cast<double>(v), 0.0};
  });
}

bool result_is_nonzero(std::size_t joint_index) { return joint_index % kResultDim != 0; }

}  // namespace charshift
