#include "cpcurve/beta.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cpcurve/special_functions.hpp"

namespace cpcurve {

namespace {

struct BetaTableEntry {
  BetaIndex idx;
  std::array<Rational, 6> exp_poly;
  std::array<Rational, 7> ei_poly;
};

#include "beta_tables.inc"

std::string index_string(const BetaIndex& idx) {
  return std::string("(") + (idx.pol == Polarization::E ? "E" : "M") + "," +
         std::to_string(idx.p) + "," + std::to_string(idx.q) + ")";
}

// Double-precision copies of the rational tables for the hot path.
struct DoubleEntry {
  std::array<double, 6> exp_poly;
  std::array<double, 7> ei_poly;
};

const std::array<DoubleEntry, beta_slot_count>& double_table() {
  static const std::array<DoubleEntry, beta_slot_count> table = [] {
    std::array<DoubleEntry, beta_slot_count> t{};
    for (int s = 0; s < beta_slot_count; ++s) {
      for (int n = 0; n < 6; ++n) t[s].exp_poly[n] = kBetaTable[s].exp_poly[n].value();
      for (int n = 0; n < 7; ++n) t[s].ei_poly[n] = kBetaTable[s].ei_poly[n].value();
    }
    return t;
  }();
  return table;
}

template <std::size_t N>
double horner(const std::array<double, N>& coeffs, double x) {
  double r = 0.0;
  for (int n = static_cast<int>(N) - 1; n >= 0; --n) r = r * x + coeffs[n];
  return r;
}

}  // namespace

bool beta_index_valid(const BetaIndex& idx) noexcept {
  switch (idx.p) {
    case 0: return idx.q == 1 || idx.q == 2;
    case 2: return idx.q >= 1 && idx.q <= 3;
    case 3: return idx.q == 0;
    case 4: return idx.q >= 1 && idx.q <= 5;
    default: return false;
  }
}

const std::array<BetaIndex, beta_slot_count>& beta_indices() noexcept {
  static const std::array<BetaIndex, beta_slot_count> indices = [] {
    std::array<BetaIndex, beta_slot_count> out{};
    for (int s = 0; s < beta_slot_count; ++s) out[s] = kBetaTable[s].idx;
    return out;
  }();
  return indices;
}

int beta_slot(const BetaIndex& idx) {
  if (!beta_index_valid(idx)) {
    throw std::invalid_argument("beta: invalid index " + index_string(idx));
  }
  int slot = idx.pol == Polarization::E ? 0 : 11;
  switch (idx.p) {
    case 0: slot += idx.q - 1; break;      // slots 0..1
    case 2: slot += 2 + (idx.q - 1); break;  // slots 2..4
    case 3: slot += 5; break;              // slot 5
    case 4: slot += 6 + (idx.q - 1); break;  // slots 6..10
  }
  return slot;
}

const BetaCoefficient& beta_coefficient(const BetaIndex& idx) {
  static const std::array<BetaCoefficient, beta_slot_count> coeffs = [] {
    std::array<BetaCoefficient, beta_slot_count> out{};
    for (int s = 0; s < beta_slot_count; ++s) {
      out[s] = {kBetaTable[s].exp_poly, kBetaTable[s].ei_poly};
    }
    return out;
  }();
  return coeffs[beta_slot(idx)];
}

Rational beta_at_zero(const BetaIndex& idx) {
  return kBetaTable[beta_slot(idx)].exp_poly[0];
}

double beta(const BetaIndex& idx, double xi) {
  const int slot = beta_slot(idx);
  if (xi < 0.0) {
    throw std::domain_error("beta: xi must be nonnegative, got " +
                            std::to_string(xi));
  }
  if (xi == 0.0) return kBetaTable[slot].exp_poly[0].value();
  const DoubleEntry& e = double_table()[slot];
  return horner(e.exp_poly, xi) * std::exp(-2.0 * xi) +
         horner(e.ei_poly, xi) * ei(2.0 * xi);
}

std::array<double, beta_slot_count> beta_all(double xi) {
  if (xi < 0.0) {
    throw std::domain_error("beta_all: xi must be nonnegative, got " +
                            std::to_string(xi));
  }
  std::array<double, beta_slot_count> out{};
  if (xi == 0.0) {
    for (int s = 0; s < beta_slot_count; ++s) {
      out[s] = kBetaTable[s].exp_poly[0].value();
    }
    return out;
  }
  const double expv = std::exp(-2.0 * xi);
  const double eiv = ei(2.0 * xi);
  const auto& table = double_table();
  for (int s = 0; s < beta_slot_count; ++s) {
    out[s] = horner(table[s].exp_poly, xi) * expv + horner(table[s].ei_poly, xi) * eiv;
  }
  return out;
}

const std::array<double, beta_slot_count>& beta_integrals() {
  // Exact moments over [0, inf):
  //   int xi^n exp(-2 xi) = n!/2^(n+1),  int xi^n ei(2 xi) = -n!/((n+1) 2^(n+1)).
  // The static initializer is run once and is race-free.
  static const std::array<double, beta_slot_count> integrals = [] {
    double exp_moment[7];
    double ei_moment[7];
    double factorial = 1.0;
    for (int n = 0; n < 7; ++n) {
      if (n > 0) factorial *= n;
      const double pow2 = std::ldexp(1.0, n + 1);  // 2^(n+1)
      exp_moment[n] = factorial / pow2;
      ei_moment[n] = -factorial / ((n + 1) * pow2);
    }
    std::array<double, beta_slot_count> out{};
    for (int s = 0; s < beta_slot_count; ++s) {
      double sum = 0.0;
      for (int n = 0; n < 6; ++n) {
        sum += kBetaTable[s].exp_poly[n].value() * exp_moment[n];
      }
      for (int n = 0; n < 7; ++n) {
        sum += kBetaTable[s].ei_poly[n].value() * ei_moment[n];
      }
      out[s] = sum;
    }
    return out;
  }();
  return integrals;
}

double beta_integral(const BetaIndex& idx) {
  return beta_integrals()[beta_slot(idx)];
}

}  // namespace cpcurve
