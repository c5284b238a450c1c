#pragma once

// Combinatorics of the stratified Hitchin base and singular Hitchin fibers.
// Everything here is exact integer arithmetic on zero orders of a quadratic
// differential q and on Higgs divisors 0 <= V <= floor(div(q)/2).

#include <optional>
#include <vector>

namespace hitchin::strata {

/// Zero orders of a quadratic differential on a genus-g surface.
class Partition {
 public:
  int genus() const noexcept { return genus_; }
  const std::vector<int>& orders() const noexcept { return orders_; }
  int zero_count() const noexcept { return static_cast<int>(orders_.size()); }
  int r_odd() const noexcept;
  int r_even() const noexcept;

  friend Partition validate_partition(int g, std::vector<int> orders);

 private:
  Partition(int g, std::vector<int> orders) : genus_(g), orders_(std::move(orders)) {}
  int genus_;
  std::vector<int> orders_;
};

/// Builds a partition; throws SumMismatch / BadGenus.
Partition validate_partition(int g, std::vector<int> orders);

/// Higgs divisor values, aligned with Partition::orders().
struct HiggsDivisor {
  std::vector<int> values;

  int degree() const noexcept;
  bool operator==(const HiggsDivisor&) const = default;
};

struct StratumShape {
  int k1 = 0;  // number of C^* factors
  int k2 = 0;  // number of C factors
  int prym_dim = 0;
  int total_dim = 0;

  bool operator==(const StratumShape&) const = default;
};

/// Local Hecke-parameter space at a single zero: (C^*)^{has_cstar} x C^{c_dim}.
struct LocalHeckeShape {
  bool has_cstar = false;
  int c_dim = 0;

  bool operator==(const LocalHeckeShape&) const = default;
};

struct BaseStratumDimension {
  int dimension;
  bool unconditionally_smooth;
};

struct RankResult {
  int rank;
};

struct LimitingModuliDimension {
  int real_dimension;                 // k + 2g - 2
  std::optional<int> excess_over_prym;  // set when the partition is known
};

int normalized_genus(const Partition& p);
int prym_dimension(const Partition& p);
BaseStratumDimension base_stratum_dimension(const Partition& p);
int fiber_stratum_dimension(int g, const HiggsDivisor& v);
HiggsDivisor v_max(const Partition& p);

/// Throws IncompatibleDivisor unless 0 <= v_p <= floor(m_p/2) for every zero.
void check_compatible(const Partition& p, const HiggsDivisor& v);

StratumShape fiber_shape(const Partition& p, const HiggsDivisor& v);

/// Per-zero enumeration of Hecke-germ coordinates, independent of fiber_shape.
std::vector<LocalHeckeShape> hecke_param_oracle(const Partition& p, const HiggsDivisor& v);
LocalHeckeShape hecke_param_oracle_local(int order, int divisor_value);

/// k2 as printed in the stratification theorem, in half-units (2*k2) since
/// the printed expression carries a deg(V)/2 term. n_ss counts even zeros with v_p = m_p/2.
int printed_k2_twice(const Partition& p, const HiggsDivisor& v);

/// Number of even zeros at which the divisor is locally semisimple (v_p = m_p/2).
int semisimple_count(const Partition& p, const HiggsDivisor& v);

RankResult hitchin_rank(int g, int deg_v, bool canonical_divisor_class);

LimitingModuliDimension limiting_moduli_dimension(int g, int k_zeros);
LimitingModuliDimension limiting_moduli_dimension(const Partition& p);

/// Every partition of 4g-4 (non-increasing order lists).
std::vector<Partition> all_partitions(int g);

/// Every divisor 0 <= V <= V_max(p), in lexicographic order.
std::vector<HiggsDivisor> all_divisors(const Partition& p);

}  // namespace hitchin::strata
