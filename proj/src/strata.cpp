#include "hitchin/strata.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "hitchin/error.hpp"

namespace hitchin::strata {

namespace {

bool is_even(int x) { return x % 2 == 0; }

std::string join(const std::vector<int>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(xs[i]);
  }
  return out;
}

// Admissibility of a Hecke germ a in C[z]/z^m at a zero of the given order:
// at even zeros both eigenlines have to descend, which forces a(0) != 0.
bool germ_descends(int order, const std::vector<int>& nonzero_pattern) {
  if (order % 2 == 1 || nonzero_pattern.empty()) return true;
  return nonzero_pattern.front() != 0;
}

void enumerate_partitions(int remaining, int max_part, std::vector<int>& cur,
                          std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    cur.push_back(part);
    enumerate_partitions(remaining - part, part, cur, out);
    cur.pop_back();
  }
}

}  // namespace

int Partition::r_odd() const noexcept {
  return static_cast<int>(std::count_if(orders_.begin(), orders_.end(), [](int m) { return m % 2 != 0; }));
}

int Partition::r_even() const noexcept { return zero_count() - r_odd(); }

int HiggsDivisor::degree() const noexcept { return std::accumulate(values.begin(), values.end(), 0); }

Partition validate_partition(int g, std::vector<int> orders) {
  if (g < 2) throw Error(ErrorCode::BadGenus, "genus must be >= 2, got " + std::to_string(g));
  if (orders.empty()) throw Error(ErrorCode::SumMismatch, "empty zero list");
  for (int m : orders) {
    if (m < 1) throw Error(ErrorCode::SumMismatch, "zero orders must be >= 1: [" + join(orders) + "]");
  }
  const int sum = std::accumulate(orders.begin(), orders.end(), 0);
  if (sum != 4 * g - 4) {
    throw Error(ErrorCode::SumMismatch, "orders [" + join(orders) + "] sum to " + std::to_string(sum) +
                                            ", expected 4g-4 = " + std::to_string(4 * g - 4));
  }
  return Partition(g, std::move(orders));
}

int normalized_genus(const Partition& p) { return 2 * p.genus() - 1 + p.r_odd() / 2; }

int prym_dimension(const Partition& p) { return p.genus() - 1 + p.r_odd() / 2; }

BaseStratumDimension base_stratum_dimension(const Partition& p) {
  const int zeros = p.zero_count();
  const int dim = zeros - (p.genus() - 1);
  if (dim <= 0) {
    throw Error(ErrorCode::NonPositiveDimension,
                "r_even + r_odd - (g-1) = " + std::to_string(dim) + " for [" + join(p.orders()) + "]");
  }
  return {dim, zeros > 2 * p.genus() - 2};
}

int fiber_stratum_dimension(int g, const HiggsDivisor& v) { return 3 * g - 3 - v.degree(); }

HiggsDivisor v_max(const Partition& p) {
  HiggsDivisor v;
  v.values.reserve(p.orders().size());
  for (int m : p.orders()) v.values.push_back(m / 2);
  return v;
}

void check_compatible(const Partition& p, const HiggsDivisor& v) {
  if (v.values.size() != p.orders().size()) {
    throw Error(ErrorCode::IncompatibleDivisor, "divisor has " + std::to_string(v.values.size()) +
                                                    " entries, partition has " +
                                                    std::to_string(p.orders().size()) + " zeros");
  }
  for (std::size_t i = 0; i < v.values.size(); ++i) {
    const int m = p.orders()[i];
    if (v.values[i] < 0 || v.values[i] > m / 2) {
      throw Error(ErrorCode::IncompatibleDivisor, "v=" + std::to_string(v.values[i]) + " at a zero of order " +
                                                      std::to_string(m) + " (need 0 <= v <= " +
                                                      std::to_string(m / 2) + ")");
    }
  }
}

int semisimple_count(const Partition& p, const HiggsDivisor& v) {
  check_compatible(p, v);
  int n = 0;
  for (std::size_t i = 0; i < v.values.size(); ++i) {
    const int m = p.orders()[i];
    if (is_even(m) && 2 * v.values[i] == m) ++n;
  }
  return n;
}

StratumShape fiber_shape(const Partition& p, const HiggsDivisor& v) {
  check_compatible(p, v);
  StratumShape s;
  for (std::size_t i = 0; i < v.values.size(); ++i) {
    const int m = p.orders()[i];
    const int vp = v.values[i];
    if (!is_even(m)) {
      s.k2 += m / 2 - vp;
    } else if (2 * vp < m) {
      s.k1 += 1;
      s.k2 += m / 2 - vp - 1;
    }
  }
  s.prym_dim = prym_dimension(p);
  s.total_dim = s.k1 + s.k2 + s.prym_dim;
  return s;
}

LocalHeckeShape hecke_param_oracle_local(int order, int divisor_value) {
  if (order < 1 || divisor_value < 0 || divisor_value > order / 2) {
    throw Error(ErrorCode::IncompatibleDivisor,
                "v=" + std::to_string(divisor_value) + " at a zero of order " + std::to_string(order));
  }
  // The Hecke modification in normal form is [[1,0],[a,z^len]] with a a germ
  // in C[z]/z^len, len = floor(order/2) - v. Classify each coefficient slot by
  // whether setting it to zero (others generic) keeps the germ admissible.
  const int len = order / 2 - divisor_value;
  LocalHeckeShape shape;
  for (int slot = 0; slot < len; ++slot) {
    std::vector<int> pattern(static_cast<std::size_t>(len), 1);
    pattern[static_cast<std::size_t>(slot)] = 0;
    if (germ_descends(order, pattern)) {
      ++shape.c_dim;
    } else {
      shape.has_cstar = true;
    }
  }
  return shape;
}

std::vector<LocalHeckeShape> hecke_param_oracle(const Partition& p, const HiggsDivisor& v) {
  check_compatible(p, v);
  std::vector<LocalHeckeShape> out;
  out.reserve(v.values.size());
  for (std::size_t i = 0; i < v.values.size(); ++i) {
    out.push_back(hecke_param_oracle_local(p.orders()[i], v.values[i]));
  }
  return out;
}

int printed_k2_twice(const Partition& p, const HiggsDivisor& v) {
  const int n_ss = semisimple_count(p, v);
  // 2 * (2g-2 - deg(V)/2 - r_even + n_ss - r_odd/2)
  return 2 * (2 * p.genus() - 2) - v.degree() - 2 * p.r_even() + 2 * n_ss - p.r_odd();
}

RankResult hitchin_rank(int g, int deg_v, bool canonical_divisor_class) {
  if (g < 2) throw Error(ErrorCode::BadGenus, "genus must be >= 2");
  if (deg_v < 0 || deg_v > 2 * g - 2) {
    throw Error(ErrorCode::OutOfRange, "deg V = " + std::to_string(deg_v) + " outside [0, 2g-2]");
  }
  if (deg_v < 2 * g - 2) return {3 * g - 3 - deg_v};
  if (canonical_divisor_class) {
    throw Error(ErrorCode::StrictlySemistable, "deg V = 2g-2 with O(V) = K is strictly semistable");
  }
  return {g - 1};
}

LimitingModuliDimension limiting_moduli_dimension(int g, int k_zeros) {
  if (g < 2) throw Error(ErrorCode::BadGenus, "genus must be >= 2");
  if (k_zeros < 1) throw Error(ErrorCode::OutOfRange, "need at least one zero");
  return {k_zeros + 2 * g - 2, std::nullopt};
}

LimitingModuliDimension limiting_moduli_dimension(const Partition& p) {
  auto dim = limiting_moduli_dimension(p.genus(), p.zero_count());
  // The Prym variety is a complex torus; compare real dimensions.
  dim.excess_over_prym = dim.real_dimension - 2 * prym_dimension(p);
  return dim;
}

std::vector<Partition> all_partitions(int g) {
  if (g < 2) throw Error(ErrorCode::BadGenus, "genus must be >= 2");
  std::vector<std::vector<int>> raw;
  std::vector<int> cur;
  enumerate_partitions(4 * g - 4, 4 * g - 4, cur, raw);
  std::vector<Partition> out;
  out.reserve(raw.size());
  for (auto& orders : raw) out.push_back(validate_partition(g, std::move(orders)));
  return out;
}

std::vector<HiggsDivisor> all_divisors(const Partition& p) {
  const HiggsDivisor top = v_max(p);
  std::vector<HiggsDivisor> out;
  HiggsDivisor cur{std::vector<int>(top.values.size(), 0)};
  while (true) {
    out.push_back(cur);
    std::size_t i = 0;
    for (; i < cur.values.size(); ++i) {
      if (cur.values[i] < top.values[i]) {
        ++cur.values[i];
        break;
      }
      cur.values[i] = 0;
    }
    if (i == cur.values.size()) break;
  }
  return out;
}

}  // namespace hitchin::strata
