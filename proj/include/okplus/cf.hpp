#pragma once

#include <mutex>
#include <utility>
#include <vector>

#include "okplus/field.hpp"

namespace okp {

/// Purely periodic expansion sigma_D = [u_0, ..., u_{s-1}] with the usual
/// structure facts (palindromic interior, parity of u_0, s_plus = s or 2s).
struct CFExpansion {
  std::vector<long> u;
  long s = 0;
  long s_plus = 0;
  long p0 = 0;  // ceil(u_0 / 2) = (u_0 + Tr(omega)) / 2
};

/// Tail gamma_i = (P + sqrt(delta)) / Q of the expansion.
struct SurdTail {
  long P = 0;
  long Q = 0;
};

/// Convergent alpha_i = p_i - q_i * omega' with its signed norm
/// N_i = (-1)^{i+1} N(alpha_i) > 0 and the T_i of alpha_{i-1} alpha_i' =
/// T_i + (-1)^{i-1} omega.
struct Convergent {
  long i = -1;
  Int p, q;
  QuadInt alpha;
  Int N;
  Int T;
};

/// Per-field continued fraction engine with a growable, thread-safe
/// convergent cache.
class CFEngine {
 public:
  explicit CFEngine(FieldContext ctx);

  const FieldContext& ctx() const { return ctx_; }
  const CFExpansion& expansion() const { return exp_; }

  /// Periodic partial quotient u_k for any k >= 0 (u_s = u_0, ...).
  long u_at(long k) const;

  /// Convergent for i >= -1.
  Convergent convergent(long i) const;

  /// Fundamental unit epsilon = alpha_{s-1}.
  QuadInt fundamental_unit() const;

  /// Totally positive fundamental unit epsilon^+ (epsilon or epsilon^2).
  QuadInt totally_positive_unit() const;

  /// Tail state of gamma_i for i >= 1 (gamma_{i+s} = gamma_i, gamma_s = sigma).
  SurdTail gamma_surd(long i) const;

 private:
  void extend_to(long i) const;

  FieldContext ctx_;
  CFExpansion exp_;
  std::vector<SurdTail> states_;  // states_[k] = gamma-state after k steps, k in [0,s)
  mutable std::mutex mu_;
  mutable std::vector<Convergent> cache_;  // cache_[k] holds i = k-1
};

/// Integer floor square root.
long isqrt_long(long n);

}  // namespace okp
