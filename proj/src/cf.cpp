#include "okplus/cf.hpp"

#include <stdexcept>

namespace okp {

long isqrt_long(long n) {
  if (n < 0) throw std::invalid_argument("isqrt of negative");
  mpz_class m(n), r;
  mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
  return r.get_si();
}

CFEngine::CFEngine(FieldContext ctx) : ctx_(std::move(ctx)) {
  const long delta = ctx_.delta;
  const long rt = isqrt_long(delta);

  // sigma_D = omega_D + floor(-omega_D') as (P + sqrt(delta)) / Q.
  long P, Q = 2;
  if (ctx_.d_mod4 == 1) {
    long f = isqrt_long(ctx_.D);
    P = 2 * ((f - 1) / 2) + 1;
  } else {
    P = 2 * isqrt_long(ctx_.D);
  }

  const long P0 = P, Q0 = Q;
  states_.push_back({P, Q});
  for (;;) {
    long u = (P + rt) / Q;
    exp_.u.push_back(u);
    long Pn = u * Q - P;
    long Qn = (delta - Pn * Pn) / Q;
    P = Pn;
    Q = Qn;
    if (P == P0 && Q == Q0) break;
    states_.push_back({P, Q});
    if (exp_.u.size() > 1u << 20)
      throw std::logic_error("period detection failed");
  }
  exp_.s = static_cast<long>(exp_.u.size());
  exp_.s_plus = (exp_.s % 2 == 0) ? exp_.s : 2 * exp_.s;
  exp_.p0 = (exp_.u[0] + ctx_.trace_omega) / 2;

  // i = -1 convergent; T_{-1} uses the backward extension p_{-2} = p_0 - u_0.
  Convergent c;
  c.i = -1;
  c.p = 1;
  c.q = 0;
  c.alpha = QuadInt(1, 0);
  c.N = 1;
  c.T = Int(exp_.p0 - exp_.u[0]) - ctx_.trace_omega;
  cache_.push_back(c);

  Convergent c0;
  c0.i = 0;
  c0.p = exp_.p0;
  c0.q = 1;
  // alpha_i = p - q*omega' = (p - q*Tr(omega)) + q*omega
  c0.alpha = QuadInt(Int(exp_.p0 - ctx_.trace_omega), Int(1));
  c0.N = -norm(ctx_, c0.alpha);
  if (c0.N <= 0) throw std::logic_error("N_0 must be positive");
  QuadInt z = conjugate(ctx_, c0.alpha);  // alpha_{-1} * alpha_0'
  if (z.b != -1) throw std::logic_error("T_0 identity violated");
  c0.T = z.a;
  cache_.push_back(c0);
}

long CFEngine::u_at(long k) const {
  if (k < 0) throw std::invalid_argument("u index must be >= 0");
  return exp_.u[static_cast<std::size_t>(k % exp_.s)];
}

void CFEngine::extend_to(long i) const {
  while (static_cast<long>(cache_.size()) <= i + 1) {
    long n = static_cast<long>(cache_.size()) - 1;  // next index
    const Convergent& c1 = cache_.back();
    const Convergent& c2 = cache_[cache_.size() - 2];
    Convergent c;
    c.i = n;
    long u = u_at(n);
    c.p = u * c1.p + c2.p;
    c.q = u * c1.q + c2.q;
    c.alpha = Int(u) * c1.alpha + c2.alpha;
    Int nm = norm(ctx_, c.alpha);
    c.N = (n % 2 == 0) ? -nm : nm;
    if (c.N <= 0) throw std::logic_error("N_i must be positive");
    // alpha_{n-1} alpha_n' = T_n + (-1)^{n-1} omega
    QuadInt z = mul(ctx_, c1.alpha, conjugate(ctx_, c.alpha));
    if (z.b != ((n % 2 != 0) ? 1 : -1))
      throw std::logic_error("T_i identity violated");
    c.T = z.a;
    cache_.push_back(c);
  }
}

Convergent CFEngine::convergent(long i) const {
  if (i < -1) throw std::invalid_argument("convergent index must be >= -1");
  std::lock_guard<std::mutex> lock(mu_);
  extend_to(i);
  return cache_[static_cast<std::size_t>(i + 1)];
}

QuadInt CFEngine::fundamental_unit() const {
  QuadInt eps = convergent(exp_.s - 1).alpha;
  Int nm = norm(ctx_, eps);
  if (nm != 1 && nm != -1) throw std::logic_error("fundamental unit norm");
  return eps;
}

QuadInt CFEngine::totally_positive_unit() const {
  QuadInt e = (exp_.s % 2 == 0) ? fundamental_unit()
                                : convergent(2 * exp_.s - 1).alpha;
  if (norm(ctx_, e) != 1 || !is_totally_positive(ctx_, e))
    throw std::logic_error("epsilon+ must be a totally positive unit");
  return e;
}

SurdTail CFEngine::gamma_surd(long i) const {
  if (i < 1) throw std::invalid_argument("gamma index must be >= 1");
  long k = i % exp_.s;
  return states_[static_cast<std::size_t>(k)];
}

}  // namespace okp
