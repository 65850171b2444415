#include "okplus/norms.hpp"

#include <stdexcept>

#include "okplus/unique_decomp.hpp"

namespace okp {

namespace {

SurdValue gamma_value(const CFEngine& cf, long i) {
  SurdTail t = cf.gamma_surd(i);
  mpq_class rat(t.P, t.Q), coef(1, t.Q);
  rat.canonicalize();
  coef.canonicalize();
  return {cf.ctx().delta, rat, coef};
}

SurdValue omega_value(const CFEngine& cf) {
  long delta = cf.ctx().delta;
  if (cf.ctx().d_mod4 == 1) return {delta, mpq_class(1, 2), mpq_class(1, 2)};
  return {delta, mpq_class(0), mpq_class(1, 2)};  // sqrt(D) = sqrt(4D)/2
}

SurdValue scalar(const CFEngine& cf, const Int& n) {
  return {cf.ctx().delta, mpq_class(n), mpq_class(0)};
}

SurdValue sqrt_delta(const CFEngine& cf) {
  return {cf.ctx().delta, mpq_class(0), mpq_class(1)};
}

// N > 0, t >= 0: is N < t * sqrt(delta)? (equality impossible, delta is not
// a perfect square times a rational square)
bool lt_surd(const Int& N, const Int& t, long delta) {
  if (N < 0) return true;
  return N * N < t * t * delta;
}

bool gt_surd(const Int& N, const Int& t, long delta) {
  if (N < 0) return false;
  return N * N > t * t * delta;
}

}  // namespace

RecurrenceCheck norm_recurrence_check(const CFEngine& cf, long i_max) {
  SurdValue sd = sqrt_delta(cf), om = omega_value(cf);
  for (long i = -1; i <= i_max; ++i) {
    SurdValue g = gamma_value(cf, i + 2);
    Int Ni = cf.convergent(i).N;
    Int Ni1 = cf.convergent(i + 1).N;
    Int Ti1 = cf.convergent(i + 1).T;
    // N_{i+1} g^2 = sqrt(delta) g - N_i
    if (!(scalar(cf, Ni1) * g * g == sd * g - scalar(cf, Ni)))
      return {false, i};
    // T_{i+1} g = (-1)^{i+1} (omega g - N_i)
    SurdValue rhs = om * g - scalar(cf, Ni);
    if ((i + 1) % 2 != 0) rhs = mpq_class(-1) * rhs;
    if (!(scalar(cf, Ti1) * g == rhs)) return {false, i};
  }
  return {};
}

Int norm_combination(const CFEngine& cf, long i, const Int& m, const Int& n) {
  if (i < -1) throw std::invalid_argument("index must be >= -1");
  SurdValue g = gamma_value(cf, i + 2), sd = sqrt_delta(cf);
  Int Ni = cf.convergent(i).N;
  QuadInt x = m * cf.convergent(i).alpha + n * cf.convergent(i + 1).alpha;
  Int N = norm(cf.ctx(), x);
  // multiply the factored form through by gamma^2
  SurdValue lhs = (scalar(cf, m) * g - scalar(cf, n)) *
                  (scalar(cf, n) * sd * g + scalar(cf, m * Ni) * g -
                   scalar(cf, n * Ni));
  if (!(lhs == scalar(cf, N) * g * g))
    throw std::logic_error("factored norm formula disagrees with direct norm");
  return N;
}

BoundReport bounds_check(const CFEngine& cf, long i, long r, const Int& e,
                         const Int& f, const mpq_class& c) {
  if (i < -1 || i % 2 == 0) throw std::invalid_argument("i must be odd, >= -1");
  long u = cf.u_at(i + 2);
  if (r < 0 || r > u - 1) throw std::invalid_argument("r out of range");
  if (e < 1 || f < 0) throw std::invalid_argument("e >= 1, f >= 0 required");
  if (c <= 0 || c >= 1) throw std::invalid_argument("c must be in (0,1)");

  const long delta = cf.ctx().delta;
  BoundReport rep;
  rep.i = i;
  rep.r = r;
  rep.e = e;
  rep.f = f;
  QuadInt base = cf.convergent(i).alpha + Int(r) * cf.convergent(i + 1).alpha;
  QuadInt next = cf.convergent(i).alpha + Int(r + 1) * cf.convergent(i + 1).alpha;
  rep.element = e * base + f * next;
  rep.norm_value = norm(cf.ctx(), rep.element);
  const Int& N = rep.norm_value;

  rep.upper1_holds = lt_surd(N, ((r + 1) * e + (r + 2) * f) * (e + f), delta);
  // Non-strict: 4 N N_{i+1} = (e+f)^2 delta is attained (first at D = 13,
  // i odd, r = 1, e = f = 1, where the dropped square term vanishes).
  rep.upper2_holds = 4 * N * cf.convergent(i + 1).N <= (e + f) * (e + f) * delta;

  Int p(c.get_num()), q(c.get_den());
  rep.a_applies = f > 0 && r == 0;
  if (rep.a_applies) rep.a_holds = gt_surd(N, e * f, delta);
  rep.b_applies = f > 0 && r >= 1 && q * (r + 1) <= p * u;
  if (rep.b_applies)
    rep.b_holds = gt_surd(q * N, (q - p) * (e + f) * (e + f), delta);
  rep.c_applies = f > 0 && 2 * r > u + 1 && r <= u - 1;
  if (rep.c_applies) rep.c_holds = gt_surd(2 * N, e * (e + f), delta);
  rep.d_applies = f == 0 && r > 0;
  if (rep.d_applies) rep.d_holds = gt_surd(u * N, e * e * (u - 1), delta);

  if (f == 0)
    rep.lower_case = r == 0 ? LowerCase::MultipleOfConvergent : LowerCase::CaseD;
  else if (r == 0)
    rep.lower_case = LowerCase::CaseA;
  else if (rep.b_applies)
    rep.lower_case = LowerCase::CaseB;
  else if (rep.c_applies)
    rep.lower_case = LowerCase::CaseC;
  else
    rep.lower_case = LowerCase::MultipleOfConvergent;
  rep.lower_holds = rep.a_holds && rep.b_holds && rep.c_holds && rep.d_holds;
  return rep;
}

Int ud_norm_bound_floor(const CFEngine& cf) {
  Int delta(cf.ctx().delta);
  Int t = 6 * delta + 2;
  Int root;
  Int sq = t * t * delta;
  mpz_sqrt(root.get_mpz_t(), sq.get_mpz_t());
  return 7 * delta + root;
}

bool audit_ud_norms(const CFEngine& cf) {
  Int delta(cf.ctx().delta);
  Int t = 6 * delta + 2;
  for (const QuadInt& x : ud_representatives(cf)) {
    Int N = norm(cf.ctx(), x);
    Int rest = N - 7 * delta;
    if (rest >= 0 && rest * rest >= t * t * delta) return false;
  }
  return true;
}

}  // namespace okp
