#pragma once

#include "okplus/cf.hpp"
#include "okplus/surd_value.hpp"

namespace okp {

struct RecurrenceCheck {
  bool ok = true;
  long first_failure = -2;  // meaningful only when !ok
};

/// Verifies, in exact Q(sqrt(delta)) arithmetic, the tail recurrences
///   N_{i+1} = sqrt(delta)/gamma_{i+2} - N_i/gamma_{i+2}^2
///   T_{i+1} = (-1)^{i+1} (omega_D - N_i/gamma_{i+2})
/// for all -1 <= i <= i_max.
RecurrenceCheck norm_recurrence_check(const CFEngine& cf, long i_max);

/// N(m*alpha_i + n*alpha_{i+1}) via the factored tail formula
///   (m - n/gamma_{i+2}) (n*sqrt(delta) + m*N_i - n*N_i/gamma_{i+2}),
/// checked against the direct norm before returning it.
Int norm_combination(const CFEngine& cf, long i, const Int& m, const Int& n);

enum class LowerCase {
  MultipleOfConvergent,  // f = 0, r = 0: no lower bound claimed
  CaseA,                 // f > 0, r = 0:            N > e*f*sqrt(delta)
  CaseB,                 // f > 0, 1 <= r <= c*u-1:  N > (1-c)(e+f)^2 sqrt(delta)
  CaseC,                 // f > 0, (u+1)/2 < r <= u-1: N > e(e+f) sqrt(delta)/2
  CaseD,                 // f = 0, r > 0:            N > e^2 (1 - 1/u) sqrt(delta)
};

struct BoundReport {
  QuadInt element;
  long i = 0, r = 0;
  Int e, f;
  Int norm_value;
  bool upper1_holds = false;  // N < sqrt(delta)((r+1)e + (r+2)f)(e+f)
  bool upper2_holds = false;  // N < (e+f)^2 delta / (4 N_{i+1})
  LowerCase lower_case = LowerCase::MultipleOfConvergent;
  bool a_applies = false, a_holds = true;
  bool b_applies = false, b_holds = true;
  bool c_applies = false, c_holds = true;
  bool d_applies = false, d_holds = true;
  bool lower_holds = true;  // every applicable lower bound holds
};

/// Evaluates the norm estimates for x = e*alpha_{i,r} + f*alpha_{i,r+1}
/// (e >= 1, f >= 0, 0 <= r <= u_{i+2}-1, odd i). The case (b) threshold uses
/// the exact rational c.
BoundReport bounds_check(const CFEngine& cf, long i, long r, const Int& e,
                         const Int& f, const mpq_class& c = mpq_class(1, 2));

/// floor of sqrt(delta)(2 sqrt(delta)+1)(3 sqrt(delta)+2).
Int ud_norm_bound_floor(const CFEngine& cf);

/// Every UD orbit representative has norm below the global cap.
bool audit_ud_norms(const CFEngine& cf);

}  // namespace okp
