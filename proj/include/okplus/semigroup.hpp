#pragma once

#include <map>
#include <vector>

#include "okplus/cf.hpp"

namespace okp {

/// beta_j = alpha_{i,r} = alpha_i + r*alpha_{i+1} (conjugated for j < 0).
struct BetaCoords {
  long i = 0;
  long r = 0;
  bool conjugated = false;
};

/// x = e*beta_{j0} + f*beta_{j0+1}, e >= 1, f >= 0, with
/// beta_{j0}/beta_{j0}' <= x/x' < beta_{j0+1}/beta_{j0+1}'.
struct CanonicalForm {
  long j0 = 0;
  Int e, f;
};

/// beta_{j-1} - v*beta_j + beta_{j+1} = 0.
struct Relation {
  long j = 0;
  long v = 0;
};

/// "add multiplier x relation_j" to the coefficient map.
struct RelationStep {
  long j = 0;
  Int multiplier;
};

struct Reduction {
  CanonicalForm canonical;
  std::vector<RelationStep> certificate;
};

/// j-th indecomposable of the bi-infinite increasing chain, beta_0 = 1.
QuadInt beta(const CFEngine& cf, long j);

BetaCoords beta_coords(const CFEngine& cf, long j);

/// Relation coefficient: v_0 = u_0 + 2, v_j = 2 for r >= 1, u_{i+1} + 2 for
/// r = 0 (same at conjugated indices).
long v_coeff(const CFEngine& cf, long j);

std::vector<Relation> relations(const CFEngine& cf, long j_min, long j_max);

/// Largest j with beta_j/beta_j' <= x/x'; x must be totally positive.
long locate_j0(const CFEngine& cf, const QuadInt& x);

CanonicalForm canonicalize(const CFEngine& cf, const QuadInt& x);

bool is_indecomposable(const CFEngine& cf, const QuadInt& x);

/// Reduces a finite integer combination of betas (totally positive value) to
/// canonical form, emitting a replayable certificate of relation applications.
Reduction reduce_combination(const CFEngine& cf, std::map<long, Int> coeffs);

/// All totally positive y with x - y totally positive, enumerated window by
/// window in the canonical (j, e, f) parametrization.
std::vector<QuadInt> totally_positive_below(const CFEngine& cf, const QuadInt& x);

}  // namespace okp
