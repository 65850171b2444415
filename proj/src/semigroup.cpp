#include "okplus/semigroup.hpp"

#include <stdexcept>

namespace okp {

namespace {

// Block m (m >= 0) covers chain positions [C_m, C_{m+1}) with
// C_{m+1} - C_m = u_{2m+1}, holding alpha_{2m-1, r}.
BetaCoords positive_coords(const CFEngine& cf, long j) {
  long c = 0;
  for (long m = 0;; ++m) {
    long size = cf.u_at(2 * m + 1);
    if (j < c + size) return {2 * m - 1, j - c, false};
    c += size;
  }
}

}  // namespace

BetaCoords beta_coords(const CFEngine& cf, long j) {
  if (j >= 0) return positive_coords(cf, j);
  BetaCoords bc = positive_coords(cf, -j);
  bc.conjugated = true;
  return bc;
}

QuadInt beta(const CFEngine& cf, long j) {
  BetaCoords bc = beta_coords(cf, j);
  QuadInt val =
      cf.convergent(bc.i).alpha + Int(bc.r) * cf.convergent(bc.i + 1).alpha;
  return bc.conjugated ? conjugate(cf.ctx(), val) : val;
}

long v_coeff(const CFEngine& cf, long j) {
  if (j == 0) return cf.u_at(0) + 2;
  BetaCoords bc = positive_coords(cf, j >= 0 ? j : -j);
  return bc.r >= 1 ? 2 : cf.u_at(bc.i + 1) + 2;
}

std::vector<Relation> relations(const CFEngine& cf, long j_min, long j_max) {
  std::vector<Relation> out;
  for (long j = j_min; j <= j_max; ++j) out.push_back({j, v_coeff(cf, j)});
  return out;
}

namespace {

// sign of x/x' - beta_j/beta_j'. Both totally positive, so this is the sign
// of x*beta_j' - x'*beta_j = b-coordinate of x*conj(beta_j) times sqrt(delta).
int ratio_cmp(const CFEngine& cf, const QuadInt& x, long j) {
  QuadInt z = mul(cf.ctx(), x, conjugate(cf.ctx(), beta(cf, j)));
  return sgn(z.b);
}

}  // namespace

long locate_j0(const CFEngine& cf, const QuadInt& x) {
  if (!is_totally_positive(cf.ctx(), x))
    throw std::invalid_argument("locate_j0 requires a totally positive element");
  auto pred = [&](long j) { return ratio_cmp(cf, x, j) >= 0; };  // beta_j ratio <= x ratio
  long lo, hi;  // pred(lo) true, pred(hi) false
  if (pred(0)) {
    lo = 0;
    hi = 1;
    while (pred(hi)) {
      lo = hi;
      hi *= 2;
    }
  } else {
    hi = 0;
    lo = -1;
    while (!pred(lo)) {
      hi = lo;
      lo *= 2;
    }
  }
  while (hi - lo > 1) {
    long mid = lo + (hi - lo) / 2;
    (pred(mid) ? lo : hi) = mid;
  }
  return lo;
}

CanonicalForm canonicalize(const CFEngine& cf, const QuadInt& x) {
  CanonicalForm c;
  c.j0 = locate_j0(cf, x);
  QuadInt b1 = beta(cf, c.j0), b2 = beta(cf, c.j0 + 1);
  Int det = b1.a * b2.b - b2.a * b1.b;
  if (det == 0) throw std::logic_error("degenerate beta basis");
  Int en = x.a * b2.b - x.b * b2.a;
  Int fn = b1.a * x.b - b1.b * x.a;
  if (en % det != 0 || fn % det != 0)
    throw std::logic_error("canonical coordinates not integral");
  c.e = en / det;
  c.f = fn / det;
  if (c.e < 1 || c.f < 0 || !(c.e * b1 + c.f * b2 == x))
    throw std::logic_error("canonical form out of range");
  return c;
}

bool is_indecomposable(const CFEngine& cf, const QuadInt& x) {
  if (!is_totally_positive(cf.ctx(), x)) return false;
  CanonicalForm c = canonicalize(cf, x);
  return c.e == 1 && c.f == 0;
}

Reduction reduce_combination(const CFEngine& cf, std::map<long, Int> coeffs) {
  QuadInt x(0, 0);
  for (const auto& [j, k] : coeffs) x = x + k * beta(cf, j);
  if (!is_totally_positive(cf.ctx(), x))
    throw std::invalid_argument("combination must be totally positive");
  long j0 = locate_j0(cf, x);
  coeffs.try_emplace(j0, 0);
  coeffs.try_emplace(j0 + 1, 0);

  Reduction red;
  while (coeffs.rbegin()->first - coeffs.begin()->first >= 2) {
    long j_min = coeffs.begin()->first;
    long j_max = coeffs.rbegin()->first;
    if (j_min <= j0 - 1) {
      Int k = coeffs.begin()->second;
      coeffs.erase(coeffs.begin());
      if (k != 0) {
        // add (-k) x relation_{j_min+1}: clears position j_min
        red.certificate.push_back({j_min + 1, -k});
        coeffs[j_min + 1] += k * v_coeff(cf, j_min + 1);
        coeffs[j_min + 2] -= k;
      }
    } else {
      Int k = coeffs.rbegin()->second;
      coeffs.erase(std::prev(coeffs.end()));
      if (k != 0) {
        red.certificate.push_back({j_max - 1, -k});
        coeffs[j_max - 1] += k * v_coeff(cf, j_max - 1);
        coeffs[j_max - 2] -= k;
      }
    }
  }
  red.canonical.j0 = j0;
  red.canonical.e = coeffs.count(j0) ? coeffs[j0] : Int(0);
  red.canonical.f = coeffs.count(j0 + 1) ? coeffs[j0 + 1] : Int(0);

  CanonicalForm direct = canonicalize(cf, x);
  if (direct.j0 != j0 || direct.e != red.canonical.e || direct.f != red.canonical.f)
    throw std::logic_error("reduction disagrees with direct canonical form");
  return red;
}

std::vector<QuadInt> totally_positive_below(const CFEngine& cf, const QuadInt& x) {
  const FieldContext& ctx = cf.ctx();
  if (!is_totally_positive(ctx, x))
    throw std::invalid_argument("below requires a totally positive element");
  long j0 = locate_j0(cf, x);

  // Window j can contribute only if beta_j < x in the first embedding and
  // beta_j' < x' in the second; the two conditions are monotone in j.
  long jhi = j0 - 1;
  for (long j = j0;; ++j) {
    if (compare_embedding(ctx, beta(cf, j), x, Embedding::first) ==
        std::strong_ordering::less)
      jhi = j;
    else
      break;
  }
  long jlo = j0 + 1;
  for (long j = j0;; --j) {
    if (compare_embedding(ctx, beta(cf, j), x, Embedding::second) ==
        std::strong_ordering::less)
      jlo = j;
    else
      break;
  }

  std::vector<QuadInt> out;
  for (long j = jlo; j <= jhi; ++j) {
    QuadInt bj = beta(cf, j), bj1 = beta(cf, j + 1);
    for (QuadInt ye = bj;; ye = ye + bj) {
      if (compare_embedding(ctx, ye, x, Embedding::first) !=
              std::strong_ordering::less ||
          compare_embedding(ctx, ye, x, Embedding::second) !=
              std::strong_ordering::less)
        break;
      for (QuadInt y = ye;; y = y + bj1) {
        if (compare_embedding(ctx, y, x, Embedding::first) !=
                std::strong_ordering::less ||
            compare_embedding(ctx, y, x, Embedding::second) !=
                std::strong_ordering::less)
          break;
        out.push_back(y);
      }
    }
  }
  return out;
}

}  // namespace okp
