#include "okplus/unique_decomp.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace okp {

bool is_uniquely_decomposable(const CFEngine& cf, const QuadInt& x) {
  CanonicalForm c = canonicalize(cf, x);
  long vj = v_coeff(cf, c.j0), vj1 = v_coeff(cf, c.j0 + 1);
  if (c.e > vj - 1 || c.f > vj1 - 1) return false;
  return !(c.e == vj - 1 && c.f == vj1 - 1);
}

UDClass classify_ud(const CFEngine& cf, const QuadInt& x) {
  UDClass out;
  if (!is_uniquely_decomposable(cf, x)) return out;
  QuadInt y = x;
  CanonicalForm c = canonicalize(cf, y);
  if (c.j0 < 0) {
    out.conjugated = true;
    y = conjugate(cf.ctx(), y);
    c = canonicalize(cf, y);
  }
  BetaCoords bc = beta_coords(cf, c.j0);
  long u2 = cf.u_at(bc.i + 2);
  out.i = bc.i;
  out.r = bc.r;
  out.e = c.e;
  out.f = c.f;
  if (c.f == 0) {
    if (c.e == 1) {
      out.tag = UDTag::Indecomposable;
    } else {
      if (bc.r != 0) throw std::logic_error("UD multiple off a convergent");
      out.tag = UDTag::ConvergentMultiple;
    }
  } else if (u2 == 1) {
    out.tag = UDTag::UnitBlock;
  } else if (bc.r == 0) {
    out.tag = UDTag::MultiplePlusOne;
  } else if (bc.r == u2 - 1) {
    out.tag = UDTag::SeamPlusNext;
  } else {
    throw std::logic_error("UD element in the interior of a block");
  }
  return out;
}

std::vector<std::vector<QuadInt>> enumerate_decompositions(const CFEngine& cf,
                                                           const QuadInt& x,
                                                           std::size_t limit) {
  const FieldContext& ctx = cf.ctx();
  if (!is_totally_positive(ctx, x))
    throw std::invalid_argument("decompositions require a totally positive element");

  auto le = [&](const QuadInt& a, const QuadInt& b) {
    return compare_embedding(ctx, a, b, Embedding::first) !=
               std::strong_ordering::greater &&
           compare_embedding(ctx, a, b, Embedding::second) !=
               std::strong_ordering::greater;
  };

  long j0 = locate_j0(cf, x);
  std::vector<QuadInt> cand;
  long jlo = j0;
  while (le(beta(cf, jlo - 1), x)) --jlo;
  long jhi = j0;
  while (le(beta(cf, jhi + 1), x)) ++jhi;
  for (long j = jlo; j <= jhi; ++j) {
    QuadInt b = beta(cf, j);
    if (le(b, x)) cand.push_back(b);
  }

  std::vector<std::vector<QuadInt>> found;
  std::vector<QuadInt> parts;
  auto dfs = [&](auto&& self, const QuadInt& rem, std::size_t max_idx) -> bool {
    for (std::size_t idx = max_idx + 1; idx-- > 0;) {
      const QuadInt& y = cand[idx];
      if (rem == y) {
        parts.push_back(y);
        found.push_back(parts);
        parts.pop_back();
        if (limit != 0 && found.size() >= limit) return true;
      } else if (succ(ctx, rem, y)) {
        parts.push_back(y);
        bool done = self(self, rem - y, idx);
        parts.pop_back();
        if (done) return true;
      }
    }
    return false;
  };
  if (!cand.empty()) dfs(dfs, x, cand.size() - 1);

  auto key = [](const QuadInt& q) { return std::pair<Int, Int>(q.a, q.b); };
  for (auto& d : found)
    std::sort(d.begin(), d.end(),
              [&](const QuadInt& p, const QuadInt& q) { return key(p) < key(q); });
  std::sort(found.begin(), found.end(),
            [&](const std::vector<QuadInt>& p, const std::vector<QuadInt>& q) {
              return std::lexicographical_compare(
                  p.begin(), p.end(), q.begin(), q.end(),
                  [&](const QuadInt& s, const QuadInt& t) { return key(s) < key(t); });
            });
  return found;
}

std::vector<QuadInt> ud_representatives(const CFEngine& cf) {
  std::vector<QuadInt> out;
  auto alpha = [&](long i) { return cf.convergent(i).alpha; };
  for (long i = 1; i < cf.expansion().s_plus; i += 2) {
    long u1 = cf.u_at(i + 1), u2 = cf.u_at(i + 2), u3 = cf.u_at(i + 3);
    QuadInt ai = alpha(i), ai1 = alpha(i + 1), ai2 = alpha(i + 2);
    for (long r = 0; r < u2; ++r) out.push_back(ai + Int(r) * ai1);  // (a)
    for (long e = 2; e <= u1 + 1; ++e) out.push_back(Int(e) * ai);   // (b)
    if (u2 >= 2) {
      QuadInt seam = ai + Int(u2 - 1) * ai1;
      for (long f = 1; f <= u3; ++f) out.push_back(seam + Int(f) * ai2);  // (c)
      for (long e = 1; e <= u1; ++e) out.push_back(Int(e) * ai + ai + ai1);  // (d)
    } else {
      for (long e = 1; e <= u1 + 1; ++e)  // (e)
        for (long f = 1; f <= u3 + 1; ++f) {
          if (e == u1 + 1 && f == u3 + 1) continue;
          out.push_back(Int(e) * ai + Int(f) * ai2);
        }
    }
  }
  std::set<std::pair<Int, Int>> seen;
  for (const QuadInt& q : out)
    if (!seen.emplace(q.a, q.b).second)
      throw std::logic_error("duplicate UD representative");
  return out;
}

Int count_ud_mod_units(const CFEngine& cf) {
  long s = cf.expansion().s;
  auto uu = [&](long k) {
    k %= s;
    if (k < 0) k += s;
    return cf.expansion().u[static_cast<std::size_t>(k)];
  };
  Int total = 0;
  if (s % 2 == 0) {
    for (long i = 1; i <= s; ++i) total += uu(i);
    for (long i = 2; i <= s; i += 2) total += 2 * uu(i);
    for (long i = 1; i <= s - 1; i += 2)
      if (uu(i) == 1) total += Int(uu(i - 1)) * uu(i + 1);
  } else {
    for (long i = 1; i <= s; ++i) total += 4 * uu(i);
    for (long i = 1; i <= s; ++i)
      if (uu(i) == 1) total += Int(uu(i - 1)) * uu(i + 1);
  }
  return total;
}

}  // namespace okp
