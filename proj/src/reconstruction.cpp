#include "okplus/reconstruction.hpp"

#include <algorithm>
#include <cstdint>

namespace okp {
namespace {

long isqrt_positive(long n) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), mpz_class(n).get_mpz_t());
  return r.get_si();
}

bool is_squarefree(long n) {
  if (n < 1) return false;
  for (long p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
    while (n % p == 0) n /= p;
  }
  return true;
}

// Period of the purely periodic continued fraction of sigma_D, computed
// with plain integer surd arithmetic (independent of the field layer).
std::vector<long> sigma_period(long D) {
  const long delta = (D % 4 == 1) ? D : 4 * D;
  const long r = isqrt_positive(delta);
  long P, Q = 2;
  if (D % 4 == 1) {
    const long f = isqrt_positive(D);
    P = 2 * ((f - 1) / 2) + 1;
  } else {
    P = 2 * isqrt_positive(D);
  }
  const long P0 = P, Q0 = Q;
  std::vector<long> u;
  for (std::size_t guard = 0; guard < (1u << 20); ++guard) {
    const long a = (P + r) / Q;
    u.push_back(a);
    const long Pn = a * Q - P;
    const long num = delta - Pn * Pn;
    if (num <= 0 || num % Q != 0) throw std::invalid_argument("surd iteration broke");
    P = Pn;
    Q = num / Q;
    if (P == P0 && Q == Q0) return u;
  }
  throw std::invalid_argument("period too long");
}

}  // namespace

long Reconstructor::rank(Handle h) {
  auto it = rank_.find(h);
  if (it != rank_.end()) return it->second;
  const long r = next_rank_++;
  rank_.emplace(h, r);
  return r;
}

const std::vector<Handle>& Reconstructor::below(Handle h) {
  auto it = below_.find(h);
  if (it != below_.end()) return it->second;
  return below_.emplace(h, o_.below(h)).first->second;
}

bool Reconstructor::is_indecomposable_abs(Handle h) { return below(h).empty(); }

const std::vector<Handle>& Reconstructor::indecomposable_parts(Handle h) {
  auto it = parts_.find(h);
  if (it != parts_.end()) return it->second;
  std::vector<Handle> parts;
  for (Handle y : below(h))
    if (is_indecomposable_abs(y)) parts.push_back(y);
  std::sort(parts.begin(), parts.end(),
            [this](Handle a, Handle b) { return rank(a) < rank(b); });
  return parts_.emplace(h, std::move(parts)).first->second;
}

bool Reconstructor::subtract(Handle h, Handle y, Handle& out) {
  const auto key = std::make_pair(h, y);
  auto it = sub_memo_.find(key);
  if (it == sub_memo_.end()) {
    std::pair<bool, Handle> res{false, 0};
    for (Handle z : below(h)) {
      if (o_.eq(o_.add(y, z), h)) {
        res = {true, z};
        break;
      }
    }
    it = sub_memo_.emplace(key, res).first;
  }
  out = it->second.second;
  return it->second.first;
}

// Number of multisets of indecomposables summing to h, capped at 2. Parts
// are enumerated in non-decreasing rank order so every multiset is counted
// exactly once.
int Reconstructor::count_decompositions_capped(Handle h, long min_rank) {
  const auto key = std::make_pair(h, min_rank);
  auto it = count_memo_.find(key);
  if (it != count_memo_.end()) return it->second;
  int total = 0;
  const auto& parts = indecomposable_parts(h);
  for (Handle y : parts) {
    if (rank(y) < min_rank) continue;
    Handle z;
    if (!subtract(h, y, z)) continue;
    total += count_decompositions_capped(z, rank(y));
    if (total >= 2) break;
  }
  if (total < 2 && is_indecomposable_abs(h) && rank(h) >= min_rank) ++total;
  if (total > 2) total = 2;
  count_memo_.emplace(key, total);
  return total;
}

bool Reconstructor::is_ud_abs(Handle h) {
  return count_decompositions_capped(h, -1) == 1;
}

Handle Reconstructor::streamed(std::size_t idx) {
  while (streamed_.size() <= idx) {
    const Handle h = o_.stream_next();
    rank(h);
    streamed_.push_back(h);
  }
  return streamed_[idx];
}

std::vector<Handle> Reconstructor::find_A(std::size_t window) {
  std::vector<Handle> out;
  for (std::size_t idx = 0; out.size() < window; ++idx) {
    const Handle h = streamed(idx);
    if (!is_indecomposable_abs(h)) continue;
    if (is_ud_abs(o_.add(h, h))) out.push_back(h);
  }
  return out;
}

long Reconstructor::k_alpha(Handle h) {
  if (!is_indecomposable_abs(h)) throw std::invalid_argument("k_alpha: not indecomposable");
  long k = 1;
  Handle cur = o_.add(h, h);
  while (is_ud_abs(cur)) {
    if (++k > (1L << 20)) throw std::runtime_error("k_alpha diverged");
    cur = o_.add(cur, h);
  }
  return k;
}

std::pair<Handle, Handle> Reconstructor::companions(Handle h, std::size_t window) {
  const long k = k_alpha(h);
  if (k < 2) throw std::invalid_argument("companions: k_alpha < 2");
  Handle base = h;
  for (long t = 1; t < k - 1; ++t) base = o_.add(base, h);
  std::vector<Handle> found;
  std::size_t cutoff = window;
  for (std::size_t idx = 0; idx < cutoff; ++idx) {
    const Handle b = streamed(idx);
    if (b == h || !is_indecomposable_abs(b)) continue;
    if (!is_ud_abs(o_.add(base, b))) continue;
    found.push_back(b);
    if (found.size() == 2 && cutoff == window)
      cutoff = std::min<std::size_t>(window, idx + 65);
    if (found.size() > 2) throw std::runtime_error("companions: more than two matches");
  }
  if (found.size() < 2)
    throw RetriableError("companions: window exhausted before two matches");
  return {found[0], found[1]};
}

bool Reconstructor::same_difference(const DifferenceHandle& x, const DifferenceHandle& y) {
  return o_.eq(o_.add(x.pos, y.neg), o_.add(x.neg, y.pos));
}

void Reconstructor::ensure_center() {
  if (walked_) return;
  // Center rule: the first stream element that is indecomposable and whose
  // double is uniquely decomposable.
  center_ = find_A(1).front();
  // Minimal m >= 2 with m*center a sum of two indecomposables other than the
  // center itself; the pair seeds the two walk directions.
  Handle x = o_.add(center_, center_);
  for (long m = 2; m <= (1L << 20); ++m) {
    for (Handle y : indecomposable_parts(x)) {
      if (y == center_) continue;
      Handle z;
      if (!subtract(x, y, z)) continue;
      if (z == center_ || !is_indecomposable_abs(z)) continue;
      v0_ = m;
      right_ = {center_, y};
      left_ = {center_, z};
      right_v_ = {m};
      left_v_ = {m};
      walked_ = true;
      return;
    }
    x = o_.add(x, center_);
  }
  throw std::runtime_error("center relation not found");
}

// Extends one walk direction until it holds target_a positions t >= 1 with
// relation coefficient >= 3. Each step finds the minimal m >= 2 such that
// m*beta_t - beta_{t-1} lies in the semigroup; that difference is beta_{t+1}
// and m is v_t. Coefficients never exceed v_0.
void Reconstructor::extend_walk(std::vector<Handle>& betas, std::vector<long>& vs,
                                std::size_t target_a) {
  auto a_count = [&] {
    std::size_t n = 0;
    for (std::size_t t = 1; t < vs.size(); ++t)
      if (vs[t] >= 3) ++n;
    return n;
  };
  const std::size_t step_cap = (target_a + 2) * static_cast<std::size_t>(v0_ + 2) + 64;
  for (std::size_t step = 0; a_count() < target_a; ++step) {
    if (step > step_cap) throw std::runtime_error("chain walk stalled");
    const Handle prev = betas[betas.size() - 2];
    const Handle cur = betas.back();
    bool done = false;
    Handle x = o_.add(cur, cur);
    for (long m = 2; m <= v0_; ++m) {
      Handle d;
      if (subtract(x, prev, d)) {
        betas.push_back(d);
        vs.push_back(m);
        done = true;
        break;
      }
      x = o_.add(x, cur);
    }
    if (!done) throw std::runtime_error("chain walk: no relation found");
  }
}

LabeledChain Reconstructor::build_chain(std::size_t radius) {
  if (radius == 0) throw std::invalid_argument("radius must be positive");
  ensure_center();
  extend_walk(right_, right_v_, radius);
  extend_walk(left_, left_v_, radius);

  // One side of the chain: alternating [B, A, B, A, ...] outward from the
  // center, truncated to `radius` A-vertices.
  auto side = [&](const std::vector<Handle>& betas, const std::vector<long>& vs) {
    std::vector<ChainVertex> out;
    std::size_t prev_a = 0;
    for (std::size_t t = 1; t < vs.size() && out.size() < 2 * radius; ++t) {
      if (vs[t] < 3) continue;
      const long gap = static_cast<long>(t - prev_a);
      ChainVertex bv;
      bv.is_a = false;
      bv.b = {betas[prev_a + 1], betas[prev_a]};
      // Verify the label through the difference group: minimal l with
      // a1 + l*gamma = a2, where gamma is the repeated step difference.
      long l = 0;
      Handle s1 = betas[t], s2 = betas[prev_a];
      for (long step = 1; step <= gap + 2; ++step) {
        s1 = o_.add(s1, bv.b.neg);
        s2 = o_.add(s2, bv.b.pos);
        if (o_.eq(s1, s2)) {
          l = step;
          break;
        }
      }
      if (l != gap) throw std::runtime_error("B-label mismatch");
      bv.label = l;
      out.push_back(bv);
      ChainVertex av;
      av.is_a = true;
      av.a = betas[t];
      av.label = vs[t] - 2;
      out.push_back(av);
      prev_a = t;
    }
    return out;
  };

  const auto rs = side(right_, right_v_);
  const auto ls = side(left_, left_v_);

  LabeledChain chain;
  chain.vertices.assign(ls.rbegin(), ls.rend());
  chain.center_index = chain.vertices.size();
  ChainVertex cv;
  cv.is_a = true;
  cv.a = center_;
  cv.label = v0_ - 2;
  chain.vertices.push_back(cv);
  chain.vertices.insert(chain.vertices.end(), rs.begin(), rs.end());
  return chain;
}

std::vector<long> Reconstructor::recover_period(const LabeledChain& chain) {
  std::vector<long> labels;
  labels.reserve(chain.vertices.size());
  for (const auto& v : chain.vertices) labels.push_back(v.label);
  const std::size_t n = labels.size();
  for (std::size_t p = 1; 3 * p <= n; ++p) {
    bool ok = true;
    for (std::size_t i = 0; i + p < n && ok; ++i)
      if (labels[i] != labels[i + p]) ok = false;
    if (!ok) continue;
    std::vector<long> period(p);
    for (std::size_t i = 0; i < p; ++i) {
      std::size_t idx = chain.center_index + i;
      while (idx >= n) idx -= p;
      period[i] = labels[idx];
    }
    return period;
  }
  throw RetriableError("no period with three repetitions in window");
}

long Reconstructor::period_to_D(const std::vector<long>& u) {
  if (u.empty()) throw std::invalid_argument("empty period");
  for (long t : u)
    if (t < 1) throw std::invalid_argument("nonpositive partial quotient");
  // Fixed point of x -> (a x + b) / (c x + d) for the product of the
  // quotient matrices: c x^2 + (d - a) x - b = 0.
  mpz_class a = 1, b = 0, c = 0, d = 1;
  for (long t : u) {
    const mpz_class na = a * t + b, nc = c * t + d;
    b = a;
    d = c;
    a = na;
    c = nc;
  }
  if (c == 0) throw std::invalid_argument("degenerate matrix");
  const mpz_class disc = (d - a) * (d - a) + 4 * b * c;
  if (disc <= 0) throw std::invalid_argument("non-real fixed point");
  const mpz_class c2 = c * c;
  if (disc % c2 != 0) throw std::invalid_argument("discriminant not a multiple of c^2");
  const mpz_class delta = disc / c2;
  mpz_class Dz;
  if (delta % 4 == 0) {
    Dz = delta / 4;
    if (Dz % 4 == 1) throw std::invalid_argument("inconsistent discriminant class");
  } else if (delta % 4 == 1) {
    Dz = delta;
  } else {
    throw std::invalid_argument("discriminant not 0 or 1 mod 4");
  }
  if (!Dz.fits_slong_p()) throw std::invalid_argument("D out of range");
  const long D = Dz.get_si();
  if (D < 2 || !is_squarefree(D)) throw std::invalid_argument("D not squarefree");
  if (sigma_period(D) != u) throw std::invalid_argument("period mismatch on re-expansion");
  return D;
}

long Reconstructor::reconstruct(const ReconstructOptions& opts) {
  for (std::size_t radius = opts.initial_radius;; radius *= 2) {
    try {
      const LabeledChain chain = build_chain(radius);
      const std::vector<long> period = recover_period(chain);
      std::vector<long> rot = period;
      for (std::size_t shift = 0; shift < period.size(); ++shift) {
        try {
          return period_to_D(rot);
        } catch (const std::invalid_argument&) {
          std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        }
      }
      throw RetriableError("no rotation of the period decodes to a valid D");
    } catch (const RetriableError&) {
      if (radius * 2 > opts.max_radius) throw;
    }
  }
}

}  // namespace okp
