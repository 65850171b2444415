#include "okplus/scrambled_oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace okp {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

ScrambledOracle::ScrambledOracle(const CFEngine& cf, std::uint64_t seed)
    : cf_(cf), rng_(seed), scramble_(mix64(seed ^ 0x6f4b2d91c3a5e817ULL)) {}

Handle ScrambledOracle::intern(const QuadInt& x) {
  auto [it, inserted] = ids_.try_emplace({x.a, x.b}, 0);
  if (inserted) {
    Handle h = mix64(scramble_ + next_serial_++);
    it->second = h;
    values_.emplace(h, x);
  }
  return it->second;
}

const QuadInt& ScrambledOracle::reveal(Handle h) const {
  auto it = values_.find(h);
  if (it == values_.end()) throw std::invalid_argument("unknown handle");
  return it->second;
}

Handle ScrambledOracle::handle_of(const QuadInt& x) {
  if (!is_totally_positive(cf_.ctx(), x))
    throw std::invalid_argument("handles exist only for totally positive elements");
  return intern(x);
}

Handle ScrambledOracle::add(Handle x, Handle y) {
  ++counters_.add;
  return intern(reveal(x) + reveal(y));
}

bool ScrambledOracle::eq(Handle x, Handle y) {
  ++counters_.eq;
  reveal(x);
  reveal(y);
  return x == y;
}

std::vector<Handle> ScrambledOracle::below(Handle h) {
  ++counters_.below;
  std::vector<Handle> out;
  for (const QuadInt& y : totally_positive_below(cf_, reveal(h)))
    out.push_back(intern(y));
  return out;
}

void ScrambledOracle::refill_stream() {
  const FieldContext& ctx = cf_.ctx();
  while (stream_buf_.empty()) {
    stream_trace_ += 1;
    const Int& T = stream_trace_;
    if (ctx.trace_omega == 0) {
      if (T % 2 != 0) continue;
      Int a = T / 2;
      for (Int b = -a; b <= a; ++b) {
        QuadInt x(a, b);
        if (is_totally_positive(ctx, x)) stream_buf_.push_back(x);
      }
    } else {
      for (Int b = -T; b <= T; ++b) {
        if ((T - b) % 2 != 0) continue;
        QuadInt x((T - b) / 2, b);
        if (is_totally_positive(ctx, x)) stream_buf_.push_back(x);
      }
    }
    std::shuffle(stream_buf_.begin(), stream_buf_.end(), rng_);
    stream_pos_ = 0;
  }
}

Handle ScrambledOracle::stream_next() {
  ++counters_.stream;
  if (stream_pos_ >= stream_buf_.size()) {
    stream_buf_.clear();
    refill_stream();
  }
  return intern(stream_buf_[stream_pos_++]);
}

}  // namespace okp
