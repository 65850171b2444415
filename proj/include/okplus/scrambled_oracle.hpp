#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <unordered_map>

#include "okplus/oracle.hpp"
#include "okplus/semigroup.hpp"

namespace okp {

/// Concrete adapter presenting O_K^+(+) through the abstract oracle. Handles
/// are seed-scrambled opaque identifiers; the stream enumerates elements in
/// increasing trace, shuffled within each trace level by the seed.
class ScrambledOracle final : public SemigroupOracle {
 public:
  ScrambledOracle(const CFEngine& cf, std::uint64_t seed);

  Handle add(Handle x, Handle y) override;
  bool eq(Handle x, Handle y) override;
  std::vector<Handle> below(Handle h) override;
  Handle stream_next() override;

  struct Counters {
    std::uint64_t add = 0, eq = 0, below = 0, stream = 0;
  };
  const Counters& counters() const { return counters_; }

  /// Diagnostic surface for tests and reporting; reconstruction code must
  /// only ever touch the SemigroupOracle interface.
  const QuadInt& reveal(Handle h) const;
  Handle handle_of(const QuadInt& x);

 private:
  Handle intern(const QuadInt& x);
  void refill_stream();

  const CFEngine& cf_;
  std::mt19937_64 rng_;
  std::uint64_t scramble_;
  std::uint64_t next_serial_ = 0;
  std::map<std::pair<Int, Int>, Handle> ids_;
  std::unordered_map<Handle, QuadInt> values_;
  Int stream_trace_ = 0;
  std::vector<QuadInt> stream_buf_;
  std::size_t stream_pos_ = 0;
  Counters counters_;
};

}  // namespace okp
