#pragma once

#include <cstdint>
#include <vector>

namespace okp {

using Handle = std::uint64_t;

/// Black-box view of a commutative, cancellative semigroup (S, +) with no
/// inverses. Implementations must provide canonical handles: eq(x, y) holds
/// exactly when x == y as identifiers, so handles may be used as map keys.
///
/// below(h) lists every y in S for which h = y + z has a solution z in S.
/// stream_next() eventually yields every element of S.
class SemigroupOracle {
 public:
  virtual ~SemigroupOracle() = default;

  virtual Handle add(Handle x, Handle y) = 0;
  virtual bool eq(Handle x, Handle y) = 0;
  virtual std::vector<Handle> below(Handle h) = 0;
  virtual Handle stream_next() = 0;
};

}  // namespace okp
