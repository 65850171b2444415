#pragma once

#include <cstddef>
#include <vector>

#include "okplus/semigroup.hpp"

namespace okp {

/// Structural reason an element is uniquely decomposable.
enum class UDTag {
  Indecomposable,      // (a) alpha_{i,r}
  ConvergentMultiple,  // (b) e*alpha_i, 2 <= e <= u_{i+1}+1
  SeamPlusNext,        // (c) alpha_{i,u_{i+2}-1} + f*alpha_{i+2,0}
  MultiplePlusOne,     // (d) e*alpha_{i,0} + alpha_{i,1}
  UnitBlock,           // (e) e*alpha_{i,0} + f*alpha_{i+2,0}, u_{i+2} = 1
  NotUD,
};

struct UDClass {
  UDTag tag = UDTag::NotUD;
  bool conjugated = false;  // witness taken from the conjugate of x
  long i = 0;
  long r = 0;
  Int e, f;
};

bool is_uniquely_decomposable(const CFEngine& cf, const QuadInt& x);

UDClass classify_ud(const CFEngine& cf, const QuadInt& x);

/// Decompositions of x into indecomposable parts (each a sorted multiset),
/// stopping once `limit` have been found. limit = 0 means all.
std::vector<std::vector<QuadInt>> enumerate_decompositions(const CFEngine& cf,
                                                           const QuadInt& x,
                                                           std::size_t limit);

/// One representative per epsilon^+ orbit of uniquely decomposable elements.
std::vector<QuadInt> ud_representatives(const CFEngine& cf);

/// Closed-form orbit count (the parity of s selects the branch).
Int count_ud_mod_units(const CFEngine& cf);

}  // namespace okp
