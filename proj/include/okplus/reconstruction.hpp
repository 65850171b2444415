#pragma once

// Blind reconstruction of D from the abstract semigroup interface. This
// module must stay independent of the concrete field implementation: it may
// include only the oracle interface, GMP and the standard library.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "okplus/oracle.hpp"

namespace okp {

/// Formal difference pos - neg of semigroup elements; (p,q) ~ (r,s) iff
/// p + s = q + r (cancellativity makes this an equivalence).
struct DifferenceHandle {
  Handle pos = 0, neg = 0;
};

struct ChainVertex {
  bool is_a = false;
  Handle a = 0;            // A-vertex element
  DifferenceHandle b;      // B-vertex difference pair (one of +/- gamma)
  long label = 0;
};

struct LabeledChain {
  std::vector<ChainVertex> vertices;
  std::size_t center_index = 0;
};

struct ReconstructOptions {
  std::size_t initial_radius = 8;    // A-vertices per side
  std::size_t max_radius = 1024;
  std::size_t companion_window = 1 << 16;
};

/// Failure that a wider chain window may fix.
struct RetriableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Reconstructor {
 public:
  explicit Reconstructor(SemigroupOracle& o) : o_(o) {}

  bool is_indecomposable_abs(Handle h);

  /// Exactly one multiset of indecomposables sums to h.
  bool is_ud_abs(Handle h);

  /// First `window` streamed elements alpha with alpha indecomposable and
  /// alpha + alpha uniquely decomposable.
  std::vector<Handle> find_A(std::size_t window);

  /// Largest k with k*h uniquely decomposable (h must be in A).
  long k_alpha(Handle h);

  /// The two indecomposable beta != h with (k_alpha - 1)*h + beta uniquely
  /// decomposable: the chain neighbors of h. Searches the stream prefix;
  /// throws RetriableError if the window is too small.
  std::pair<Handle, Handle> companions(Handle h, std::size_t window);

  bool same_difference(const DifferenceHandle& x, const DifferenceHandle& y);

  /// Alternating A/B chain around the center, `radius` A-vertices per side.
  /// A-labels are k_alpha - 1 (computed as v - 2 from the relation walk),
  /// B-labels the |l_gamma| of the difference-group iteration.
  LabeledChain build_chain(std::size_t radius);

  /// Shortest period of the label window, anchored at the center; requires
  /// at least 3 observed repetitions.
  static std::vector<long> recover_period(const LabeledChain& chain);

  /// Decodes D from a period list by solving the fixed-point quadratic of
  /// the product matrix, then validates by re-expanding sigma_D with a
  /// standalone integer continued fraction loop.
  static long period_to_D(const std::vector<long>& u);

  /// Full pipeline with escalation on retriable failures.
  long reconstruct(const ReconstructOptions& opts = {});

 private:
  const std::vector<Handle>& below(Handle h);
  const std::vector<Handle>& indecomposable_parts(Handle h);
  long rank(Handle h);
  bool subtract(Handle h, Handle y, Handle& out);  // out = h - y if it exists
  int count_decompositions_capped(Handle h, long min_rank);
  Handle streamed(std::size_t idx);
  void ensure_center();
  void extend_walk(std::vector<Handle>& betas, std::vector<long>& vs,
                   std::size_t target_a);

  SemigroupOracle& o_;
  std::vector<Handle> streamed_;
  std::unordered_map<Handle, long> rank_;
  long next_rank_ = 0;
  std::unordered_map<Handle, std::vector<Handle>> below_;
  std::unordered_map<Handle, std::vector<Handle>> parts_;
  std::map<std::pair<Handle, long>, int> count_memo_;
  std::map<std::pair<Handle, Handle>, std::pair<bool, Handle>> sub_memo_;

  bool walked_ = false;
  Handle center_ = 0;
  long v0_ = 0;
  // right_[t] = beta_t, left_[t] = beta_{-t}, with matching relation
  // coefficients vs_[t] (v_0 stored in both at t = 0).
  std::vector<Handle> right_, left_;
  std::vector<long> right_v_, left_v_;
};

}  // namespace okp
