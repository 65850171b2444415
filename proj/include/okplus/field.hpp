#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>

namespace okp {

using Int = mpz_class;

/// Immutable description of the ring of integers of Q(sqrt(D)).
///
/// omega is sqrt(D) when D = 2,3 (mod 4) and (1+sqrt(D))/2 when D = 1 (mod 4);
/// {1, omega} is an integral basis, delta the field discriminant.
struct FieldContext {
  long D = 0;
  long delta = 0;
  int d_mod4 = 0;
  int trace_omega = 0;   // omega + omega'
  long norm_omega = 0;   // omega * omega'
};

/// Validates D (squarefree, >= 2) and builds the context.
/// Throws std::invalid_argument naming the offending square factor or value.
FieldContext make_context(long D);

/// Element a + b*omega of O_K with exact integer coordinates.
struct QuadInt {
  Int a, b;

  QuadInt() : a(0), b(0) {}
  QuadInt(Int a_, Int b_) : a(std::move(a_)), b(std::move(b_)) {}
  QuadInt(long a_, long b_) : a(a_), b(b_) {}

  bool operator==(const QuadInt&) const = default;
  bool is_zero() const { return a == 0 && b == 0; }
};

inline QuadInt operator+(const QuadInt& x, const QuadInt& y) {
  return {x.a + y.a, x.b + y.b};
}
inline QuadInt operator-(const QuadInt& x, const QuadInt& y) {
  return {x.a - y.a, x.b - y.b};
}
inline QuadInt operator-(const QuadInt& x) { return {-x.a, -x.b}; }
inline QuadInt operator*(const Int& k, const QuadInt& x) {
  return {k * x.a, k * x.b};
}

QuadInt mul(const FieldContext& ctx, const QuadInt& x, const QuadInt& y);
QuadInt conjugate(const FieldContext& ctx, const QuadInt& x);
Int norm(const FieldContext& ctx, const QuadInt& x);
Int trace(const FieldContext& ctx, const QuadInt& x);

enum class Embedding { first, second };

/// Writes x as (X + Y*sqrt(D))/2 with integer X, Y.
void half_coords(const FieldContext& ctx, const QuadInt& x, Int& X, Int& Y);

/// Exact sign of X + Y*sqrt(D) (integer X, Y; D squarefree, not a square).
int sign_int_surd(const Int& X, const Int& Y, long D);

/// Exact sign of the image of x under the chosen real embedding.
int sign_at(const FieldContext& ctx, const QuadInt& x, Embedding emb);

bool is_totally_positive(const FieldContext& ctx, const QuadInt& x);

std::strong_ordering compare_embedding(const FieldContext& ctx, const QuadInt& x,
                                       const QuadInt& y, Embedding emb);

/// x - y totally positive (strict domination in both embeddings).
bool succ(const FieldContext& ctx, const QuadInt& x, const QuadInt& y);

/// "a+b*w" rendering, and the (X+Y*sqrt(D))/2 rendering, for diagnostics.
std::string to_string(const QuadInt& x);
std::string to_surd_string(const FieldContext& ctx, const QuadInt& x);

}  // namespace okp
