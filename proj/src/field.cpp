#include "okplus/field.hpp"

#include <sstream>
#include <stdexcept>

namespace okp {

FieldContext make_context(long D) {
  if (D < 2) throw std::invalid_argument("D must be >= 2, got " + std::to_string(D));
  for (long p = 2; p * p <= D; ++p) {
    if (D % (p * p) == 0)
      throw std::invalid_argument("D must be squarefree, " + std::to_string(D) +
                                  " has square factor " + std::to_string(p * p));
  }
  FieldContext ctx;
  ctx.D = D;
  ctx.d_mod4 = static_cast<int>(D % 4);
  if (ctx.d_mod4 == 1) {
    ctx.delta = D;
    ctx.trace_omega = 1;
    ctx.norm_omega = (1 - D) / 4;
  } else {
    ctx.delta = 4 * D;
    ctx.trace_omega = 0;
    ctx.norm_omega = -D;
  }
  return ctx;
}

QuadInt mul(const FieldContext& ctx, const QuadInt& x, const QuadInt& y) {
  // omega^2 = trace_omega * omega - norm_omega
  Int bb = x.b * y.b;
  return {x.a * y.a - ctx.norm_omega * bb,
          x.a * y.b + x.b * y.a + ctx.trace_omega * bb};
}

QuadInt conjugate(const FieldContext& ctx, const QuadInt& x) {
  return {x.a + ctx.trace_omega * x.b, -x.b};
}

Int norm(const FieldContext& ctx, const QuadInt& x) {
  return x.a * x.a + ctx.trace_omega * x.a * x.b + ctx.norm_omega * x.b * x.b;
}

Int trace(const FieldContext& ctx, const QuadInt& x) {
  return 2 * x.a + ctx.trace_omega * x.b;
}

void half_coords(const FieldContext& ctx, const QuadInt& x, Int& X, Int& Y) {
  X = 2 * x.a + ctx.trace_omega * x.b;
  Y = (ctx.trace_omega == 0) ? Int(2 * x.b) : x.b;
}

int sign_int_surd(const Int& X, const Int& Y, long D) {
  int sx = sgn(X), sy = sgn(Y);
  if (sx >= 0 && sy >= 0) return (sx == 0 && sy == 0) ? 0 : 1;
  if (sx <= 0 && sy <= 0) return -1;
  // mixed signs; X^2 == D*Y^2 impossible for Y != 0 since D is not a square
  int c = cmp(X * X, D * Y * Y);
  return sx > 0 ? c : -c;
}

int sign_at(const FieldContext& ctx, const QuadInt& x, Embedding emb) {
  Int X, Y;
  half_coords(ctx, x, X, Y);
  if (emb == Embedding::second) Y = -Y;
  return sign_int_surd(X, Y, ctx.D);
}

bool is_totally_positive(const FieldContext& ctx, const QuadInt& x) {
  return sign_at(ctx, x, Embedding::first) > 0 &&
         sign_at(ctx, x, Embedding::second) > 0;
}

std::strong_ordering compare_embedding(const FieldContext& ctx, const QuadInt& x,
                                       const QuadInt& y, Embedding emb) {
  int s = sign_at(ctx, x - y, emb);
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool succ(const FieldContext& ctx, const QuadInt& x, const QuadInt& y) {
  return is_totally_positive(ctx, x - y);
}

std::string to_string(const QuadInt& x) {
  std::ostringstream os;
  os << x.a.get_str();
  if (x.b != 0) {
    os << (x.b < 0 ? "-" : "+") << Int(abs(x.b)).get_str() << "w";
  }
  return os.str();
}

std::string to_surd_string(const FieldContext& ctx, const QuadInt& x) {
  Int X, Y;
  half_coords(ctx, x, X, Y);
  std::ostringstream os;
  os << "(" << X.get_str() << (Y < 0 ? "-" : "+") << Int(abs(Y)).get_str() << "*sqrt("
     << ctx.D << "))/2";
  return os.str();
}

}  // namespace okp
