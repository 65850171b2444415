#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "okplus/cf.hpp"

using namespace okp;

namespace {
CFEngine engine(long D) { return CFEngine(make_context(D)); }
}

TEST_CASE("periods") {
  CHECK(engine(2).expansion().u == std::vector<long>{2});
  CHECK(engine(2).expansion().s == 1);
  CHECK(engine(3).expansion().u == std::vector<long>{2, 1});
  CHECK(engine(3).expansion().s == 2);
  CHECK(engine(13).expansion().u == std::vector<long>{3});
  CHECK(engine(5).expansion().u == std::vector<long>{1});
  CHECK(engine(41).expansion().u == std::vector<long>{5, 1, 2, 2, 1});
  CHECK(engine(41).expansion().s_plus == 10);
  CHECK(engine(3).expansion().s_plus == 2);
}

TEST_CASE("period structure") {
  for (long D = 2; D <= 300; ++D) {
    bool sf = true;
    for (long p = 2; p * p <= D; ++p)
      if (D % (p * p) == 0) sf = false;
    if (!sf) continue;
    CFEngine cf(make_context(D));
    const auto& e = cf.expansion();
    // u_0 is the maximum and u_1..u_{s-1} is a palindrome
    for (long k = 1; k < e.s; ++k) {
      CHECK(e.u[k] <= e.u[0]);
      CHECK(e.u[k] == e.u[e.s - k]);
    }
    CHECK(cf.u_at(e.s) == e.u[0]);
    CHECK(e.p0 == (e.u[0] + cf.ctx().trace_omega) / 2);
  }
}

TEST_CASE("convergents") {
  CFEngine c3 = engine(3);
  auto a0 = c3.convergent(0);
  CHECK(a0.p == 1);
  CHECK(a0.q == 1);
  CHECK(a0.alpha == QuadInt(1, 1));
  auto a1 = c3.convergent(1);
  CHECK(a1.alpha == QuadInt(2, 1));
  CHECK(a1.N == 1);
  for (long D : {2L, 3L, 5L, 13L}) {
    auto am = engine(D).convergent(-1);
    CHECK(am.alpha == QuadInt(1, 0));
    CHECK(am.N == 1);
  }
}

TEST_CASE("determinant identity") {
  for (long D : {2L, 3L, 5L, 13L, 41L, 94L}) {
    CFEngine cf(make_context(D));
    for (long i = -1; i < 200; ++i) {
      auto a = cf.convergent(i), b = cf.convergent(i + 1);
      Int det = b.p * a.q - a.p * b.q;
      CHECK(det == ((i % 2 == 0) ? 1 : -1));
    }
  }
}

TEST_CASE("signed norms positive") {
  for (long D : {2L, 3L, 5L, 13L, 41L, 94L}) {
    CFEngine cf(make_context(D));
    for (long i = -1; i < 120; ++i) CHECK(cf.convergent(i).N > 0);
  }
}

TEST_CASE("units") {
  CFEngine c2 = engine(2);
  CHECK(c2.fundamental_unit() == QuadInt(1, 1));
  CHECK(norm(c2.ctx(), c2.fundamental_unit()) == -1);
  CHECK(c2.totally_positive_unit() == QuadInt(3, 2));
  CFEngine c3 = engine(3);
  CHECK(c3.fundamental_unit() == QuadInt(2, 1));
  CHECK(c3.totally_positive_unit() == QuadInt(2, 1));
  CFEngine c5 = engine(5);
  CHECK(c5.fundamental_unit() == QuadInt(0, 1));
  CHECK(c5.totally_positive_unit() == QuadInt(1, 1));
}

TEST_CASE("unit shifts the convergent chain") {
  for (long D : {2L, 3L, 5L, 13L, 41L}) {
    CFEngine cf(make_context(D));
    const QuadInt eps = cf.totally_positive_unit();
    const long sp = cf.expansion().s_plus;
    CHECK(norm(cf.ctx(), eps) == 1);
    CHECK(is_totally_positive(cf.ctx(), eps));
    for (long i = -1; i < 12; ++i)
      CHECK(cf.convergent(i + sp).alpha == mul(cf.ctx(), eps, cf.convergent(i).alpha));
  }
}

TEST_CASE("tail surds") {
  CFEngine c2 = engine(2);
  for (long i = 1; i <= 5; ++i) {
    CHECK(c2.gamma_surd(i).P == 2);
    CHECK(c2.gamma_surd(i).Q == 2);
  }
  CFEngine c3 = engine(3);
  CHECK(c3.gamma_surd(1).P == 2);
  CHECK(c3.gamma_surd(1).Q == 4);
  CHECK(c3.gamma_surd(2).P == 2);
  CHECK(c3.gamma_surd(2).Q == 2);
  CHECK(c3.gamma_surd(3).P == c3.gamma_surd(1).P);

  // u_i < gamma_i < u_i + 1, i.e. u_i*Q < P + sqrt(delta) < (u_i+1)*Q
  for (long D : {2L, 3L, 13L, 41L}) {
    CFEngine cf(make_context(D));
    for (long i = 1; i <= 10; ++i) {
      SurdTail t = cf.gamma_surd(i);
      long u = cf.u_at(i);
      Int lo = Int(u) * t.Q - t.P, hi = Int(u + 1) * t.Q - t.P;
      CHECK(lo * lo < cf.ctx().delta);
      CHECK((hi < 0 || hi * hi > cf.ctx().delta));
    }
  }
}
